#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cphase/lossless_v.hpp"
#include "cphase/lossy_v.hpp"
#include "oracles.hpp"

using namespace cphase;
using ode::CMatrix;
using L = AtomLevel;

namespace {

SystemParams point(double gamma, double delta, double gT) {
  SystemParams p;
  p.gamma = gamma;
  p.delta = delta;
  p.t_final = gT;
  return p;
}

const Basis& v_basis() {
  static const Basis b = enumerate_basis(Scheme::v_three_level, 2);
  return b;
}

Eigen::Index ix(const std::vector<int>& ph, L level) { return static_cast<Eigen::Index>(v_basis().index(ph, level)); }

// Full two-photon density matrix implied by a cascade state.
CMatrix two_photon_matrix(const lossy::CascadeState& s) {
  CMatrix rho = CMatrix::Zero(12, 12);
  ode::CVector psi = ode::CVector::Zero(12);
  psi(ix({1, 1}, L::g)) = s.c_g2;
  psi(ix({0, 1}, L::e_a)) = s.c_ea2;
  psi(ix({1, 0}, L::e_b)) = s.c_eb2;
  rho += psi * psi.adjoint();
  auto block = [&](const lossy::FedBlock& b, const std::vector<int>& photon, L excited) {
    const auto pg = ix(photon, L::g), ee = ix({0, 0}, excited);
    rho(pg, pg) += b.photon_ground;
    rho(ee, ee) += b.excited;
    rho(ee, pg) += b.coherence;
    rho(pg, ee) += b.coherence_conj;
  };
  block(s.b_side, {0, 1}, L::e_b);
  block(s.a_side, {1, 0}, L::e_a);
  rho(ix({0, 0}, L::g), ix({0, 0}, L::g)) += s.rho2_ground;
  return rho;
}

CMatrix one_photon_matrix(const lossy::CascadeState& s) {
  CMatrix rho = CMatrix::Zero(12, 12);
  ode::CVector psi = ode::CVector::Zero(12);
  psi(ix({0, 1}, L::g)) = s.c_g1;
  psi(ix({0, 0}, L::e_b)) = s.c_e1;
  rho += psi * psi.adjoint();
  rho(ix({0, 0}, L::g), ix({0, 0}, L::g)) += s.rho1_ground;
  return rho;
}

CMatrix lindblad_from(const SystemParams& p, Eigen::Index start) {
  CMatrix rho0 = CMatrix::Zero(12, 12);
  rho0(start, start) = 1.0;
  return ode::integrate_lindblad(oracle::v_system_product_spec(p), rho0, p.t_final).final_state;
}

}  // namespace

TEST(LossyV, MasterEquationMatchesProductSpace) {
  const auto p = point(0.07, -0.4, 0.0);
  const auto lib = lossy::v_system_lindblad(p);
  const auto ref = oracle::v_system_product_spec(p);
  EXPECT_LT((lib.hamiltonian - ref.hamiltonian).cwiseAbs().maxCoeff(), 1e-15);
  ASSERT_EQ(lib.jumps.size(), ref.jumps.size());
  for (std::size_t k = 0; k < lib.jumps.size(); ++k) {
    EXPECT_EQ(lib.jumps[k].rate, ref.jumps[k].rate);
    EXPECT_LT((lib.jumps[k].op - ref.jumps[k].op).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(LossyV, CascadeMatchesLindbladElementwise) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ug(0.0, 0.15), ud(-2.0, 2.0), ut(0.5, 20.0);
  for (int i = 0; i < 10; ++i) {
    const auto p = point(ug(rng), ud(rng), ut(rng));
    const auto s = lossy::evolve_cascade(p, p.t_final).back();
    const CMatrix two = lindblad_from(p, ix({1, 1}, L::g));
    const CMatrix one = lindblad_from(p, ix({0, 1}, L::g));
    EXPECT_LT((two - two_photon_matrix(s)).cwiseAbs().maxCoeff(), 1e-6) << "gamma " << p.gamma;
    EXPECT_LT((one - one_photon_matrix(s)).cwiseAbs().maxCoeff(), 1e-6) << "gamma " << p.gamma;
  }
}

TEST(LossyV, FidelityMatchesExactStateAverage) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ug(0.005, 0.15), ud(-2.0, 2.0), ut(0.5, 20.0);
  for (int i = 0; i < 4; ++i) {
    const auto p = point(ug(rng), ud(rng), ut(rng));
    const double f = lossy::gate_fidelity_lossy(p).f_uncond;
    const double ref =
        oracle::exact_average_fidelity(oracle::v_system_product_spec(p), 3, 0, {p.t_final}).front();
    EXPECT_NEAR(f, ref, 1e-6);
  }
}

TEST(LossyV, ReducesToLosslessAtZeroGamma) {
  for (double d : {0.0, 0.7, -1.3}) {
    for (double t : {0.0, 2.0, 8.886, 17.0}) {
      const auto p = point(0.0, d, t);
      const auto lossy = lossy::gate_fidelity_lossy(p);
      const auto exact = lossless::gate_fidelity_lossless(p);
      EXPECT_NEAR(lossy.f_uncond, exact.f_uncond, 1e-9);
      EXPECT_NEAR(lossy.f_cond, exact.f_uncond, 1e-9);
      EXPECT_NEAR(lossy.loss_prob, 0.0, 1e-12);
    }
  }
}

TEST(LossyV, ProbabilityConserved) {
  lossy::CascadeOptions o;
  o.stride = 100;
  for (const auto& s : lossy::evolve_cascade(point(0.12, 0.5, 0.0), 15.0, o)) {
    EXPECT_NEAR(s.single_photon_total(), 1.0, 1e-9);
    EXPECT_NEAR(s.two_photon_total(), 1.0, 1e-9);
    EXPECT_LT(std::abs(s.b_side.coherence - std::conj(s.b_side.coherence_conj)), 1e-12);
  }
}

TEST(LossyV, MonotoneInGamma) {
  for (auto [d, t] : {std::pair{0.0, 6.473}, {0.7, 8.76}, {1.388, 18.01}, {0.3, 3.0}}) {
    double prev = 2.0;
    for (int k = 0; k <= 30; ++k) {
      const double f = lossy::gate_fidelity_lossy(point(0.005 * k, d, t), 2e-3).f_uncond;
      EXPECT_LE(f, prev + 1e-12) << "delta " << d << " gT " << t << " gamma " << 0.005 * k;
      prev = f;
    }
  }
}

TEST(LossyV, CurveMatchesPointwise) {
  const auto p = point(0.03, 0.4, 0.0);
  const std::vector<double> ts{0.0, 1.5, 4.0, 9.25};
  const auto curve = lossy::gate_fidelity_lossy_curve(p, ts);
  ASSERT_EQ(curve.size(), ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    EXPECT_NEAR(curve[k].f_uncond, lossy::gate_fidelity_lossy(p.with_time(ts[k])).f_uncond, 1e-12);
  }
  EXPECT_NEAR(curve.front().f_uncond, 0.4, 1e-15);
}

TEST(LossyV, ConditionalNotBelowUnconditionalOnCurve) {
  std::vector<double> grid;
  for (int k = 0; k <= 31; ++k) grid.push_back(0.005 * k);
  const auto pts = lossy::figure3_curve(grid);
  ASSERT_EQ(pts.size(), grid.size());
  EXPECT_NEAR(pts.front().f_uncond, 0.9968, 1e-3);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_GE(pts[i].f_cond, pts[i].f_uncond - 1e-12);
    if (i > 0) {
      EXPECT_LT(pts[i].f_uncond, pts[i - 1].f_uncond);
    }
  }
}

TEST(LossyV, ConditionalDropsAtRegimeSwitches) {
  const auto regimes = lossy::default_regimes();
  for (std::size_t r = 0; r + 1 < regimes.size(); ++r) {
    const double b = regimes[r].gamma_hi;
    const auto pts = lossy::figure3_curve({b, b + 1e-4});
    EXPECT_EQ(pts[0].gT, regimes[r].gT);
    EXPECT_EQ(pts[1].gT, regimes[r + 1].gT);
    EXPECT_GT(pts[0].f_cond, pts[1].f_cond) << "boundary " << b;
  }
}

TEST(LossyV, CurveRejectsUncoveredGamma) {
  EXPECT_THROW((void)lossy::figure3_curve({0.2}), InvalidArgument);
}

TEST(LossyV, RejectsDrivenOrMultiAtom) {
  auto p = point(0.01, 0.0, 1.0);
  p.omega_rabi = 0.5;
  EXPECT_THROW((void)lossy::gate_fidelity_lossy(p), InvalidArgument);
  p.omega_rabi = 0.0;
  p.n_atoms = 2;
  EXPECT_THROW((void)lossy::gate_fidelity_lossy(p), InvalidArgument);
}
