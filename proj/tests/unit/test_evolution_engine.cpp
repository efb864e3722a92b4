#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cphase/evolution_engine.hpp"
#include "cphase/five_level.hpp"
#include "cphase/lossy_v.hpp"
#include "cphase/multi_atom.hpp"

using namespace cphase;
using ode::CMatrix;
using ode::CVector;

namespace {

// y' = −i σx y from (1, 0): (cos t, −i sin t).
double rabi_error(double dt, double t) {
  ode::LinearSystem sys;
  sys.generator = CMatrix::Zero(2, 2);
  sys.generator(0, 1) = sys.generator(1, 0) = Complex{0.0, -1.0};
  CVector y0(2);
  y0 << 1.0, 0.0;
  ode::IntegrationOptions o;
  o.dt = dt;
  const auto y = ode::integrate_linear(sys, y0, t, o).final_state;
  return std::max(std::abs(y(0) - std::cos(t)), std::abs(y(1) - Complex{0.0, -std::sin(t)}));
}

CMatrix pure(const CVector& v) { return v * v.adjoint(); }

struct NamedSpec {
  const char* name;
  ode::LindbladSpec spec;
  Eigen::Index start;
};

std::vector<NamedSpec> gate_systems(double gamma, double delta, double omega) {
  SystemParams p;
  p.gamma = gamma;
  p.delta = delta;
  p.omega_rabi = omega;
  SystemParams p2 = p;
  p2.n_atoms = 2;
  p2.omega_rabi = 0.0;
  SystemParams pv = p;
  pv.omega_rabi = 0.0;
  return {{"v", lossy::v_system_lindblad(pv), 9},
          {"two_atom", multi::two_atom_lindblad(p2), 12},
          {"five_level", five::five_level_lindblad(p), 15}};
}

}  // namespace

TEST(Rk4, MatchesRabiSolution) { EXPECT_LT(rabi_error(1e-3, 10.0), 1e-11); }

TEST(Rk4, FourthOrderConvergence) {
  const double coarse = rabi_error(0.1, 5.0);
  const double fine = rabi_error(0.05, 5.0);
  const double ratio = coarse / fine;
  EXPECT_GT(ratio, 14.0);
  EXPECT_LT(ratio, 18.0);
}

TEST(Rk4, SourceTermDrivesRelaxation) {
  ode::LinearSystem sys;
  sys.generator = -CMatrix::Identity(1, 1);
  sys.source = [](double) { return CVector::Ones(1); };
  ode::IntegrationOptions o;
  o.checkpoints = {0.5, 1.0, 2.0};
  const auto traj = ode::integrate_linear(sys, CVector::Zero(1), 2.0, o);
  ASSERT_EQ(traj.times.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_DOUBLE_EQ(traj.times[k], o.checkpoints[k]);
    EXPECT_NEAR(traj.states[k](0).real(), 1.0 - std::exp(-traj.times[k]), 1e-12);
  }
}

TEST(Rk4, StrideRecordsRegularSteps) {
  ode::LinearSystem sys;
  sys.generator = CMatrix::Zero(1, 1);
  ode::IntegrationOptions o;
  o.dt = 0.1;
  o.stride = 5;
  const auto traj = ode::integrate_linear(sys, CVector::Ones(1), 1.0, o);
  ASSERT_EQ(traj.times.size(), 3u);
  EXPECT_NEAR(traj.times[1], 0.5, 1e-12);
  EXPECT_NEAR(traj.times[2], 1.0, 1e-12);
}

TEST(Rk4, RejectsBadOptions) {
  ode::LinearSystem sys;
  sys.generator = CMatrix::Zero(1, 1);
  ode::IntegrationOptions o;
  o.dt = -1.0;
  EXPECT_THROW((void)ode::integrate_linear(sys, CVector::Ones(1), 1.0, o), InvalidArgument);
  o.dt = 0.1;
  o.checkpoints = {0.5, 0.2};
  EXPECT_THROW((void)ode::integrate_linear(sys, CVector::Ones(1), 1.0, o), InvalidArgument);
  o.checkpoints = {2.0};
  EXPECT_THROW((void)ode::integrate_linear(sys, CVector::Ones(1), 1.0, o), InvalidArgument);
}

TEST(Rk4, NonFiniteStateRaisesNumericalError) {
  ode::LinearSystem sys;
  sys.generator = CMatrix::Identity(1, 1) * 1e300;
  ode::IntegrationOptions o;
  o.dt = 1.0;
  EXPECT_THROW((void)ode::integrate_linear(sys, CVector::Ones(1), 10.0, o), NumericalError);
}

// Rate γ on the full bracket empties |e> at 2γ.
TEST(Lindblad, SpontaneousDecayRate) {
  ode::LindbladSpec spec;
  spec.hamiltonian = CMatrix::Zero(2, 2);
  CMatrix j = CMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  spec.jumps = {{0.3, j}};
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  const auto out = ode::integrate_lindblad(spec, rho, 2.0).final_state;
  EXPECT_NEAR(out(1, 1).real(), std::exp(-2.0 * 0.3 * 2.0), 1e-12);
  EXPECT_NEAR(out(0, 0).real(), 1.0 - std::exp(-1.2), 1e-12);
}

TEST(Lindblad, SpecValidation) {
  ode::LindbladSpec spec;
  spec.hamiltonian = CMatrix::Zero(2, 2);
  spec.hamiltonian(0, 1) = 1.0;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.hamiltonian(1, 0) = 1.0;
  EXPECT_NO_THROW(spec.validate());
  spec.jumps = {{-0.1, CMatrix::Zero(2, 2)}};
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.jumps = {{0.1, CMatrix::Zero(3, 3)}};
  EXPECT_THROW(spec.validate(), InvalidArgument);
}

TEST(Lindblad, RejectsUnphysicalStart) {
  ode::LindbladSpec spec;
  spec.hamiltonian = CMatrix::Zero(2, 2);
  CMatrix rho = CMatrix::Identity(2, 2);
  EXPECT_THROW((void)ode::integrate_lindblad(spec, rho, 1.0), InvalidArgument);
}

TEST(Lindblad, PropagatorIsLinear) {
  const auto spec = gate_systems(0.07, 0.4, 0.9)[2].spec;
  const auto n = spec.dimension();
  CMatrix x = CMatrix::Zero(n, n), y = CMatrix::Zero(n, n);
  x(3, 15) = 1.0;
  y(15, 3) = 1.0;
  ode::IntegrationOptions o;
  const auto px = ode::propagate_operator(spec, x, 3.0, o).final_state;
  const auto py = ode::propagate_operator(spec, y, 3.0, o).final_state;
  const auto pxy = ode::propagate_operator(spec, ode::CMatrix(x + Complex{0.0, 2.0} * y), 3.0, o).final_state;
  EXPECT_LT((pxy - px - Complex{0.0, 2.0} * py).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((px.adjoint() - py).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Lindblad, PhysicalityOfGateSystems) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ug(0.0, 0.15), ud(-2.0, 2.0), uo(0.0, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    for (const auto& sys : gate_systems(ug(rng), ud(rng), uo(rng))) {
      const auto n = sys.spec.dimension();
      // Mixed start: half the seed state, half an equal superposition of all
      // photon sectors in the ground level.
      CVector v = CVector::Zero(n);
      for (Eigen::Index f = 0; f < 4; ++f) v(f * (n / 4)) = 0.5;
      CMatrix rho = 0.5 * pure(CVector::Unit(n, sys.start)) + 0.5 * pure(v);
      ode::LindbladOptions o;
      o.stride = 500;
      const auto traj = ode::integrate_lindblad(sys.spec, rho, 10.0, o);
      for (const auto& r : traj.states) {
        EXPECT_LT(std::abs(r.trace() - 1.0), 1e-10) << sys.name;
        EXPECT_LT(ode::hermiticity_error(r), 1e-10) << sys.name;
        EXPECT_GE(ode::min_eigenvalue(r), -1e-8) << sys.name;
      }
    }
  }
}

TEST(Lindblad, LosslessEvolutionStaysPure) {
  for (const auto& sys : gate_systems(0.0, 0.8, 1.1)) {
    const auto n = sys.spec.dimension();
    CVector v = CVector::Zero(n);
    v(sys.start) = std::sqrt(0.5);
    v(0) = std::sqrt(0.5);
    ode::LindbladOptions o;
    o.stride = 1000;
    const auto traj = ode::integrate_lindblad(sys.spec, pure(v), 12.0, o);
    for (const auto& r : traj.states) EXPECT_NEAR(ode::purity(r), 1.0, 1e-8) << sys.name;
  }
}

TEST(MatrixDiagnostics, KnownValues) {
  CMatrix m(2, 2);
  m << 0.75, Complex{0.0, 0.25}, Complex{0.0, -0.25}, 0.25;
  EXPECT_NEAR(ode::hermiticity_error(m), 0.0, 1e-16);
  EXPECT_NEAR(ode::purity(m), 0.75 * 0.75 + 0.25 * 0.25 + 2 * 0.0625, 1e-15);
  EXPECT_NEAR(ode::min_eigenvalue(m), 0.5 - std::sqrt(0.125), 1e-12);
  m(0, 1) = 1.0;
  EXPECT_GT(ode::hermiticity_error(m), 0.5);
  EXPECT_EQ(ode::hermiticity_error(CMatrix()), 0.0);
}
