#include "cphase/two_level.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace cphase::twolevel {
namespace {

constexpr Complex kI{0.0, 1.0};

ode::CVector evolve_ground(const ode::CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ode::CMatrix> es(h);
  const auto& v = es.eigenvectors();
  const ode::CVector phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
  return v * phases.asDiagonal() * v.adjoint().col(0);
}

}  // namespace

double TwoLevelAmplitudes::norm1() const { return std::norm(c_g1) + std::norm(c_e1); }

double TwoLevelAmplitudes::norm2() const { return std::norm(c_g2) + std::norm(c_e2) + std::norm(c_ee2); }

TwoLevelAmplitudes two_level_amplitudes(const SystemParams& params, double t) {
  params.validate();
  if (params.gamma != 0.0 || params.omega_rabi != 0.0) {
    throw InvalidArgument("two_level_amplitudes requires gamma = 0 and omega_rabi = 0");
  }
  if (!(t >= 0.0)) throw InvalidArgument("two_level_amplitudes: t must be >= 0");
  const double n = params.n_atoms;
  const double g = params.g;

  ode::CMatrix h1 = ode::CMatrix::Zero(2, 2);
  h1(0, 1) = h1(1, 0) = g * std::sqrt(n);
  h1(1, 1) = params.delta;

  ode::CMatrix h2 = ode::CMatrix::Zero(3, 3);
  h2(0, 1) = h2(1, 0) = g * std::sqrt(2.0 * n);
  h2(1, 2) = h2(2, 1) = g * std::sqrt(2.0 * (n - 1.0));
  h2(1, 1) = params.delta;
  h2(2, 2) = 2.0 * params.delta;

  const ode::CVector y1 = evolve_ground(h1, t);
  const ode::CVector y2 = evolve_ground(h2, t);
  TwoLevelAmplitudes a;
  a.n_atoms = params.n_atoms;
  a.c_g1 = y1(0);
  a.c_e1 = y1(1);
  a.c_g2 = y2(0);
  a.c_e2 = y2(1);
  a.c_ee2 = params.n_atoms > 1 ? y2(2) : Complex{};
  return a;
}

FidelityReport two_level_gate_fidelity(const SystemParams& params) {
  if (params.n_atoms != 1) throw InvalidArgument("two_level_gate_fidelity requires n_atoms = 1");
  const TwoLevelAmplitudes a = two_level_amplitudes(params, params.t_final);
  PureEvolutionSummary s;
  s.c_g1 = a.c_g1;
  s.c_g2 = a.c_g2;
  FidelityReport r;
  r.f_uncond = pure_state_fidelity(s);
  r.f_cond = r.f_uncond;
  fill_phases(r, a.c_g1, a.c_g2);
  return r;
}

double factorization_error(const TwoLevelAmplitudes& a) {
  return std::max({std::abs(a.c_g2 - a.c_g1 * a.c_g1), std::abs(a.c_e2 - std::sqrt(2.0) * a.c_g1 * a.c_e1),
                   std::abs(a.c_ee2 - a.c_e1 * a.c_e1)});
}

}  // namespace cphase::twolevel
