#pragma once

// Fixed-step RK4 backends: small complex linear (or source-driven) ODE
// systems and a Lindblad master-equation integrator.

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

#include "cphase/core_model.hpp"

namespace cphase::ode {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultStep = 1e-3;

struct IntegrationOptions {
  double dt = kDefaultStep;
  /// Record every `stride`-th regular step (0: only checkpoints and the end).
  std::size_t stride = 0;
  /// Times at which the state must be recorded exactly; steps are shortened
  /// to land on each of them. Must be sorted and lie in [0, t_final].
  std::vector<double> checkpoints;
};

template <typename State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  State final_state;
};

using VectorTrajectory = Trajectory<CVector>;
using DensityTrajectory = Trajectory<DensityMatrix>;

/// d(state)/dt = generator · state + source(t).
struct LinearSystem {
  CMatrix generator;
  std::function<CVector(double)> source;

  [[nodiscard]] Eigen::Index dimension() const { return generator.rows(); }
};

/// dy/dt = f(t, y), written into the last argument.
using VectorRhs = std::function<void(double, const CVector&, CVector&)>;

/// Classical RK4 for an arbitrary right-hand side.
[[nodiscard]] VectorTrajectory integrate(const VectorRhs& rhs, const CVector& initial, double t_final,
                                         const IntegrationOptions& options = {});

[[nodiscard]] VectorTrajectory integrate_linear(const LinearSystem& system, const CVector& initial,
                                                double t_final, const IntegrationOptions& options = {});

struct JumpOperator {
  double rate = 0.0;
  CMatrix op;
};

/// dρ/dt = −i[H, ρ] − Σ_l rate_l (ρ J†J + J†J ρ − 2 J ρ J†).
/// Note rate multiplies the full bracket: a jump |g><e| with rate γ empties
/// |e> at population rate 2γ.
struct LindbladSpec {
  CMatrix hamiltonian;
  std::vector<JumpOperator> jumps;

  [[nodiscard]] Eigen::Index dimension() const { return hamiltonian.rows(); }
  /// Throws InvalidArgument unless H is Hermitian to 1e-12, shapes agree and
  /// rates are non-negative.
  void validate() const;
};

struct LindbladOptions : IntegrationOptions {
  /// Check trace, Hermiticity and positivity at every recorded state.
  bool check_physicality = true;
  double trace_tolerance = 1e-8;
  double positivity_tolerance = 1e-8;
};

/// Integrates a physical density matrix. rho0 must be Hermitian with unit
/// trace and non-negative spectrum; NumericalError is thrown on trace drift or
/// negative eigenvalues at recorded times.
[[nodiscard]] DensityTrajectory integrate_lindblad(const LindbladSpec& spec, const DensityMatrix& rho0,
                                                   double t_final, const LindbladOptions& options = {});

/// Applies the (linear) Lindblad propagator to an arbitrary operator, e.g.
/// an off-diagonal seed |a><b|. No physicality checks.
[[nodiscard]] DensityTrajectory propagate_operator(const LindbladSpec& spec, const CMatrix& x0, double t_final,
                                                   const IntegrationOptions& options = {});

[[nodiscard]] double hermiticity_error(const CMatrix& m);
[[nodiscard]] double min_eigenvalue(const DensityMatrix& rho);
[[nodiscard]] double purity(const DensityMatrix& rho);

}  // namespace cphase::ode
