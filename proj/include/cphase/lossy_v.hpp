#pragma once

// Single V-type atom with spontaneous emission. The two-excitation manifold
// evolves as a no-jump state under δ → δ − iγ; its decay feeds a small
// density-matrix block in the one-excitation manifold, which in turn feeds
// the ground state. Everything is carried in one RK4 pass.

#include <vector>

#include "cphase/core_model.hpp"
#include "cphase/evolution_engine.hpp"

namespace cphase::lossy {

struct FedBlock {
  /// ρ_{01g,01g}: one photon left, atom relaxed.
  double photon_ground = 0.0;
  /// ρ_{00e,01g}; the reverse coherence is its conjugate.
  Complex coherence{};
  /// ρ_{01g,00e} as integrated (kept separately to check Hermiticity).
  Complex coherence_conj{};
  /// ρ_{00e,00e}
  double excited = 0.0;
};

struct CascadeState {
  double t = 0.0;
  // Single-photon no-jump amplitudes.
  Complex c_g1{1.0, 0.0};
  Complex c_e1{};
  // Two-photon no-jump amplitudes.
  Complex c_g2{1.0, 0.0};
  Complex c_ea2{};
  Complex c_eb2{};
  /// Fed by |01,e_a> decay (b photon remaining).
  FedBlock b_side;
  /// Mirror block fed by |10,e_b> decay.
  FedBlock a_side;
  /// ρ^(1)_{00g,00g} = 2γ ∫|C_e^(1)|² dt
  double rho1_ground = 0.0;
  /// ρ^(2)_{00g,00g}
  double rho2_ground = 0.0;

  [[nodiscard]] double single_photon_total() const;
  [[nodiscard]] double two_photon_total() const;
  [[nodiscard]] PureEvolutionSummary summary() const;
};

struct CascadeOptions {
  double dt = ode::kDefaultStep;
  /// Record every stride-th step (0: final state only).
  std::size_t stride = 0;
  std::vector<double> checkpoints;
  double probability_tolerance = 1e-6;
};

/// Requires n_atoms = 1 and omega_rabi = 0. Throws NumericalError if total
/// probability drifts beyond the tolerance at any recorded time. The final
/// state is always the last element.
[[nodiscard]] std::vector<CascadeState> evolve_cascade(const SystemParams& params, double t_final,
                                                       const CascadeOptions& options = {});

/// Fidelity from a cascade state: the no-jump formula plus the fed
/// populations weighted 1/10 (ρ^(1)_00g, ρ_01g, ρ_00e) and 1/20 (ρ^(2)_00g).
/// f_cond renormalizes the no-jump amplitudes before applying the formula.
[[nodiscard]] FidelityReport fidelity_from_cascade(const CascadeState& state);

[[nodiscard]] FidelityReport gate_fidelity_lossy(const SystemParams& params, double dt = ode::kDefaultStep);

/// Reports at each time in `times` (sorted, within [0, max]) from one pass.
[[nodiscard]] std::vector<FidelityReport> gate_fidelity_lossy_curve(const SystemParams& params,
                                                                    const std::vector<double>& times,
                                                                    double dt = ode::kDefaultStep);

struct Regime {
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  double gT = 0.0;
  double delta = 0.0;
};

/// Operating points used for the fidelity-vs-loss curve: gT = 18.01,
/// δ = 1.388 for γ ≤ 0.005; 8.76, 0.7 up to 0.015; 6.473, 0 up to 0.07;
/// 2.695, 0 up to 0.155.
[[nodiscard]] std::vector<Regime> default_regimes();

struct CurvePoint {
  double gamma = 0.0;
  double f_uncond = 0.0;
  double f_cond = 0.0;
  double gT = 0.0;
  double delta = 0.0;
};

/// Evaluates each γ at the first regime whose closed interval contains it.
/// Throws InvalidArgument if a γ is not covered.
[[nodiscard]] std::vector<CurvePoint> figure3_curve(const std::vector<double>& gamma_grid,
                                                    const std::vector<Regime>& regimes = default_regimes(),
                                                    double dt = ode::kDefaultStep);

/// Master equation on enumerate_basis(v_three_level, 2): jumps |g><e_a| and
/// |g><e_b| at rate γ on every photon state.
[[nodiscard]] ode::LindbladSpec v_system_lindblad(const SystemParams& params);

}  // namespace cphase::lossy
