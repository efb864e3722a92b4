#pragma once

// N identical V atoms sharing one field, solved in the permutation-symmetric
// collective basis {g_all, ψ_a, ψ_b, ψ_ab}. Lossy dynamics are provided for
// N = 2 with a common reservoir.

#include <vector>

#include "cphase/core_model.hpp"
#include "cphase/evolution_engine.hpp"

namespace cphase::multi {

struct CollectiveAmplitudes {
  Complex c_g1{1.0, 0.0};
  Complex c_e1{};
  Complex c_g2{1.0, 0.0};
  /// Amplitude on each of |ψ_a>|01> and |ψ_b>|10>.
  Complex c_e2{};
  Complex c_ee2{};
  int n_atoms = 1;

  [[nodiscard]] double norm1() const;
  [[nodiscard]] double norm2() const;
};

enum class Propagation {
  /// Exact propagation through the Hermitian eigenbasis (gamma = 0 only).
  spectral,
  /// Fixed-step RK4; the step is divided by √N to follow the collective
  /// Rabi frequency.
  rk4,
};

/// Single- and two-photon collective amplitudes at time t. With γ > 0 the
/// excited amplitudes decay as in the no-jump evolution: Nγ for ψ_a, ψ_b and
/// 2(N−1)γ for ψ_ab (collective rates of the shared reservoir).
[[nodiscard]] CollectiveAmplitudes n_atom_amplitudes(const SystemParams& params, double t,
                                                     Propagation method = Propagation::spectral,
                                                     double dt = ode::kDefaultStep);

/// C_g^(2)(t) = (N − 1 + N cos(√(4N − 2) g t)) / (2N − 1), valid at δ = 0.
[[nodiscard]] double n_atom_ground_closed_form(int n_atoms, double g, double t);

/// Largest deviation among |C_g2 − C_g1²|, |C_e2 − C_g1 C_e1|, |C_ee2 − C_e1²|.
[[nodiscard]] double factorization_error(const CollectiveAmplitudes& amps);

/// Decay-fed block on one side of the one-excitation manifold.
struct CollectiveFedBlock {
  /// ρ_{01g,01g} (one photon, both atoms in g).
  double photon_ground = 0.0;
  /// ρ_{00ψ,01g}
  Complex coherence{};
  /// ρ_{01g,00ψ}
  Complex coherence_conj{};
  /// ρ_{00ψ,00ψ}
  double excited = 0.0;
};

struct TwoAtomLossyState {
  double t = 0.0;
  Complex c_g1{1.0, 0.0};
  Complex c_e1{};
  Complex c_g2{1.0, 0.0};
  Complex c_ea2{};
  Complex c_eb2{};
  Complex c_ee2{};
  /// Fed by decay of |01,ψ_a> and |00,ψ_ab> (b photon or ψ_b remaining).
  CollectiveFedBlock b_side;
  CollectiveFedBlock a_side;
  double rho1_ground = 0.0;
  double rho2_ground = 0.0;

  [[nodiscard]] double single_photon_total() const;
  [[nodiscard]] double two_photon_total() const;
  [[nodiscard]] PureEvolutionSummary summary() const;
};

struct TwoAtomOptions {
  double dt = ode::kDefaultStep;
  std::vector<double> checkpoints;
  double probability_tolerance = 1e-6;
};

/// Manifold cascade for two atoms. The last element is the state at t_final;
/// checkpoint states precede it in order.
[[nodiscard]] std::vector<TwoAtomLossyState> evolve_two_atom(const SystemParams& params, double t_final,
                                                             const TwoAtomOptions& options = {});

[[nodiscard]] FidelityReport fidelity_from_two_atom(const TwoAtomLossyState& state);

/// Requires n_atoms = 2 and omega_rabi = 0.
[[nodiscard]] FidelityReport two_atom_gate_fidelity(const SystemParams& params, double dt = ode::kDefaultStep);

[[nodiscard]] std::vector<FidelityReport> two_atom_fidelity_curve(const SystemParams& params,
                                                                  const std::vector<double>& times,
                                                                  double dt = ode::kDefaultStep);

/// Collective decay operators on the atomic space {g_all, ψ_a, ψ_b, ψ_ab}
/// of two atoms: J_a ψ_a = √2 g_all, J_a ψ_ab = ψ_b.
[[nodiscard]] ode::CMatrix collective_jump_a();
[[nodiscard]] ode::CMatrix collective_jump_b();

/// Master equation on the 16-state basis enumerate_basis(two_atom_collective_v, 2).
[[nodiscard]] ode::LindbladSpec two_atom_lindblad(const SystemParams& params);

}  // namespace cphase::multi
