#pragma once

// Two-level atoms in one cavity mode (dual-rail encoding): the logical
// states |ε₁ε₂> map to ε₁ + ε₂ photons.

#include "cphase/core_model.hpp"
#include "cphase/evolution_engine.hpp"

namespace cphase::twolevel {

struct TwoLevelAmplitudes {
  Complex c_g1{1.0, 0.0};
  Complex c_e1{};
  Complex c_g2{1.0, 0.0};
  Complex c_e2{};
  /// Both photons absorbed; stays zero for a single atom.
  Complex c_ee2{};
  int n_atoms = 1;

  [[nodiscard]] double norm1() const;
  [[nodiscard]] double norm2() const;
};

/// Exact propagation of the lossless collective equations: one photon with
/// coupling g√N; two photons with g√(2N) (g ↔ ψ_e) and g√(2(N−1))
/// (ψ_e ↔ ψ_ee). Requires γ = 0 and Ω = 0.
[[nodiscard]] TwoLevelAmplitudes two_level_amplitudes(const SystemParams& params, double t);

/// The state-averaged fidelity with every excited-state term removed: a
/// leftover excitation leaves the mode with one photon too few, orthogonal to
/// the target. Requires n_atoms = 1.
[[nodiscard]] FidelityReport two_level_gate_fidelity(const SystemParams& params);

/// Largest deviation among |C_g2 − C_g1²|, |C_e2 − √2 C_g1 C_e1|, |C_ee2 − C_e1²|.
[[nodiscard]] double factorization_error(const TwoLevelAmplitudes& amps);

}  // namespace cphase::twolevel
