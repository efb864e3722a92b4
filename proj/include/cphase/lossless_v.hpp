#pragma once

// Single V-type atom with one or two cavity photons, no losses. Amplitudes
// are closed-form; the gate fidelity is the input-state average of the
// overlap with the ideal CPHASE output.

#include <cstdint>

#include "cphase/core_model.hpp"

namespace cphase::lossless {

struct LosslessAmplitudes {
  Complex c_g1;
  Complex c_e1;
  Complex c_g2;
  /// Common value of C_ea^(2) = C_eb^(2).
  Complex c_e2;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

/// Requires gamma = 0, omega_rabi = 0 and n_atoms = 1.
[[nodiscard]] LosslessAmplitudes closed_form_amplitudes(const SystemParams& params, double t);

/// Projection onto the inputs of the shared fidelity formula.
[[nodiscard]] PureEvolutionSummary summarize(const LosslessAmplitudes& amps);

/// Averaged fidelity with the |C_e|² terms kept as separate populations.
/// f_cond equals f_uncond; a report with |C_g^(1)| below the phase floor is
/// flagged.
[[nodiscard]] FidelityReport gate_fidelity_lossless(const LosslessAmplitudes& amps);

/// Convenience: closed_form_amplitudes at params.t_final, then the fidelity.
[[nodiscard]] FidelityReport gate_fidelity_lossless(const SystemParams& params);

/// Nonlinear phase wrap(arg C_g^(2) − 2 arg C_g^(1)). Throws InvalidArgument
/// if either ground amplitude is below the phase floor.
[[nodiscard]] double nonlinear_phase(const LosslessAmplitudes& amps);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Overlap <Φ_ideal|ρ_f|Φ_ideal> for one input state with amplitudes
/// (α00, α01, α10, α11); ρ_f is the field state after tracing the atom.
[[nodiscard]] double overlap_for_input(const LosslessAmplitudes& amps, const std::array<Complex, 4>& alpha);

/// Sample average of the overlap over inputs whose squared magnitudes are
/// uniform on the 3-simplex with independent uniform phases. n_samples must
/// be at least 1000.
[[nodiscard]] MonteCarloEstimate monte_carlo_fidelity(const LosslessAmplitudes& amps, std::size_t n_samples,
                                                      std::uint64_t seed);

}  // namespace cphase::lossless
