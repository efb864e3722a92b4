#pragma once

// Five-level M scheme: the V transitions plus auxiliary ground states g_a,
// g_b driven from e_a, e_b by classical fields of Rabi frequency Ω.

#include <vector>

#include "cphase/core_model.hpp"
#include "cphase/evolution_engine.hpp"

namespace cphase::five {

/// No-jump amplitudes (decay folded in as δ → δ − iγ).
struct FiveLevelAmplitudes {
  Complex c_ea1{};
  Complex c_g1{1.0, 0.0};
  Complex c_ga1{};
  Complex c_ea2{};
  Complex c_g2{1.0, 0.0};
  Complex c_eb2{};
  Complex c_ga2{};
  Complex c_gb2{};
  /// μ₁² = (γ + iδ)² − 4Ω² − 4g², μ₂² = (γ + iδ)² − 4Ω² − 8g², principal roots.
  Complex mu1{};
  Complex mu2{};

  /// side populations count every atomic level that leaves the field in the
  /// given photon state (e_l and g_l alike).
  [[nodiscard]] PureEvolutionSummary summary() const;
};

struct GroundAmplitudes {
  Complex c_g1{1.0, 0.0};
  Complex c_g2{1.0, 0.0};
};

[[nodiscard]] Complex mu1(const SystemParams& params);
[[nodiscard]] Complex mu2(const SystemParams& params);

/// RK4 of the single- and two-photon amplitude equations at each time in
/// `times` (sorted, non-negative).
[[nodiscard]] std::vector<FiveLevelAmplitudes> five_level_amplitudes(const SystemParams& params,
                                                                     const std::vector<double>& times,
                                                                     double dt = ode::kDefaultStep);
[[nodiscard]] FiveLevelAmplitudes five_level_amplitudes(const SystemParams& params, double t,
                                                        double dt = ode::kDefaultStep);

/// Closed-form ground amplitudes. Near μ → 0 the bracket is evaluated as
/// cosh(μt/2) + (γ + iδ) sinh(μt/2)/μ with a series for small μt.
[[nodiscard]] GroundAmplitudes five_level_closed_form(const SystemParams& params, double t);

/// Large-δ forms Ω²/(g²+Ω²) + g²/(g²+Ω²) e^{it(g²+Ω²)/δ} and
/// Ω²/(2g²+Ω²) + 2g²/(2g²+Ω²) e^{it(2g²+Ω²)/δ}. Requires δ > 0.
[[nodiscard]] GroundAmplitudes five_level_asymptotic(const SystemParams& params, double t);

/// Master equation on enumerate_basis(m_five_level, 2). Each excited level
/// e_l decays through |g><e_l| at rate fγ and |g_l><e_l| at rate (1 − f)γ,
/// f = branching, so the total amplitude decay stays γ.
[[nodiscard]] ode::LindbladSpec five_level_lindblad(const SystemParams& params, double branching = 0.5);

struct FiveLevelFidelityTerms {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double f = 0.0;
};

struct FiveLevelReport {
  FidelityReport report;
  FiveLevelFidelityTerms terms;
};

struct FiveLevelOptions {
  double dt = ode::kDefaultStep;
  double branching = 0.5;
  bool check_physicality = true;
};

/// F = (1/10)(1 + A + B + C + D). A from the no-jump ground amplitudes; B, C,
/// D from master-equation runs started at |01g><01g|, |01g><11g| and
/// |11g><11g|. The b-side runs stand in for both sides (a ↔ b symmetry).
/// f_cond uses the renormalized no-jump amplitudes.
[[nodiscard]] FiveLevelReport five_level_master_fidelity(const SystemParams& params,
                                                         const FiveLevelOptions& options = {});

/// Same evaluation at every time in `times` from one set of runs.
[[nodiscard]] std::vector<FiveLevelReport> five_level_fidelity_curve(const SystemParams& params,
                                                                     const std::vector<double>& times,
                                                                     const FiveLevelOptions& options = {});

/// No-jump fidelity (exact when γ = 0).
[[nodiscard]] FidelityReport five_level_quasi_pure_fidelity(const SystemParams& params,
                                                            double dt = ode::kDefaultStep);

}  // namespace cphase::five
