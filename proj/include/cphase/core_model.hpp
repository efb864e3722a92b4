#pragma once

// Shared parameter records, basis enumeration and fidelity bookkeeping used
// by every solver in the library. All rates are expressed in units of the
// atom-cavity coupling g.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cphase {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// |C_g| below this value makes the gate phase meaningless.
inline constexpr double kPhaseFloor = 1e-6;

/// Raised for parameter records or arguments that violate a precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an integration produces non-finite or non-physical values.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical constants of one run. g is the unit of all rates; t_final is in
/// units of 1/g. gamma is an amplitude decay rate (populations decay at 2γ).
struct SystemParams {
  double g = 1.0;
  double delta = 0.0;
  double gamma = 0.0;
  double omega_rabi = 0.0;
  int n_atoms = 1;
  double t_final = 0.0;

  /// Throws InvalidArgument if any invariant is violated.
  void validate() const;

  [[nodiscard]] SystemParams with_time(double t) const {
    SystemParams p = *this;
    p.t_final = t;
    return p;
  }
};

enum class Scheme {
  two_level,
  v_three_level,
  m_five_level,
  two_atom_collective_v,
};

[[nodiscard]] std::string_view to_string(Scheme scheme);
/// Accepts the identifiers produced by to_string(Scheme).
[[nodiscard]] Scheme parse_scheme(std::string_view name);

enum class AtomLevel {
  g,
  e,
  e_a,
  e_b,
  g_a,
  g_b,
  g_all,
  psi_a,
  psi_b,
  psi_ab,
};

[[nodiscard]] std::string_view to_string(AtomLevel level);

/// Product-basis ket: photon occupations (mode a first) and an atomic level.
struct BasisLabel {
  std::vector<int> photons;
  AtomLevel atom = AtomLevel::g;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
  [[nodiscard]] std::string to_string() const;
};

/// Ordered, duplicate-free product basis. Photon-major, atom-minor; photon
/// tuples in lexicographic order (00, 01, 10, 11 for two modes).
class Basis {
 public:
  Basis(std::vector<std::vector<int>> photon_states, std::vector<AtomLevel> levels);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::vector<BasisLabel>& labels() const { return labels_; }
  [[nodiscard]] const BasisLabel& operator[](std::size_t i) const { return labels_[i]; }
  [[nodiscard]] std::size_t photon_state_count() const { return photon_states_.size(); }
  [[nodiscard]] std::size_t level_count() const { return levels_.size(); }
  [[nodiscard]] const std::vector<std::vector<int>>& photon_states() const { return photon_states_; }
  [[nodiscard]] const std::vector<AtomLevel>& levels() const { return levels_; }

  /// Index of |photons, level>. Throws InvalidArgument if absent.
  [[nodiscard]] std::size_t index(const std::vector<int>& photons, AtomLevel level) const;
  [[nodiscard]] std::optional<std::size_t> find(const std::vector<int>& photons, AtomLevel level) const;
  [[nodiscard]] std::size_t photon_index(std::size_t i) const { return i / levels_.size(); }
  [[nodiscard]] std::size_t level_index(std::size_t i) const { return i % levels_.size(); }

 private:
  std::vector<std::vector<int>> photon_states_;
  std::vector<AtomLevel> levels_;
  std::vector<BasisLabel> labels_;
};

/// Atomic level set of a scheme, in enumeration order.
[[nodiscard]] std::vector<AtomLevel> scheme_levels(Scheme scheme);

/// Product basis for a scheme. Two-mode schemes use occupations {0,1} per
/// mode; two_level with a single mode holds 0, 1 or 2 photons.
[[nodiscard]] Basis enumerate_basis(Scheme scheme, int n_photon_modes);

/// theta + 2πk in (−π, π]. Throws InvalidArgument for non-finite input.
[[nodiscard]] double wrap_phase(double theta);

/// Mean products of squared input-state magnitudes over the uniform simplex.
struct StateAverageWeights {
  static constexpr double w_quartic = 1.0 / 10.0;
  static constexpr double w_cross = 1.0 / 20.0;
};
static_assert(StateAverageWeights::w_quartic == 2.0 * StateAverageWeights::w_cross);

struct FidelityReport {
  double f_uncond = 0.0;
  double f_cond = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  /// φ₂ − 2φ₁ wrapped to (−π, π]; empty when either ground amplitude is
  /// below kPhaseFloor.
  std::optional<double> nonlinear_phase;
  double prob_g1 = 0.0;
  double prob_g2 = 0.0;
  /// Input-averaged probability that at least one spontaneous emission
  /// occurred during [0, T].
  double loss_prob = 0.0;
  bool flagged = false;
};

/// Ground-state and leftover populations of one no-jump (pure or quasi-pure)
/// evolution, enough to evaluate the state-averaged gate fidelity.
struct PureEvolutionSummary {
  Complex c_g1{1.0, 0.0};
  Complex c_g2{1.0, 0.0};
  /// Single-photon input: population with the photon absorbed (field |00>).
  double side1 = 0.0;
  /// Two-photon input: population with exactly one photon left, per side
  /// (field |01>, equal to the |10> value by symmetry).
  double side2 = 0.0;
  /// Two-photon input: population with both photons absorbed (field |00>).
  double zero2 = 0.0;
};

/// State-averaged fidelity of a no-jump evolution:
/// (1/10)[1 + 3|Cg1|² + |Cg2|² + 2|Cg1| − (1 + 2|Cg1|) Re(e^{−2iφ₁} Cg2)
///        + side1 + side2] + (1/20) zero2.
/// When |Cg1| is below the phase floor the reference phase is taken as 0.
[[nodiscard]] double pure_state_fidelity(const PureEvolutionSummary& s);

/// Fills phases, probabilities, nonlinear phase and the flag from the
/// ground amplitudes. Fidelity fields are left untouched.
void fill_phases(FidelityReport& report, Complex c_g1, Complex c_g2);

/// Same summary divided through by the no-jump norms of each manifold.
[[nodiscard]] PureEvolutionSummary renormalized(const PureEvolutionSummary& s);

/// Norm of the single-photon no-jump state.
[[nodiscard]] double norm1(const PureEvolutionSummary& s);
/// Norm of the two-photon no-jump state (both sides counted).
[[nodiscard]] double norm2(const PureEvolutionSummary& s);

/// Probability of a jump averaged over input states (E|α|² = 1/4 each).
[[nodiscard]] double averaged_loss_probability(const PureEvolutionSummary& s);

}  // namespace cphase
