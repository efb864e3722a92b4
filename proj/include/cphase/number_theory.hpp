#pragma once

// Gate-timing candidates from rational approximations: continued-fraction
// convergents (resonant case) and near-solutions of 2n² = m² + q²
// (detuned case).

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cphase::numtheory {

/// Raised when a recurrence leaves the 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double target = 0.0;
  /// |target − p/q|
  double error = 0.0;
};

/// First k convergents of √2 via p' = p + 2q, q' = p + q starting at 1/1.
[[nodiscard]] std::vector<Convergent> sqrt2_convergents(int k);

/// First k continued-fraction convergents of √radicand, computed with exact
/// integer arithmetic. Throws InvalidArgument for perfect squares or
/// radicand < 2.
[[nodiscard]] std::vector<Convergent> convergents_of_surd(std::int64_t radicand, int k);

/// First k convergents of a real x > 1 (fewer if the expansion terminates).
[[nodiscard]] std::vector<Convergent> convergents_of(double x, int k);

struct ResonanceTriple {
  int n = 0;
  int m = 0;
  int q = 0;
  /// |2n² − m² − q²|
  std::int64_t residual = 0;
  double predicted_delta_over_g = 0.0;
  double predicted_gT = 0.0;

  /// Scale-free quality residual / n².
  [[nodiscard]] double quality() const { return static_cast<double>(residual) / (static_cast<double>(n) * n); }
};

/// Operating point solving ω₁T = nπ and δT/2 = qπ:
/// δ/g = 2q/√(n² − q²), gT = π√(n² − q²). Requires n > q ≥ 0.
[[nodiscard]] ResonanceTriple make_triple(int n, int m, int q);

/// All (n, m, q) with 2 ≤ n ≤ max_n, 1 ≤ q < n < m ≤ ⌈√2·n⌉ and m, q of
/// opposite parity, sorted by residual then predicted gT.
[[nodiscard]] std::vector<ResonanceTriple> resonance_triples(int max_n);

/// Copy sorted by residual / n² (ties by predicted gT).
[[nodiscard]] std::vector<ResonanceTriple> rank_by_quality(std::vector<ResonanceTriple> triples);

}  // namespace cphase::numtheory
