#include "cphase/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cphase/core_model.hpp"

namespace cphase::numtheory {
namespace {

__extension__ using Wide = __int128;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("convergent recurrence overflows int64");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("convergent recurrence overflows int64");
  return r;
}

// |√D − p/q| = |p² − D q²| / (q (p + q√D)), evaluated without cancellation.
double surd_error(std::int64_t radicand, std::int64_t p, std::int64_t q) {
  const Wide num = static_cast<Wide>(p) * p - static_cast<Wide>(radicand) * q * q;
  const long double absnum = static_cast<long double>(num < 0 ? -num : num);
  const long double root = std::sqrt(static_cast<long double>(radicand));
  const long double lq = static_cast<long double>(q);
  return static_cast<double>(absnum / (lq * (static_cast<long double>(p) + lq * root)));
}

std::int64_t isqrt(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

std::vector<Convergent> sqrt2_convergents(int k) {
  if (k < 1) throw InvalidArgument("sqrt2_convergents: k must be >= 1");
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(k));
  std::int64_t p = 1;
  std::int64_t q = 1;
  for (int i = 0; i < k; ++i) {
    if (i > 0) {
      const std::int64_t np = checked_add(p, checked_mul(2, q));
      const std::int64_t nq = checked_add(p, q);
      p = np;
      q = nq;
    }
    out.push_back({p, q, std::sqrt(2.0), surd_error(2, p, q)});
  }
  return out;
}

std::vector<Convergent> convergents_of_surd(std::int64_t radicand, int k) {
  if (k < 1) throw InvalidArgument("convergents_of_surd: k must be >= 1");
  if (radicand < 2) throw InvalidArgument("convergents_of_surd: radicand must be >= 2");
  const std::int64_t a0 = isqrt(radicand);
  if (a0 * a0 == radicand) {
    throw InvalidArgument("convergents_of_surd: " + std::to_string(radicand) + " is a perfect square");
  }
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(k));
  const double target = std::sqrt(static_cast<double>(radicand));
  // Periodic expansion of √D: m' = d a − m, d' = (D − m'²)/d, a' = ⌊(a0 + m')/d'⌋.
  std::int64_t m = 0, d = 1, a = a0;
  std::int64_t p_prev = 1, p = a0;
  std::int64_t q_prev = 0, q = 1;
  out.push_back({p, q, target, surd_error(radicand, p, q)});
  for (int i = 1; i < k; ++i) {
    m = d * a - m;
    d = (radicand - m * m) / d;
    a = (a0 + m) / d;
    const std::int64_t np = checked_add(checked_mul(a, p), p_prev);
    const std::int64_t nq = checked_add(checked_mul(a, q), q_prev);
    p_prev = p;
    q_prev = q;
    p = np;
    q = nq;
    out.push_back({p, q, target, surd_error(radicand, p, q)});
  }
  return out;
}

std::vector<Convergent> convergents_of(double x, int k) {
  if (k < 1) throw InvalidArgument("convergents_of: k must be >= 1");
  if (!std::isfinite(x) || !(x > 1.0)) throw InvalidArgument("convergents_of: x must be finite and > 1");
  std::vector<Convergent> out;
  long double rest = x;
  std::int64_t p_prev = 1, p = 0;
  std::int64_t q_prev = 0, q = 1;
  for (int i = 0; i < k; ++i) {
    const long double fl = std::floor(rest);
    if (fl > 9.0e18L) throw OverflowError("continued-fraction term overflows int64");
    const auto a = static_cast<std::int64_t>(fl);
    const std::int64_t np = i == 0 ? a : checked_add(checked_mul(a, p), p_prev);
    const std::int64_t nq = i == 0 ? 1 : checked_add(checked_mul(a, q), q_prev);
    if (i == 0) {
      p_prev = 1;
      q_prev = 0;
    } else {
      p_prev = p;
      q_prev = q;
    }
    p = np;
    q = nq;
    const long double approx = static_cast<long double>(p) / static_cast<long double>(q);
    out.push_back({p, q, x, static_cast<double>(std::fabs(static_cast<long double>(x) - approx))});
    const long double frac = rest - fl;
    if (frac < 1e-15L * std::max<long double>(1.0L, rest)) break;
    rest = 1.0L / frac;
  }
  return out;
}

ResonanceTriple make_triple(int n, int m, int q) {
  if (!(n > q) || q < 0) throw InvalidArgument("make_triple: requires n > q >= 0");
  ResonanceTriple t;
  t.n = n;
  t.m = m;
  t.q = q;
  const std::int64_t r = 2LL * n * n - static_cast<std::int64_t>(m) * m - static_cast<std::int64_t>(q) * q;
  t.residual = r < 0 ? -r : r;
  const double root = std::sqrt(static_cast<double>(n) * n - static_cast<double>(q) * q);
  t.predicted_delta_over_g = 2.0 * q / root;
  t.predicted_gT = kPi * root;
  return t;
}

std::vector<ResonanceTriple> resonance_triples(int max_n) {
  if (max_n < 2) throw InvalidArgument("resonance_triples: max_n must be >= 2");
  std::vector<ResonanceTriple> out;
  for (int n = 2; n <= max_n; ++n) {
    const int m_max = static_cast<int>(std::ceil(std::sqrt(2.0) * n));
    for (int q = 1; q < n; ++q) {
      for (int m = n + 1; m <= m_max; ++m) {
        if ((m + q) % 2 == 0) continue;
        out.push_back(make_triple(n, m, q));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ResonanceTriple& a, const ResonanceTriple& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    return a.predicted_gT < b.predicted_gT;
  });
  return out;
}

std::vector<ResonanceTriple> rank_by_quality(std::vector<ResonanceTriple> triples) {
  std::stable_sort(triples.begin(), triples.end(), [](const ResonanceTriple& a, const ResonanceTriple& b) {
    if (a.quality() != b.quality()) return a.quality() < b.quality();
    return a.predicted_gT < b.predicted_gT;
  });
  return triples;
}

}  // namespace cphase::numtheory
