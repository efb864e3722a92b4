#include "cphase/lossless_v.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace cphase::lossless {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex reference_phase(Complex c_g1) {
  const double c = std::abs(c_g1);
  return c >= kPhaseFloor ? c_g1 / c : Complex{1.0, 0.0};
}

}  // namespace

LosslessAmplitudes closed_form_amplitudes(const SystemParams& params, double t) {
  params.validate();
  if (params.gamma != 0.0 || params.omega_rabi != 0.0 || params.n_atoms != 1) {
    throw InvalidArgument("closed_form_amplitudes requires gamma = 0, omega_rabi = 0, n_atoms = 1");
  }
  const double g = params.g;
  const double d = params.delta;
  LosslessAmplitudes a;
  a.omega1 = 0.5 * std::sqrt(d * d + 4.0 * g * g);
  a.omega2 = 0.5 * std::sqrt(d * d + 8.0 * g * g);
  const Complex envelope = std::exp(-kI * d * t / 2.0);
  const double s1 = std::sin(a.omega1 * t);
  const double s2 = std::sin(a.omega2 * t);
  a.c_g1 = envelope * (kI * d / (2.0 * a.omega1) * s1 + std::cos(a.omega1 * t));
  a.c_e1 = -kI * g * envelope * s1 / a.omega1;
  a.c_g2 = envelope * (kI * d / (2.0 * a.omega2) * s2 + std::cos(a.omega2 * t));
  a.c_e2 = -kI * g * envelope * s2 / a.omega2;
  return a;
}

PureEvolutionSummary summarize(const LosslessAmplitudes& amps) {
  PureEvolutionSummary s;
  s.c_g1 = amps.c_g1;
  s.c_g2 = amps.c_g2;
  s.side1 = std::norm(amps.c_e1);
  s.side2 = std::norm(amps.c_e2);
  return s;
}

FidelityReport gate_fidelity_lossless(const LosslessAmplitudes& amps) {
  FidelityReport r;
  const auto s = summarize(amps);
  r.f_uncond = pure_state_fidelity(s);
  r.f_cond = r.f_uncond;
  fill_phases(r, amps.c_g1, amps.c_g2);
  r.loss_prob = 0.0;
  return r;
}

FidelityReport gate_fidelity_lossless(const SystemParams& params) {
  return gate_fidelity_lossless(closed_form_amplitudes(params, params.t_final));
}

double nonlinear_phase(const LosslessAmplitudes& amps) {
  if (std::abs(amps.c_g1) < kPhaseFloor || std::abs(amps.c_g2) < kPhaseFloor) {
    throw InvalidArgument("nonlinear phase undefined: ground amplitude below phase floor");
  }
  return wrap_phase(std::arg(amps.c_g2) - 2.0 * std::arg(amps.c_g1));
}

double overlap_for_input(const LosslessAmplitudes& amps, const std::array<Complex, 4>& alpha) {
  const Complex u = reference_phase(amps.c_g1);
  // Field components (|00>, |01>, |10>, |11>) attached to each atomic level.
  const Eigen::Vector4cd on_g(alpha[0], alpha[1] * amps.c_g1, alpha[2] * amps.c_g1, alpha[3] * amps.c_g2);
  const Eigen::Vector4cd on_ea(alpha[2] * amps.c_e1, alpha[3] * amps.c_e2, 0.0, 0.0);
  const Eigen::Vector4cd on_eb(alpha[1] * amps.c_e1, 0.0, alpha[3] * amps.c_e2, 0.0);
  Eigen::Matrix4cd rho_f = on_g * on_g.adjoint() + on_ea * on_ea.adjoint() + on_eb * on_eb.adjoint();
  const Eigen::Vector4cd ideal(alpha[0], alpha[1] * u, alpha[2] * u, -alpha[3] * u * u);
  return std::real(ideal.dot(rho_f * ideal));
}

MonteCarloEstimate monte_carlo_fidelity(const LosslessAmplitudes& amps, std::size_t n_samples,
                                        std::uint64_t seed) {
  if (n_samples < 1000) throw InvalidArgument("monte_carlo_fidelity needs at least 1000 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    std::array<double, 3> cut{unit(rng), unit(rng), unit(rng)};
    std::sort(cut.begin(), cut.end());
    const std::array<double, 4> weights{cut[0], cut[1] - cut[0], cut[2] - cut[1], 1.0 - cut[2]};
    std::array<Complex, 4> alpha;
    for (std::size_t j = 0; j < 4; ++j) {
      alpha[j] = std::polar(std::sqrt(weights[j]), 2.0 * kPi * unit(rng));
    }
    const double v = overlap_for_input(amps, alpha);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace cphase::lossless
