#include "cphase/five_level.hpp"

#include <cmath>

namespace cphase::five {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex decay_rate(const SystemParams& p) { return {p.gamma, p.delta}; }

// e^{−st/2} [cosh(μt/2) + s sinh(μt/2)/μ]
Complex bracket(Complex s, Complex mu, double t) {
  const Complex x = 0.5 * mu * t;
  if (std::abs(x) < 1e-3) {
    const Complex x2 = x * x;
    const Complex cosh_x = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
    const Complex sinhc = 0.5 * t * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    return std::exp(-0.5 * s * t) * (cosh_x + s * sinhc);
  }
  // Exponents combined so neither factor overflows on its own.
  return 0.5 * (std::exp(0.5 * (-s - mu) * t) * (1.0 - s / mu) + std::exp(0.5 * (-s + mu) * t) * (1.0 + s / mu));
}

// Packed amplitudes: single photon (e_a, g, g_a), two photons (e_a, g, e_b, g_a, g_b).
enum Slot : Eigen::Index { kEa1, kG1, kGa1, kEa2, kG2, kEb2, kGa2, kGb2, kSlots };

// Trace over the atom of one diagonal field block.
double field_population(const ode::CMatrix& rho, const Basis& basis, const std::vector<int>& photons) {
  double p = 0.0;
  for (auto level : basis.levels()) {
    const auto i = static_cast<Eigen::Index>(basis.index(photons, level));
    p += rho(i, i).real();
  }
  return p;
}

Complex field_element(const ode::CMatrix& x, const Basis& basis, const std::vector<int>& left,
                      const std::vector<int>& right) {
  Complex v{};
  for (auto level : basis.levels()) {
    v += x(static_cast<Eigen::Index>(basis.index(left, level)), static_cast<Eigen::Index>(basis.index(right, level)));
  }
  return v;
}

ode::CMatrix seed(const Basis& basis, const std::vector<int>& left, const std::vector<int>& right) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  ode::CMatrix x = ode::CMatrix::Zero(n, n);
  x(static_cast<Eigen::Index>(basis.index(left, AtomLevel::g)),
    static_cast<Eigen::Index>(basis.index(right, AtomLevel::g))) = 1.0;
  return x;
}

FiveLevelAmplitudes unpack(const ode::CVector& y, Complex m1, Complex m2) {
  FiveLevelAmplitudes a;
  a.c_ea1 = y(kEa1);
  a.c_g1 = y(kG1);
  a.c_ga1 = y(kGa1);
  a.c_ea2 = y(kEa2);
  a.c_g2 = y(kG2);
  a.c_eb2 = y(kEb2);
  a.c_ga2 = y(kGa2);
  a.c_gb2 = y(kGb2);
  a.mu1 = m1;
  a.mu2 = m2;
  return a;
}

}  // namespace

PureEvolutionSummary FiveLevelAmplitudes::summary() const {
  PureEvolutionSummary s;
  s.c_g1 = c_g1;
  s.c_g2 = c_g2;
  s.side1 = std::norm(c_ea1) + std::norm(c_ga1);
  s.side2 = 0.5 * (std::norm(c_ea2) + std::norm(c_ga2) + std::norm(c_eb2) + std::norm(c_gb2));
  return s;
}

Complex mu1(const SystemParams& p) {
  const Complex s = decay_rate(p);
  return std::sqrt(s * s - 4.0 * p.omega_rabi * p.omega_rabi - 4.0 * p.g * p.g);
}

Complex mu2(const SystemParams& p) {
  const Complex s = decay_rate(p);
  return std::sqrt(s * s - 4.0 * p.omega_rabi * p.omega_rabi - 8.0 * p.g * p.g);
}

std::vector<FiveLevelAmplitudes> five_level_amplitudes(const SystemParams& params, const std::vector<double>& times,
                                                       double dt) {
  params.validate();
  if (params.n_atoms != 1) throw InvalidArgument("five-level scheme is single-atom");
  if (times.empty()) return {};
  const double g = params.g;
  const double om = params.omega_rabi;
  const Complex s = decay_rate(params);

  auto rhs = [=](double, const ode::CVector& y, ode::CVector& out) {
    out.resize(kSlots);
    out(kEa1) = -s * y(kEa1) - kI * g * y(kG1) - kI * om * y(kGa1);
    out(kG1) = -kI * g * y(kEa1);
    out(kGa1) = -kI * om * y(kEa1);
    out(kEa2) = -s * y(kEa2) - kI * g * y(kG2) - kI * om * y(kGa2);
    out(kG2) = -kI * g * (y(kEa2) + y(kEb2));
    out(kEb2) = -s * y(kEb2) - kI * g * y(kG2) - kI * om * y(kGb2);
    out(kGa2) = -kI * om * y(kEa2);
    out(kGb2) = -kI * om * y(kEb2);
  };
  ode::CVector y0 = ode::CVector::Zero(kSlots);
  y0(kG1) = 1.0;
  y0(kG2) = 1.0;
  ode::IntegrationOptions o;
  // Resolve the fastest of the coupling and drive frequencies.
  o.dt = dt / std::max(1.0, std::max(om, std::abs(params.delta)) / 10.0);
  o.checkpoints = times;
  const auto traj = ode::integrate(rhs, y0, times.back(), o);
  const Complex m1 = mu1(params);
  const Complex m2 = mu2(params);
  std::vector<FiveLevelAmplitudes> out;
  out.reserve(times.size());
  for (const auto& y : traj.states) out.push_back(unpack(y, m1, m2));
  return out;
}

FiveLevelAmplitudes five_level_amplitudes(const SystemParams& params, double t, double dt) {
  return five_level_amplitudes(params, std::vector<double>{t}, dt).front();
}

GroundAmplitudes five_level_closed_form(const SystemParams& params, double t) {
  params.validate();
  const double g2 = params.g * params.g;
  const double o2 = params.omega_rabi * params.omega_rabi;
  const Complex s = decay_rate(params);
  GroundAmplitudes r;
  r.c_g1 = o2 / (g2 + o2) + g2 / (g2 + o2) * bracket(s, mu1(params), t);
  r.c_g2 = o2 / (2.0 * g2 + o2) + 2.0 * g2 / (2.0 * g2 + o2) * bracket(s, mu2(params), t);
  return r;
}

GroundAmplitudes five_level_asymptotic(const SystemParams& params, double t) {
  params.validate();
  if (!(params.delta > 0.0)) throw InvalidArgument("five_level_asymptotic requires delta > 0");
  const double g2 = params.g * params.g;
  const double o2 = params.omega_rabi * params.omega_rabi;
  const double d = params.delta;
  GroundAmplitudes r;
  r.c_g1 = o2 / (g2 + o2) + g2 / (g2 + o2) * std::exp(kI * t * (g2 + o2) / d);
  r.c_g2 = o2 / (2.0 * g2 + o2) + 2.0 * g2 / (2.0 * g2 + o2) * std::exp(kI * t * (2.0 * g2 + o2) / d);
  return r;
}

ode::LindbladSpec five_level_lindblad(const SystemParams& params, double branching) {
  params.validate();
  if (!(branching >= 0.0 && branching <= 1.0)) throw InvalidArgument("branching must lie in [0, 1]");
  const Basis basis = enumerate_basis(Scheme::m_five_level, 2);
  const auto n = static_cast<Eigen::Index>(basis.size());
  using L = AtomLevel;
  auto idx = [&](const std::vector<int>& ph, L level) { return static_cast<Eigen::Index>(basis.index(ph, level)); };

  ode::LindbladSpec spec;
  ode::CMatrix& h = spec.hamiltonian;
  h = ode::CMatrix::Zero(n, n);
  auto couple = [&](Eigen::Index i, Eigen::Index j, double v) {
    h(i, j) = v;
    h(j, i) = v;
  };
  ode::CMatrix to_g_a = ode::CMatrix::Zero(n, n), to_g_b = ode::CMatrix::Zero(n, n);
  ode::CMatrix to_ga = ode::CMatrix::Zero(n, n), to_gb = ode::CMatrix::Zero(n, n);
  for (const auto& ph : basis.photon_states()) {
    const int na = ph[0];
    const int nb = ph[1];
    h(idx(ph, L::e_a), idx(ph, L::e_a)) = params.delta;
    h(idx(ph, L::e_b), idx(ph, L::e_b)) = params.delta;
    if (na == 1) couple(idx(ph, L::g), idx({0, nb}, L::e_a), params.g);
    if (nb == 1) couple(idx(ph, L::g), idx({na, 0}, L::e_b), params.g);
    couple(idx(ph, L::e_a), idx(ph, L::g_a), params.omega_rabi);
    couple(idx(ph, L::e_b), idx(ph, L::g_b), params.omega_rabi);
    to_g_a(idx(ph, L::g), idx(ph, L::e_a)) = 1.0;
    to_g_b(idx(ph, L::g), idx(ph, L::e_b)) = 1.0;
    to_ga(idx(ph, L::g_a), idx(ph, L::e_a)) = 1.0;
    to_gb(idx(ph, L::g_b), idx(ph, L::e_b)) = 1.0;
  }
  const double to_ground = branching * params.gamma;
  const double to_aux = (1.0 - branching) * params.gamma;
  if (to_ground > 0.0) {
    spec.jumps.push_back({to_ground, to_g_a});
    spec.jumps.push_back({to_ground, to_g_b});
  }
  if (to_aux > 0.0) {
    spec.jumps.push_back({to_aux, to_ga});
    spec.jumps.push_back({to_aux, to_gb});
  }
  return spec;
}

std::vector<FiveLevelReport> five_level_fidelity_curve(const SystemParams& params, const std::vector<double>& times,
                                                       const FiveLevelOptions& options) {
  params.validate();
  if (times.empty()) return {};
  const Basis basis = enumerate_basis(Scheme::m_five_level, 2);
  const ode::LindbladSpec spec = five_level_lindblad(params, options.branching);
  const std::vector<int> f00{0, 0}, f01{0, 1}, f10{1, 0}, f11{1, 1};
  const double t_end = times.back();

  ode::LindbladOptions lo;
  lo.dt = options.dt;
  lo.checkpoints = times;
  lo.check_physicality = options.check_physicality;
  const auto run_b = ode::integrate_lindblad(spec, seed(basis, f01, f01), t_end, lo);
  const auto run_d = ode::integrate_lindblad(spec, seed(basis, f11, f11), t_end, lo);
  ode::IntegrationOptions po;
  po.dt = options.dt;
  po.checkpoints = times;
  const auto run_c = ode::propagate_operator(spec, seed(basis, f01, f11), t_end, po);
  const auto amps = five_level_amplitudes(params, times, options.dt);

  std::vector<FiveLevelReport> out;
  out.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const GroundAmplitudes ground = five_level_closed_form(params, times[k]);
    const double c = std::abs(ground.c_g1);
    const Complex u = c >= kPhaseFloor ? ground.c_g1 / c : Complex{1.0, 0.0};

    FiveLevelFidelityTerms terms;
    terms.A = 2.0 * c - std::real(std::conj(u) * std::conj(u) * ground.c_g2) + c * c;
    const auto& rb = run_b.states[k];
    terms.B = 2.0 * field_population(rb, basis, f01) + field_population(rb, basis, f00);
    const Complex rho_11_01 = std::conj(field_element(run_c.states[k], basis, f01, f11));
    terms.C = -2.0 * std::real(std::conj(u) * rho_11_01);
    const auto& rd = run_d.states[k];
    terms.D = field_population(rd, basis, f11) +
              0.5 * (field_population(rd, basis, f01) + field_population(rd, basis, f10)) +
              0.5 * field_population(rd, basis, f00);
    terms.f = 0.1 * (1.0 + terms.A + terms.B + terms.C + terms.D);

    FiveLevelReport rep;
    rep.terms = terms;
    rep.report.f_uncond = terms.f;
    const PureEvolutionSummary summary = amps[k].summary();
    rep.report.f_cond = pure_state_fidelity(renormalized(summary));
    rep.report.loss_prob = averaged_loss_probability(summary);
    fill_phases(rep.report, ground.c_g1, ground.c_g2);
    out.push_back(rep);
  }
  return out;
}

FiveLevelReport five_level_master_fidelity(const SystemParams& params, const FiveLevelOptions& options) {
  return five_level_fidelity_curve(params, {params.t_final}, options).front();
}

FidelityReport five_level_quasi_pure_fidelity(const SystemParams& params, double dt) {
  const FiveLevelAmplitudes a = five_level_amplitudes(params, params.t_final, dt);
  const PureEvolutionSummary s = a.summary();
  FidelityReport r;
  r.f_uncond = pure_state_fidelity(s);
  r.f_cond = pure_state_fidelity(renormalized(s));
  r.loss_prob = averaged_loss_probability(s);
  fill_phases(r, a.c_g1, a.c_g2);
  return r;
}

}  // namespace cphase::five
