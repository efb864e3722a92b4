#include "cphase/multi_atom.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cphase::multi {
namespace {

constexpr Complex kI{0.0, 1.0};

// Non-Hermitian generators in normalized collective bases:
// one photon {g, ψ}; two photons {g, (ψ_a|01> + ψ_b|10>)/√2, ψ_ab}.
ode::CMatrix single_photon_hamiltonian(const SystemParams& p) {
  const double n = p.n_atoms;
  ode::CMatrix h = ode::CMatrix::Zero(2, 2);
  h(0, 1) = h(1, 0) = p.g * std::sqrt(n);
  h(1, 1) = Complex{p.delta, -n * p.gamma};
  return h;
}

ode::CMatrix two_photon_hamiltonian(const SystemParams& p) {
  const double n = p.n_atoms;
  ode::CMatrix h = ode::CMatrix::Zero(3, 3);
  h(0, 1) = h(1, 0) = p.g * std::sqrt(2.0 * n);
  h(1, 2) = h(2, 1) = p.g * std::sqrt(2.0 * (n - 1.0));
  h(1, 1) = Complex{p.delta, -n * p.gamma};
  h(2, 2) = Complex{2.0 * p.delta, -2.0 * (n - 1.0) * p.gamma};
  return h;
}

ode::CVector propagate(const ode::CMatrix& h, double t, Propagation method, double dt, double rate_scale) {
  ode::CVector y0 = ode::CVector::Zero(h.rows());
  y0(0) = 1.0;
  if (method == Propagation::spectral && ode::hermiticity_error(h) == 0.0) {
    Eigen::SelfAdjointEigenSolver<ode::CMatrix> es(h);
    const auto& v = es.eigenvectors();
    ode::CVector phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
    return v * phases.asDiagonal() * v.adjoint() * y0;
  }
  ode::LinearSystem sys{-kI * h, nullptr};
  ode::IntegrationOptions o;
  o.dt = dt / rate_scale;
  return ode::integrate_linear(sys, y0, t, o).final_state;
}

// Packed two-atom cascade vector.
enum Slot : Eigen::Index {
  kCg1,
  kCe1,
  kRho1,
  kCg2,
  kCea2,
  kCeb2,
  kCee2,
  kBPg,
  kBEg,
  kBgE,
  kBEE,
  kAPg,
  kAEg,
  kAgE,
  kAEE,
  kRho2,
  kSlots
};

CollectiveFedBlock unpack_block(const ode::CVector& y, Eigen::Index base) {
  return {y(base).real(), y(base + 1), y(base + 2), y(base + 3).real()};
}

TwoAtomLossyState unpack(const ode::CVector& y, double t) {
  TwoAtomLossyState s;
  s.t = t;
  s.c_g1 = y(kCg1);
  s.c_e1 = y(kCe1);
  s.rho1_ground = y(kRho1).real();
  s.c_g2 = y(kCg2);
  s.c_ea2 = y(kCea2);
  s.c_eb2 = y(kCeb2);
  s.c_ee2 = y(kCee2);
  s.b_side = unpack_block(y, kBPg);
  s.a_side = unpack_block(y, kAPg);
  s.rho2_ground = y(kRho2).real();
  return s;
}

}  // namespace

double CollectiveAmplitudes::norm1() const { return std::norm(c_g1) + std::norm(c_e1); }

double CollectiveAmplitudes::norm2() const {
  return std::norm(c_g2) + 2.0 * std::norm(c_e2) + std::norm(c_ee2);
}

CollectiveAmplitudes n_atom_amplitudes(const SystemParams& params, double t, Propagation method, double dt) {
  params.validate();
  if (!(t >= 0.0)) throw InvalidArgument("n_atom_amplitudes: t must be >= 0");
  const double scale = std::sqrt(static_cast<double>(params.n_atoms));
  const ode::CVector y1 = propagate(single_photon_hamiltonian(params), t, method, dt, scale);
  const ode::CVector y2 = propagate(two_photon_hamiltonian(params), t, method, dt, scale);
  CollectiveAmplitudes a;
  a.n_atoms = params.n_atoms;
  a.c_g1 = y1(0);
  a.c_e1 = y1(1);
  a.c_g2 = y2(0);
  a.c_e2 = y2(1) / std::sqrt(2.0);
  a.c_ee2 = y2(2);
  return a;
}

double n_atom_ground_closed_form(int n_atoms, double g, double t) {
  if (n_atoms < 1) throw InvalidArgument("n_atoms must be >= 1");
  const double n = n_atoms;
  return (n - 1.0 + n * std::cos(std::sqrt(4.0 * n - 2.0) * g * t)) / (2.0 * n - 1.0);
}

double factorization_error(const CollectiveAmplitudes& a) {
  return std::max({std::abs(a.c_g2 - a.c_g1 * a.c_g1), std::abs(a.c_e2 - a.c_g1 * a.c_e1),
                   std::abs(a.c_ee2 - a.c_e1 * a.c_e1)});
}

double TwoAtomLossyState::single_photon_total() const {
  return std::norm(c_g1) + std::norm(c_e1) + rho1_ground;
}

double TwoAtomLossyState::two_photon_total() const {
  return std::norm(c_g2) + std::norm(c_ea2) + std::norm(c_eb2) + std::norm(c_ee2) + b_side.photon_ground +
         b_side.excited + a_side.photon_ground + a_side.excited + rho2_ground;
}

PureEvolutionSummary TwoAtomLossyState::summary() const {
  PureEvolutionSummary s;
  s.c_g1 = c_g1;
  s.c_g2 = c_g2;
  s.side1 = std::norm(c_e1);
  s.side2 = 0.5 * (std::norm(c_ea2) + std::norm(c_eb2));
  s.zero2 = std::norm(c_ee2);
  return s;
}

std::vector<TwoAtomLossyState> evolve_two_atom(const SystemParams& params, double t_final,
                                               const TwoAtomOptions& options) {
  params.validate();
  if (params.n_atoms != 2 || params.omega_rabi != 0.0) {
    throw InvalidArgument("evolve_two_atom requires n_atoms = 2 and omega_rabi = 0");
  }
  const double g = params.g;
  const double gam = params.gamma;
  const double g2 = g * std::sqrt(2.0);
  const Complex single{2.0 * gam, params.delta};
  const Complex pair{2.0 * gam, 2.0 * params.delta};

  auto rhs = [=](double, const ode::CVector& y, ode::CVector& out) {
    out.resize(kSlots);
    out(kCg1) = -kI * g2 * y(kCe1);
    out(kCe1) = -single * y(kCe1) - kI * g2 * y(kCg1);
    out(kRho1) = 4.0 * gam * std::norm(y(kCe1));

    out(kCg2) = -kI * g2 * (y(kCea2) + y(kCeb2));
    out(kCea2) = -single * y(kCea2) - kI * g2 * y(kCg2) - kI * g * y(kCee2);
    out(kCeb2) = -single * y(kCeb2) - kI * g2 * y(kCg2) - kI * g * y(kCee2);
    out(kCee2) = -pair * y(kCee2) - kI * g * (y(kCea2) + y(kCeb2));

    // A jump J_l maps the two-photon state onto v = (√2 C_e, C_ee) in the
    // (photon + g_all, ψ) pair of one side; the source is 2γ v v†.
    auto block = [&](Eigen::Index base, Complex ce) {
      const Complex vg = std::sqrt(2.0) * ce;
      const Complex ve = y(kCee2);
      const Complex pg = y(base), eg = y(base + 1), ge = y(base + 2), ee = y(base + 3);
      out(base) = 2.0 * gam * std::norm(vg) - kI * g2 * (eg - ge);
      out(base + 1) = -single * eg - kI * g2 * (pg - ee) + 2.0 * gam * ve * std::conj(vg);
      out(base + 2) = -std::conj(single) * ge + kI * g2 * (pg - ee) + 2.0 * gam * vg * std::conj(ve);
      out(base + 3) = -4.0 * gam * ee + kI * g2 * (eg - ge) + 2.0 * gam * std::norm(ve);
    };
    block(kBPg, y(kCea2));
    block(kAPg, y(kCeb2));
    out(kRho2) = 4.0 * gam * (y(kBEE) + y(kAEE));
  };

  ode::CVector y0 = ode::CVector::Zero(kSlots);
  y0(kCg1) = 1.0;
  y0(kCg2) = 1.0;
  ode::IntegrationOptions io;
  io.dt = options.dt;
  io.checkpoints = options.checkpoints;
  const auto traj = ode::integrate(rhs, y0, t_final, io);

  std::vector<TwoAtomLossyState> out;
  out.reserve(traj.states.size() + 1);
  for (std::size_t i = 0; i < traj.states.size(); ++i) out.push_back(unpack(traj.states[i], traj.times[i]));
  out.push_back(unpack(traj.final_state, t_final));
  for (const auto& s : out) {
    const double drift = std::max(std::abs(s.single_photon_total() - 1.0), std::abs(s.two_photon_total() - 1.0));
    if (drift > options.probability_tolerance) {
      std::ostringstream os;
      os << "two-atom cascade probability not conserved at t = " << s.t << " (drift " << drift << ")";
      throw NumericalError(os.str());
    }
  }
  return out;
}

FidelityReport fidelity_from_two_atom(const TwoAtomLossyState& s) {
  const PureEvolutionSummary summary = s.summary();
  FidelityReport r;
  r.f_uncond = pure_state_fidelity(summary) + 0.1 * s.rho1_ground + 0.05 * s.rho2_ground +
               0.05 * (s.b_side.excited + s.a_side.excited) +
               0.05 * (s.b_side.photon_ground + s.a_side.photon_ground);
  r.f_cond = pure_state_fidelity(renormalized(summary));
  r.loss_prob = averaged_loss_probability(summary);
  fill_phases(r, s.c_g1, s.c_g2);
  return r;
}

FidelityReport two_atom_gate_fidelity(const SystemParams& params, double dt) {
  TwoAtomOptions o;
  o.dt = dt;
  return fidelity_from_two_atom(evolve_two_atom(params, params.t_final, o).back());
}

std::vector<FidelityReport> two_atom_fidelity_curve(const SystemParams& params, const std::vector<double>& times,
                                                    double dt) {
  if (times.empty()) return {};
  TwoAtomOptions o;
  o.dt = dt;
  o.checkpoints = times;
  const auto states = evolve_two_atom(params, times.back(), o);
  std::vector<FidelityReport> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out.push_back(fidelity_from_two_atom(states[i]));
  return out;
}

ode::CMatrix collective_jump_a() {
  // Order: g_all, ψ_a, ψ_b, ψ_ab.
  ode::CMatrix j = ode::CMatrix::Zero(4, 4);
  j(0, 1) = std::sqrt(2.0);
  j(2, 3) = 1.0;
  return j;
}

ode::CMatrix collective_jump_b() {
  ode::CMatrix j = ode::CMatrix::Zero(4, 4);
  j(0, 2) = std::sqrt(2.0);
  j(1, 3) = 1.0;
  return j;
}

ode::LindbladSpec two_atom_lindblad(const SystemParams& params) {
  params.validate();
  if (params.n_atoms != 2) throw InvalidArgument("two_atom_lindblad requires n_atoms = 2");
  const Basis basis = enumerate_basis(Scheme::two_atom_collective_v, 2);
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double g = params.g;
  const double g2 = g * std::sqrt(2.0);
  using L = AtomLevel;

  ode::LindbladSpec spec;
  spec.hamiltonian = ode::CMatrix::Zero(n, n);
  auto couple = [&](std::size_t i, std::size_t j, double v) {
    spec.hamiltonian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    spec.hamiltonian(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
  };
  for (const auto& ph : basis.photon_states()) {
    const int na = ph[0];
    const int nb = ph[1];
    auto at = [&](L level) { return static_cast<Eigen::Index>(basis.index(ph, level)); };
    spec.hamiltonian(at(L::psi_a), at(L::psi_a)) = params.delta;
    spec.hamiltonian(at(L::psi_b), at(L::psi_b)) = params.delta;
    spec.hamiltonian(at(L::psi_ab), at(L::psi_ab)) = 2.0 * params.delta;
    if (na == 1) {
      couple(basis.index(ph, L::g_all), basis.index({0, nb}, L::psi_a), g2);
      couple(basis.index(ph, L::psi_b), basis.index({0, nb}, L::psi_ab), g);
    }
    if (nb == 1) {
      couple(basis.index(ph, L::g_all), basis.index({na, 0}, L::psi_b), g2);
      couple(basis.index(ph, L::psi_a), basis.index({na, 0}, L::psi_ab), g);
    }
  }

  for (const auto& atomic : {collective_jump_a(), collective_jump_b()}) {
    ode::CMatrix op = ode::CMatrix::Zero(n, n);
    for (Eigen::Index f = 0; f < 4; ++f) op.block(f * 4, f * 4, 4, 4) = atomic;
    spec.jumps.push_back({params.gamma, op});
  }
  return spec;
}

}  // namespace cphase::multi
