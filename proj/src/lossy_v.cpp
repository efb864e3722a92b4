#include "cphase/lossy_v.hpp"

#include <cmath>
#include <sstream>

namespace cphase::lossy {
namespace {

constexpr Complex kI{0.0, 1.0};

// Packed cascade vector.
enum Slot : Eigen::Index {
  kCg1,
  kCe1,
  kRho1,
  kCg2,
  kCea2,
  kCeb2,
  kB01g,
  kBEg,
  kBgE,
  kBEE,
  kA10g,
  kAEg,
  kAgE,
  kAEE,
  kRho2,
  kSlots
};

FedBlock unpack_block(const ode::CVector& y, Eigen::Index base) {
  FedBlock b;
  b.photon_ground = y(base).real();
  b.coherence = y(base + 1);
  b.coherence_conj = y(base + 2);
  b.excited = y(base + 3).real();
  return b;
}

CascadeState unpack(const ode::CVector& y, double t) {
  CascadeState s;
  s.t = t;
  s.c_g1 = y(kCg1);
  s.c_e1 = y(kCe1);
  s.rho1_ground = y(kRho1).real();
  s.c_g2 = y(kCg2);
  s.c_ea2 = y(kCea2);
  s.c_eb2 = y(kCeb2);
  s.b_side = unpack_block(y, kB01g);
  s.a_side = unpack_block(y, kA10g);
  s.rho2_ground = y(kRho2).real();
  return s;
}

}  // namespace

double CascadeState::single_photon_total() const { return std::norm(c_g1) + std::norm(c_e1) + rho1_ground; }

double CascadeState::two_photon_total() const {
  return std::norm(c_g2) + std::norm(c_ea2) + std::norm(c_eb2) + b_side.photon_ground + b_side.excited +
         a_side.photon_ground + a_side.excited + rho2_ground;
}

PureEvolutionSummary CascadeState::summary() const {
  PureEvolutionSummary s;
  s.c_g1 = c_g1;
  s.c_g2 = c_g2;
  s.side1 = std::norm(c_e1);
  s.side2 = 0.5 * (std::norm(c_ea2) + std::norm(c_eb2));
  return s;
}

std::vector<CascadeState> evolve_cascade(const SystemParams& params, double t_final,
                                         const CascadeOptions& options) {
  params.validate();
  if (params.n_atoms != 1 || params.omega_rabi != 0.0) {
    throw InvalidArgument("evolve_cascade requires n_atoms = 1 and omega_rabi = 0");
  }
  const double g = params.g;
  const double gam = params.gamma;
  const Complex decay{gam, params.delta};  // γ + iδ

  auto rhs = [=](double, const ode::CVector& y, ode::CVector& out) {
    out.resize(kSlots);
    out(kCg1) = -kI * g * y(kCe1);
    out(kCe1) = -decay * y(kCe1) - kI * g * y(kCg1);
    out(kRho1) = 2.0 * gam * std::norm(y(kCe1));

    out(kCg2) = -kI * g * (y(kCea2) + y(kCeb2));
    out(kCea2) = -decay * y(kCea2) - kI * g * y(kCg2);
    out(kCeb2) = -decay * y(kCeb2) - kI * g * y(kCg2);

    // One-excitation block fed by 2γ|C_ea|² (b photon left) and its mirror.
    auto block = [&](Eigen::Index base, double source) {
      const Complex pg = y(base), eg = y(base + 1), ge = y(base + 2), ee = y(base + 3);
      out(base) = source - kI * g * (eg - ge);
      out(base + 1) = -decay * eg - kI * g * (pg - ee);
      out(base + 2) = -std::conj(decay) * ge + kI * g * (pg - ee);
      out(base + 3) = -2.0 * gam * ee + kI * g * (eg - ge);
    };
    block(kB01g, 2.0 * gam * std::norm(y(kCea2)));
    block(kA10g, 2.0 * gam * std::norm(y(kCeb2)));
    out(kRho2) = 2.0 * gam * (y(kBEE) + y(kAEE));
  };

  ode::CVector y0 = ode::CVector::Zero(kSlots);
  y0(kCg1) = 1.0;
  y0(kCg2) = 1.0;
  ode::IntegrationOptions io;
  io.dt = options.dt;
  io.stride = options.stride;
  io.checkpoints = options.checkpoints;
  auto traj = ode::integrate(rhs, y0, t_final, io);

  std::vector<CascadeState> out;
  out.reserve(traj.states.size() + 1);
  for (std::size_t i = 0; i < traj.states.size(); ++i) out.push_back(unpack(traj.states[i], traj.times[i]));
  out.push_back(unpack(traj.final_state, t_final));

  for (const auto& s : out) {
    const double d1 = std::abs(s.single_photon_total() - 1.0);
    const double d2 = std::abs(s.two_photon_total() - 1.0);
    if (d1 > options.probability_tolerance || d2 > options.probability_tolerance) {
      std::ostringstream os;
      os << "cascade probability not conserved at t = " << s.t << " (drift " << std::max(d1, d2) << ")";
      throw NumericalError(os.str());
    }
  }
  return out;
}

FidelityReport fidelity_from_cascade(const CascadeState& s) {
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

FidelityReport gate_fidelity_lossy(const SystemParams& params, double dt) {
  CascadeOptions o;
  o.dt = dt;
  return fidelity_from_cascade(evolve_cascade(params, params.t_final, o).back());
}

std::vector<FidelityReport> gate_fidelity_lossy_curve(const SystemParams& params, const std::vector<double>& times,
                                                      double dt) {
  if (times.empty()) return {};
  CascadeOptions o;
  o.dt = dt;
  o.checkpoints = times;
  const auto states = evolve_cascade(params, times.back(), o);
  std::vector<FidelityReport> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out.push_back(fidelity_from_cascade(states[i]));
  return out;
}

std::vector<Regime> default_regimes() {
  return {
      {0.0, 0.005, 18.01, 1.388},
      {0.005, 0.015, 8.76, 0.7},
      {0.015, 0.07, 6.473, 0.0},
      {0.07, 0.155, 2.695, 0.0},
  };
}

std::vector<CurvePoint> figure3_curve(const std::vector<double>& gamma_grid, const std::vector<Regime>& regimes,
                                      double dt) {
  std::vector<CurvePoint> out;
  out.reserve(gamma_grid.size());
  for (double gam : gamma_grid) {
    const Regime* chosen = nullptr;
    for (const auto& r : regimes) {
      if (gam >= r.gamma_lo && gam <= r.gamma_hi) {
        chosen = &r;
        break;
      }
    }
    if (chosen == nullptr) {
      std::ostringstream os;
      os << "gamma/g = " << gam << " is outside every regime";
      throw InvalidArgument(os.str());
    }
    SystemParams p;
    p.gamma = gam;
    p.delta = chosen->delta;
    p.t_final = chosen->gT;
    const auto rep = gate_fidelity_lossy(p, dt);
    out.push_back({gam, rep.f_uncond, rep.f_cond, chosen->gT, chosen->delta});
  }
  return out;
}

ode::LindbladSpec v_system_lindblad(const SystemParams& params) {
  params.validate();
  const Basis basis = enumerate_basis(Scheme::v_three_level, 2);
  const auto n = static_cast<Eigen::Index>(basis.size());
  using L = AtomLevel;
  auto idx = [&](const std::vector<int>& ph, L level) { return static_cast<Eigen::Index>(basis.index(ph, level)); };

  ode::LindbladSpec spec;
  spec.hamiltonian = ode::CMatrix::Zero(n, n);
  ode::CMatrix jump_a = ode::CMatrix::Zero(n, n);
  ode::CMatrix jump_b = ode::CMatrix::Zero(n, n);
  for (const auto& ph : basis.photon_states()) {
    const int na = ph[0];
    const int nb = ph[1];
    spec.hamiltonian(idx(ph, L::e_a), idx(ph, L::e_a)) = params.delta;
    spec.hamiltonian(idx(ph, L::e_b), idx(ph, L::e_b)) = params.delta;
    if (na == 1) {
      spec.hamiltonian(idx(ph, L::g), idx({0, nb}, L::e_a)) = params.g;
      spec.hamiltonian(idx({0, nb}, L::e_a), idx(ph, L::g)) = params.g;
    }
    if (nb == 1) {
      spec.hamiltonian(idx(ph, L::g), idx({na, 0}, L::e_b)) = params.g;
      spec.hamiltonian(idx({na, 0}, L::e_b), idx(ph, L::g)) = params.g;
    }
    jump_a(idx(ph, L::g), idx(ph, L::e_a)) = 1.0;
    jump_b(idx(ph, L::g), idx(ph, L::e_b)) = 1.0;
  }
  spec.jumps = {{params.gamma, jump_a}, {params.gamma, jump_b}};
  return spec;
}

}  // namespace cphase::lossy
