#include "cphase/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cphase {

void SystemParams::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("g must be positive and finite");
  if (!std::isfinite(delta)) throw InvalidArgument("delta must be finite");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be >= 0");
  if (!(omega_rabi >= 0.0) || !std::isfinite(omega_rabi)) throw InvalidArgument("omega_rabi must be >= 0");
  if (n_atoms < 1) throw InvalidArgument("n_atoms must be >= 1");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be >= 0");
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::two_level: return "two_level";
    case Scheme::v_three_level: return "v_three_level";
    case Scheme::m_five_level: return "m_five_level";
    case Scheme::two_atom_collective_v: return "two_atom_collective_v";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::two_level, Scheme::v_three_level, Scheme::m_five_level,
                   Scheme::two_atom_collective_v}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown scheme identifier: " + std::string(name));
}

std::string_view to_string(AtomLevel level) {
  switch (level) {
    case AtomLevel::g: return "g";
    case AtomLevel::e: return "e";
    case AtomLevel::e_a: return "e_a";
    case AtomLevel::e_b: return "e_b";
    case AtomLevel::g_a: return "g_a";
    case AtomLevel::g_b: return "g_b";
    case AtomLevel::g_all: return "g_all";
    case AtomLevel::psi_a: return "psi_a";
    case AtomLevel::psi_b: return "psi_b";
    case AtomLevel::psi_ab: return "psi_ab";
  }
  return "?";
}

std::string BasisLabel::to_string() const {
  std::ostringstream os;
  os << '|';
  for (int n : photons) os << n;
  os << ',' << cphase::to_string(atom) << '>';
  return os.str();
}

Basis::Basis(std::vector<std::vector<int>> photon_states, std::vector<AtomLevel> levels)
    : photon_states_(std::move(photon_states)), levels_(std::move(levels)) {
  labels_.reserve(photon_states_.size() * levels_.size());
  for (const auto& p : photon_states_) {
    for (AtomLevel a : levels_) labels_.push_back(BasisLabel{p, a});
  }
}

std::optional<std::size_t> Basis::find(const std::vector<int>& photons, AtomLevel level) const {
  auto p = std::find(photon_states_.begin(), photon_states_.end(), photons);
  auto a = std::find(levels_.begin(), levels_.end(), level);
  if (p == photon_states_.end() || a == levels_.end()) return std::nullopt;
  return static_cast<std::size_t>(p - photon_states_.begin()) * levels_.size() +
         static_cast<std::size_t>(a - levels_.begin());
}

std::size_t Basis::index(const std::vector<int>& photons, AtomLevel level) const {
  if (auto i = find(photons, level)) return *i;
  BasisLabel missing{photons, level};
  throw InvalidArgument("basis has no state " + missing.to_string());
}

std::vector<AtomLevel> scheme_levels(Scheme scheme) {
  switch (scheme) {
    case Scheme::two_level: return {AtomLevel::g, AtomLevel::e};
    case Scheme::v_three_level: return {AtomLevel::g, AtomLevel::e_a, AtomLevel::e_b};
    case Scheme::m_five_level:
      return {AtomLevel::g, AtomLevel::e_a, AtomLevel::e_b, AtomLevel::g_a, AtomLevel::g_b};
    case Scheme::two_atom_collective_v:
      return {AtomLevel::g_all, AtomLevel::psi_a, AtomLevel::psi_b, AtomLevel::psi_ab};
  }
  throw InvalidArgument("unknown scheme identifier");
}

Basis enumerate_basis(Scheme scheme, int n_photon_modes) {
  if (n_photon_modes < 1 || n_photon_modes > 2) {
    throw InvalidArgument("n_photon_modes must be 1 or 2");
  }
  std::vector<std::vector<int>> photons;
  if (scheme == Scheme::two_level && n_photon_modes == 1) {
    photons = {{0}, {1}, {2}};
  } else if (n_photon_modes == 1) {
    photons = {{0}, {1}};
  } else {
    photons = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  }
  return Basis(std::move(photons), scheme_levels(scheme));
}

double wrap_phase(double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("wrap_phase: non-finite input");
  double r = std::remainder(theta, 2.0 * kPi);
  const double snap = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(theta));
  if (r <= -kPi + snap) r = std::min(r + 2.0 * kPi, kPi);
  return r;
}

double pure_state_fidelity(const PureEvolutionSummary& s) {
  const double c = std::abs(s.c_g1);
  const Complex ref = c >= kPhaseFloor ? s.c_g1 / c : Complex{1.0, 0.0};
  const double overlap = std::real(std::conj(ref) * std::conj(ref) * s.c_g2);
  return 0.1 * (1.0 + 3.0 * c * c + std::norm(s.c_g2) + 2.0 * c - (1.0 + 2.0 * c) * overlap + s.side1 +
                s.side2) +
         0.05 * s.zero2;
}

void fill_phases(FidelityReport& report, Complex c_g1, Complex c_g2) {
  report.prob_g1 = std::norm(c_g1);
  report.prob_g2 = std::norm(c_g2);
  report.phi1 = std::arg(c_g1);
  report.phi2 = std::arg(c_g2);
  const bool ok = std::abs(c_g1) >= kPhaseFloor && std::abs(c_g2) >= kPhaseFloor;
  report.flagged = !ok;
  if (ok) {
    report.nonlinear_phase = wrap_phase(report.phi2 - 2.0 * report.phi1);
  } else {
    report.nonlinear_phase.reset();
  }
}

double norm1(const PureEvolutionSummary& s) { return std::norm(s.c_g1) + s.side1; }

double norm2(const PureEvolutionSummary& s) { return std::norm(s.c_g2) + 2.0 * s.side2 + s.zero2; }

PureEvolutionSummary renormalized(const PureEvolutionSummary& s) {
  const double n1 = norm1(s);
  const double n2 = norm2(s);
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw NumericalError("no-jump state has zero norm");
  PureEvolutionSummary r;
  r.c_g1 = s.c_g1 / std::sqrt(n1);
  r.side1 = s.side1 / n1;
  r.c_g2 = s.c_g2 / std::sqrt(n2);
  r.side2 = s.side2 / n2;
  r.zero2 = s.zero2 / n2;
  return r;
}

double averaged_loss_probability(const PureEvolutionSummary& s) {
  return 0.25 * (2.0 * (1.0 - norm1(s)) + (1.0 - norm2(s)));
}

}  // namespace cphase
