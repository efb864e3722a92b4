#include "cphase/evolution_engine.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

namespace cphase::ode {
namespace {

using SparseC = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

template <typename State>
bool all_finite(const State& s) {
  return s.allFinite();
}

// Drives `step(t, h, y)` from 0 to t_final, recording per the options.
template <typename State, typename StepFn>
Trajectory<State> drive(State y, double t_final, const IntegrationOptions& options, StepFn&& step) {
  if (!(options.dt > 0.0) || !std::isfinite(options.dt)) throw InvalidArgument("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be >= 0");
  const auto& cps = options.checkpoints;
  if (!std::is_sorted(cps.begin(), cps.end())) throw InvalidArgument("checkpoints must be sorted");
  if (!cps.empty() && (cps.front() < 0.0 || cps.back() > t_final * (1.0 + 1e-14) + 1e-14)) {
    throw InvalidArgument("checkpoints must lie in [0, t_final]");
  }

  Trajectory<State> traj;
  std::size_t next_cp = 0;
  auto record_checkpoints = [&](double t) {
    while (next_cp < cps.size() && cps[next_cp] <= t) {
      traj.times.push_back(cps[next_cp]);
      traj.states.push_back(y);
      ++next_cp;
    }
  };
  if (options.stride > 0 && (cps.empty() || cps.front() > 0.0)) {
    traj.times.push_back(0.0);
    traj.states.push_back(y);
  }
  record_checkpoints(0.0);

  double t = 0.0;
  std::size_t regular_steps = 0;
  const double land_eps = 1e-9 * options.dt;
  while (t < t_final) {
    double target = t_final;
    if (next_cp < cps.size()) target = std::min(target, cps[next_cp]);
    double h = options.dt;
    bool landing = false;
    if (t + h >= target - land_eps) {
      h = target - t;
      landing = true;
    }
    step(t, h, y);
    t = landing ? target : t + h;
    if (!all_finite(y)) {
      std::ostringstream os;
      os << "non-finite state during integration at t = " << t;
      throw NumericalError(os.str());
    }
    if (!landing) {
      ++regular_steps;
      if (options.stride > 0 && regular_steps % options.stride == 0) {
        traj.times.push_back(t);
        traj.states.push_back(y);
      }
    }
    record_checkpoints(t);
  }
  if (options.stride > 0 && (traj.times.empty() || traj.times.back() != t)) {
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  traj.final_state = std::move(y);
  return traj;
}

SparseC to_sparse(const CMatrix& m) {
  std::vector<Eigen::Triplet<Complex>> trips;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Complex{}) trips.emplace_back(static_cast<int>(i), static_cast<int>(j), m(i, j));
    }
  }
  SparseC s(m.rows(), m.cols());
  s.setFromTriplets(trips.begin(), trips.end());
  s.makeCompressed();
  return s;
}

// States reachable from the seed's support under H, the jumps and J†J.
std::vector<Eigen::Index> support_closure(const LindbladSpec& spec, const CMatrix& x0) {
  const Eigen::Index n = spec.dimension();
  std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(n));
  auto link = [&](Eigen::Index from, Eigen::Index to) { adj[static_cast<std::size_t>(from)].push_back(to); };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (spec.hamiltonian(i, j) != Complex{}) {
        link(i, j);
        link(j, i);
      }
    }
  }
  for (const auto& jump : spec.jumps) {
    const CMatrix jj = jump.op.adjoint() * jump.op;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (jump.op(i, j) != Complex{}) link(j, i);
        if (jj(i, j) != Complex{}) {
          link(i, j);
          link(j, i);
        }
      }
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Eigen::Index> q;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (x0(i, j) != Complex{}) {
        for (Eigen::Index k : {i, j}) {
          if (!seen[static_cast<std::size_t>(k)]) {
            seen[static_cast<std::size_t>(k)] = 1;
            q.push(k);
          }
        }
      }
    }
  }
  while (!q.empty()) {
    const Eigen::Index k = q.front();
    q.pop();
    for (Eigen::Index m : adj[static_cast<std::size_t>(k)]) {
      if (!seen[static_cast<std::size_t>(m)]) {
        seen[static_cast<std::size_t>(m)] = 1;
        q.push(m);
      }
    }
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) keep.push_back(i);
  }
  return keep;
}

CMatrix restrict(const CMatrix& m, const std::vector<Eigen::Index>& keep) {
  const auto k = static_cast<Eigen::Index>(keep.size());
  CMatrix r(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) r(i, j) = m(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
  }
  return r;
}

CMatrix embed(const CMatrix& small, const std::vector<Eigen::Index>& keep, Eigen::Index n) {
  CMatrix full = CMatrix::Zero(n, n);
  const auto k = static_cast<Eigen::Index>(keep.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) full(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]) = small(i, j);
  }
  return full;
}

// Sparse right-hand side of the master equation on a closed sub-basis.
class LindbladRhs {
 public:
  LindbladRhs(const LindbladSpec& spec, const std::vector<Eigen::Index>& keep) {
    CMatrix heff = restrict(spec.hamiltonian, keep);
    for (const auto& jump : spec.jumps) {
      if (jump.rate == 0.0) continue;
      const CMatrix j = restrict(jump.op, keep);
      heff -= Complex{0.0, jump.rate} * (j.adjoint() * j);
      jumps_.push_back(to_sparse(j));
      jumps_adj_.push_back(to_sparse(j.adjoint()));
      rates_.push_back(2.0 * jump.rate);
    }
    heff_ = to_sparse(heff);
    heff_adj_ = to_sparse(heff.adjoint());
  }

  void operator()(const CMatrix& rho, CMatrix& out) const {
    out.noalias() = heff_ * rho;
    out.noalias() -= rho * heff_adj_;
    out *= Complex{0.0, -1.0};
    for (std::size_t l = 0; l < jumps_.size(); ++l) {
      tmp_.noalias() = jumps_[l] * rho;
      out.noalias() += rates_[l] * (tmp_ * jumps_adj_[l]);
    }
  }

 private:
  SparseC heff_;
  SparseC heff_adj_;
  std::vector<SparseC> jumps_;
  std::vector<SparseC> jumps_adj_;
  std::vector<double> rates_;
  mutable CMatrix tmp_;
};

DensityTrajectory propagate_restricted(const LindbladSpec& spec, const CMatrix& x0, double t_final,
                                       const IntegrationOptions& options) {
  const Eigen::Index n = spec.dimension();
  const auto keep = support_closure(spec, x0);
  if (keep.empty()) {
    DensityTrajectory traj;
    traj.final_state = CMatrix::Zero(n, n);
    return traj;
  }
  LindbladRhs rhs(spec, keep);
  const auto k = static_cast<Eigen::Index>(keep.size());
  CMatrix k1(k, k), k2(k, k), k3(k, k), k4(k, k), tmp(k, k);
  auto step = [&](double, double h, CMatrix& y) {
    rhs(y, k1);
    tmp = y + (0.5 * h) * k1;
    rhs(tmp, k2);
    tmp = y + (0.5 * h) * k2;
    rhs(tmp, k3);
    tmp = y + h * k3;
    rhs(tmp, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  auto small = drive<CMatrix>(restrict(x0, keep), t_final, options, step);
  DensityTrajectory traj;
  traj.times = std::move(small.times);
  traj.states.reserve(small.states.size());
  for (const auto& s : small.states) traj.states.push_back(embed(s, keep, n));
  traj.final_state = embed(small.final_state, keep, n);
  return traj;
}

void check_state(const DensityMatrix& rho, double t, double trace0, const LindbladOptions& options) {
  const double trace_drift = std::abs(rho.trace() - Complex{trace0, 0.0});
  if (trace_drift > options.trace_tolerance) {
    std::ostringstream os;
    os << "trace drift " << trace_drift << " at t = " << t;
    throw NumericalError(os.str());
  }
  const double lam = min_eigenvalue(rho);
  if (lam < -options.positivity_tolerance) {
    std::ostringstream os;
    os << "negative eigenvalue " << lam << " at t = " << t;
    throw NumericalError(os.str());
  }
}

}  // namespace

VectorTrajectory integrate(const VectorRhs& rhs, const CVector& initial, double t_final,
                           const IntegrationOptions& options) {
  const Eigen::Index n = initial.size();
  CVector k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto step = [&](double t, double h, CVector& y) {
    rhs(t, y, k1);
    tmp = y + (0.5 * h) * k1;
    rhs(t + 0.5 * h, tmp, k2);
    tmp = y + (0.5 * h) * k2;
    rhs(t + 0.5 * h, tmp, k3);
    tmp = y + h * k3;
    rhs(t + h, tmp, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  return drive<CVector>(initial, t_final, options, step);
}

VectorTrajectory integrate_linear(const LinearSystem& system, const CVector& initial, double t_final,
                                  const IntegrationOptions& options) {
  if (system.generator.rows() != system.generator.cols() || system.generator.rows() != initial.size()) {
    throw InvalidArgument("generator shape does not match the initial state");
  }
  VectorRhs rhs;
  if (system.source) {
    rhs = [&system](double t, const CVector& y, CVector& out) {
      out.noalias() = system.generator * y;
      out += system.source(t);
    };
  } else {
    rhs = [&system](double, const CVector& y, CVector& out) { out.noalias() = system.generator * y; };
  }
  return integrate(rhs, initial, t_final, options);
}

void LindbladSpec::validate() const {
  const Eigen::Index n = hamiltonian.rows();
  if (hamiltonian.cols() != n) throw InvalidArgument("Hamiltonian must be square");
  if (hermiticity_error(hamiltonian) > 1e-12) throw InvalidArgument("Hamiltonian must be Hermitian");
  for (const auto& jump : jumps) {
    if (jump.op.rows() != n || jump.op.cols() != n) throw InvalidArgument("jump operator shape mismatch");
    if (!(jump.rate >= 0.0)) throw InvalidArgument("jump rates must be >= 0");
  }
}

DensityTrajectory integrate_lindblad(const LindbladSpec& spec, const DensityMatrix& rho0, double t_final,
                                     const LindbladOptions& options) {
  spec.validate();
  if (rho0.rows() != spec.dimension() || rho0.cols() != spec.dimension()) {
    throw InvalidArgument("rho0 shape does not match the Hamiltonian");
  }
  if (hermiticity_error(rho0) > 1e-10) throw InvalidArgument("rho0 must be Hermitian");
  if (std::abs(rho0.trace() - Complex{1.0, 0.0}) > 1e-10) throw InvalidArgument("rho0 must have unit trace");
  if (min_eigenvalue(rho0) < -1e-10) throw InvalidArgument("rho0 must be positive semidefinite");

  auto traj = propagate_restricted(spec, rho0, t_final, options);
  if (options.check_physicality) {
    for (std::size_t i = 0; i < traj.states.size(); ++i) check_state(traj.states[i], traj.times[i], 1.0, options);
    check_state(traj.final_state, t_final, 1.0, options);
  }
  return traj;
}

DensityTrajectory propagate_operator(const LindbladSpec& spec, const CMatrix& x0, double t_final,
                                     const IntegrationOptions& options) {
  spec.validate();
  if (x0.rows() != spec.dimension() || x0.cols() != spec.dimension()) {
    throw InvalidArgument("initial operator shape does not match the Hamiltonian");
  }
  return propagate_restricted(spec, x0, t_final, options);
}

double hermiticity_error(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix& rho) {
  const CMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double purity(const DensityMatrix& rho) { return std::real((rho * rho).trace()); }

}  // namespace cphase::ode
