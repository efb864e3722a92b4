#include "cphase/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "cphase/five_level.hpp"
#include "cphase/lossless_v.hpp"
#include "cphase/lossy_v.hpp"
#include "cphase/multi_atom.hpp"
#include "cphase/two_level.hpp"

namespace cphase::opt {
namespace {

std::string describe(const std::vector<std::string>& names, const std::vector<double>& coords) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i] << '=' << coords[i];
  return os.str();
}

void set_axis(SystemParams& p, const std::string& name, double v) {
  if (name == "gT") {
    p.t_final = v / p.g;
  } else if (name == "delta") {
    p.delta = v * p.g;
  } else if (name == "omega") {
    p.omega_rabi = v * p.g;
  } else if (name == "gamma") {
    p.gamma = v * p.g;
  } else {
    throw InvalidArgument("unknown axis '" + name + "' (expected gT, delta, omega or gamma)");
  }
}

double pick(const FidelityReport& r, bool conditional) { return conditional ? r.f_cond : r.f_uncond; }

FidelityReport evaluate(const ObjectiveConfig& c, const SystemParams& p) {
  switch (c.model) {
    case Model::v_lossless: return lossless::gate_fidelity_lossless(p);
    case Model::v_lossy: return lossy::gate_fidelity_lossy(p, c.dt);
    case Model::two_atom: return multi::two_atom_gate_fidelity(p, c.dt);
    case Model::five_level: {
      five::FiveLevelOptions o;
      o.dt = c.dt;
      o.branching = c.branching;
      return five::five_level_master_fidelity(p, o).report;
    }
    case Model::two_level: return twolevel::two_level_gate_fidelity(p);
  }
  throw InvalidArgument("unknown model");
}

std::vector<FidelityReport> evaluate_curve(const ObjectiveConfig& c, const SystemParams& p,
                                           const std::vector<double>& times) {
  switch (c.model) {
    case Model::v_lossy: return lossy::gate_fidelity_lossy_curve(p, times, c.dt);
    case Model::two_atom: return multi::two_atom_fidelity_curve(p, times, c.dt);
    case Model::five_level: {
      five::FiveLevelOptions o;
      o.dt = c.dt;
      o.branching = c.branching;
      std::vector<FidelityReport> out;
      for (const auto& r : five::five_level_fidelity_curve(p, times, o)) out.push_back(r.report);
      return out;
    }
    case Model::v_lossless:
    case Model::two_level: {
      std::vector<FidelityReport> out;
      for (double t : times) out.push_back(evaluate(c, p.with_time(t)));
      return out;
    }
  }
  throw InvalidArgument("unknown model");
}

// Runs task(i) for i in [0, n) on a pool; rethrows the failure with the
// lowest index so errors are reproducible.
template <typename Task>
void run_pool(std::size_t n, unsigned threads, Task&& task) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

[[noreturn]] void rethrow_at(const std::vector<std::string>& names, const std::vector<double>& coords) {
  const std::string where = " at (" + describe(names, coords) + ")";
  try {
    throw;
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(e.what() + where);
  } catch (const std::exception& e) {
    throw NumericalError(e.what() + where);
  }
}

std::vector<bool> boundary_flags(const std::vector<double>& coords, const std::vector<Axis>& bounds, double tol) {
  std::vector<bool> flags(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto& b = bounds[i];
    flags[i] = b.hi > b.lo && (coords[i] - b.lo <= tol || b.hi - coords[i] <= tol);
  }
  return flags;
}

}  // namespace

void Axis::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("axis " + name + ": bounds must be finite");
  if (hi < lo) throw InvalidArgument("axis " + name + ": hi must be >= lo");
  if (steps < 1) throw InvalidArgument("axis " + name + ": steps must be >= 1");
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> v(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    v[static_cast<std::size_t>(i)] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  }
  return v;
}

double Axis::spacing() const { return steps > 1 ? (hi - lo) / (steps - 1) : 0.0; }

Axis parse_axis(const std::string& name, const std::string& text) {
  Axis a;
  a.name = name;
  const auto p1 = text.find(':');
  const auto p2 = p1 == std::string::npos ? std::string::npos : text.find(':', p1 + 1);
  if (p2 == std::string::npos || text.find(':', p2 + 1) != std::string::npos) {
    throw InvalidArgument("axis " + name + ": expected lo:hi:steps, got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const std::string lo = text.substr(0, p1), hi = text.substr(p1 + 1, p2 - p1 - 1), st = text.substr(p2 + 1);
    a.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument(lo);
    a.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument(hi);
    a.steps = std::stoi(st, &used);
    if (used != st.size()) throw std::invalid_argument(st);
  } catch (const std::logic_error&) {
    throw InvalidArgument("axis " + name + ": cannot parse '" + text + "'");
  }
  a.validate();
  return a;
}

std::string_view to_string(Model model) {
  switch (model) {
    case Model::v_lossless: return "v";
    case Model::v_lossy: return "v_lossy";
    case Model::two_atom: return "two_atom";
    case Model::five_level: return "five_level";
    case Model::two_level: return "two_level";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  for (auto m : {Model::v_lossless, Model::v_lossy, Model::two_atom, Model::five_level, Model::two_level}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

Objective make_objective(const ObjectiveConfig& config, const std::vector<std::string>& axes) {
  ObjectiveConfig c = config;
  if (c.model == Model::two_atom) c.base.n_atoms = 2;
  SystemParams probe = c.base;
  for (const auto& name : axes) set_axis(probe, name, 0.0);

  Objective obj;
  obj.axes = axes;
  auto params_at = [c, axes](const std::vector<double>& coords) {
    if (coords.size() != axes.size()) throw InvalidArgument("coordinate count does not match axes");
    SystemParams p = c.base;
    for (std::size_t i = 0; i < axes.size(); ++i) set_axis(p, axes[i], coords[i]);
    return p;
  };
  obj.value = [c, params_at](const std::vector<double>& coords) {
    return pick(evaluate(c, params_at(coords)), c.conditional);
  };
  const auto it = std::find(axes.begin(), axes.end(), "gT");
  if (it != axes.end()) {
    obj.time_axis = static_cast<std::size_t>(it - axes.begin());
    obj.along_time = [c, params_at](const std::vector<double>& coords, const std::vector<double>& gts) {
      const SystemParams p = params_at(coords);
      std::vector<double> times;
      times.reserve(gts.size());
      for (double gt : gts) times.push_back(gt / p.g);
      std::vector<double> out;
      for (const auto& r : evaluate_curve(c, p, times)) out.push_back(pick(r, c.conditional));
      return out;
    };
  }
  return obj;
}

std::size_t ScanTable::best_index() const {
  if (values.empty()) throw InvalidArgument("empty scan table");
  // First maximum in row order keeps ties deterministic.
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

ScanTable grid_scan(const Objective& objective, const std::vector<Axis>& axes, const ScanOptions& options) {
  if (axes.size() != objective.axes.size()) throw InvalidArgument("scan axes do not match the objective");
  std::vector<std::vector<double>> grid;
  std::size_t total = 1;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].name != objective.axes[i]) throw InvalidArgument("axis order does not match the objective");
    grid.push_back(axes[i].values());
    total *= grid.back().size();
  }
  std::vector<std::size_t> stride(axes.size(), 1);
  for (std::size_t i = axes.size(); i-- > 1;) stride[i - 1] = stride[i] * grid[i].size();

  ScanTable table;
  table.axes = objective.axes;
  table.coords.resize(total);
  table.values.assign(total, 0.0);
  for (std::size_t r = 0; r < total; ++r) {
    std::vector<double> c(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) c[i] = grid[i][(r / stride[i]) % grid[i].size()];
    table.coords[r] = std::move(c);
  }

  const bool fast = objective.time_axis.has_value() && objective.along_time;
  if (fast) {
    const std::size_t ta = *objective.time_axis;
    const std::size_t nt = grid[ta].size();
    std::vector<double> times = grid[ta];
    // One task per combination of the other axes: rows with time index 0.
    std::vector<std::size_t> heads;
    for (std::size_t r = 0; r < total; ++r) {
      if ((r / stride[ta]) % nt == 0) heads.push_back(r);
    }
    run_pool(heads.size(), options.threads, [&](std::size_t k) {
      const std::size_t head = heads[k];
      std::vector<double> vals;
      try {
        vals = objective.along_time(table.coords[head], times);
      } catch (...) {
        rethrow_at(objective.axes, table.coords[head]);
      }
      for (std::size_t j = 0; j < nt; ++j) table.values[head + j * stride[ta]] = vals[j];
    });
  } else {
    run_pool(total, options.threads, [&](std::size_t r) {
      try {
        table.values[r] = objective.value(table.coords[r]);
      } catch (...) {
        rethrow_at(objective.axes, table.coords[r]);
      }
    });
  }
  return table;
}

bool OptimumPoint::any_boundary() const {
  return std::any_of(hit_boundary.begin(), hit_boundary.end(), [](bool b) { return b; });
}

double OptimumPoint::coord(const std::string& axis) const {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i] == axis) return coords[i];
  }
  throw InvalidArgument("no axis named " + axis);
}

OptimumPoint refine(const Objective& objective, const std::vector<double>& start, const std::vector<Axis>& bounds,
                    const RefineOptions& options) {
  const std::size_t n = objective.axes.size();
  if (start.size() != n || bounds.size() != n) throw InvalidArgument("refine: dimension mismatch");
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) {
    bounds[i].validate();
    if (start[i] < bounds[i].lo || start[i] > bounds[i].hi) {
      throw InvalidArgument("refine: start outside bounds on axis " + bounds[i].name);
    }
    if (i < options.initial_step.size()) {
      step[i] = options.initial_step[i];
    } else {
      const double s = bounds[i].spacing();
      step[i] = s > 0.0 ? s : 0.01 * (bounds[i].hi - bounds[i].lo);
    }
    if (bounds[i].hi == bounds[i].lo) step[i] = 0.0;
  }

  OptimumPoint best;
  best.axes = objective.axes;
  best.coords = start;
  best.value = objective.value(start);
  best.evaluations = 1;
  auto active = [&] {
    return std::any_of(step.begin(), step.end(), [&](double s) { return s >= options.min_step; });
  };
  while (active() && best.evaluations < options.max_evaluations) {
    bool moved = false;
    for (std::size_t i = 0; i < n && best.evaluations < options.max_evaluations; ++i) {
      if (step[i] < options.min_step) continue;
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = best.coords;
        trial[i] = std::clamp(trial[i] + dir * step[i], bounds[i].lo, bounds[i].hi);
        if (trial[i] == best.coords[i]) continue;
        const double v = objective.value(trial);
        ++best.evaluations;
        if (v > best.value) {
          best.value = v;
          best.coords = std::move(trial);
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      for (auto& s : step) s *= 0.5;
    }
  }
  best.hit_boundary = boundary_flags(best.coords, bounds, options.boundary_tolerance);
  return best;
}

OptimumPoint optimize(const Objective& objective, const std::vector<Axis>& axes, const ScanOptions& scan,
                      const RefineOptions& options, bool refine_result) {
  const ScanTable table = grid_scan(objective, axes, scan);
  const std::size_t k = table.best_index();
  if (refine_result) return refine(objective, table.coords[k], axes, options);
  OptimumPoint p;
  p.axes = table.axes;
  p.coords = table.coords[k];
  p.value = table.values[k];
  p.evaluations = table.values.size();
  p.hit_boundary = boundary_flags(p.coords, axes, options.boundary_tolerance);
  return p;
}

std::vector<GammaOptimum> optimize_vs_gamma(const ObjectiveConfig& config, const std::vector<double>& gamma_grid,
                                            const std::vector<Axis>& axes, const ScanOptions& scan,
                                            const RefineOptions& options, bool refine_result) {
  std::vector<std::string> names;
  for (const auto& a : axes) names.push_back(a.name);
  std::vector<GammaOptimum> out;
  for (double gam : gamma_grid) {
    ObjectiveConfig c = config;
    c.base.gamma = gam * c.base.g;
    out.push_back({gam, optimize(make_objective(c, names), axes, scan, options, refine_result)});
  }
  return out;
}

}  // namespace cphase::opt
