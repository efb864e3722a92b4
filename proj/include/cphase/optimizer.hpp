#pragma once

// Grid scans and deterministic local refinement of gate fidelity over
// (gT, δ/g, Ω/g).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cphase/core_model.hpp"
#include "cphase/evolution_engine.hpp"

namespace cphase::opt {

/// Evenly spaced values lo, ..., hi (steps points; a single point sits at lo).
struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;

  void validate() const;
  [[nodiscard]] std::vector<double> values() const;
  [[nodiscard]] double spacing() const;
};

/// Parses "lo:hi:steps".
[[nodiscard]] Axis parse_axis(const std::string& name, const std::string& text);

struct Objective {
  std::vector<std::string> axes;
  std::function<double(const std::vector<double>&)> value;
  /// Optional fast path: values along one axis (sorted) with the remaining
  /// coordinates fixed, typically one integration with checkpoints.
  std::optional<std::size_t> time_axis;
  std::function<std::vector<double>(const std::vector<double>&, const std::vector<double>&)> along_time;
};

enum class Model { v_lossless, v_lossy, two_atom, five_level, two_level };

[[nodiscard]] std::string_view to_string(Model model);
[[nodiscard]] Model parse_model(std::string_view name);

struct ObjectiveConfig {
  Model model = Model::v_lossless;
  /// Fixed parameters; scanned axes override the matching fields.
  SystemParams base;
  bool conditional = false;
  double dt = ode::kDefaultStep;
  /// Five-level decay split (fraction returning to g).
  double branching = 0.5;
};

/// Axis names: "gT", "delta", "omega", "gamma" (all in units of g).
[[nodiscard]] Objective make_objective(const ObjectiveConfig& config, const std::vector<std::string>& axes);

struct ScanTable {
  std::vector<std::string> axes;
  /// Row-major over the axes (first axis slowest).
  std::vector<std::vector<double>> coords;
  std::vector<double> values;

  [[nodiscard]] std::size_t best_index() const;
};

struct ScanOptions {
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

/// Evaluates the full grid. A failing point rethrows with its coordinates
/// in the message (NumericalError for numerical failures).
[[nodiscard]] ScanTable grid_scan(const Objective& objective, const std::vector<Axis>& axes,
                                  const ScanOptions& options = {});

struct OptimumPoint {
  std::vector<std::string> axes;
  std::vector<double> coords;
  double value = 0.0;
  /// Per axis: the optimum sits within boundary_tolerance of lo or hi.
  std::vector<bool> hit_boundary;
  std::size_t evaluations = 0;

  [[nodiscard]] bool any_boundary() const;
  [[nodiscard]] double coord(const std::string& axis) const;
};

struct RefineOptions {
  /// Initial step per axis; defaults to the axis spacing (or 1% of the range).
  std::vector<double> initial_step;
  double min_step = 1e-4;
  double boundary_tolerance = 1e-3;
  std::size_t max_evaluations = 20000;
};

/// Coordinate descent inside the axis bounds: try ±step on each axis in
/// turn, keep strict improvements, halve every step once no move helps, stop
/// when all steps fall below min_step. The value never decreases.
[[nodiscard]] OptimumPoint refine(const Objective& objective, const std::vector<double>& start,
                                  const std::vector<Axis>& bounds, const RefineOptions& options = {});

/// Grid scan, then refinement from the best grid point.
[[nodiscard]] OptimumPoint optimize(const Objective& objective, const std::vector<Axis>& axes,
                                    const ScanOptions& scan = {}, const RefineOptions& options = {},
                                    bool refine_result = true);

struct GammaOptimum {
  double gamma = 0.0;
  OptimumPoint point;
};

/// Optimum at each γ of the grid (config.base.gamma is overridden).
[[nodiscard]] std::vector<GammaOptimum> optimize_vs_gamma(const ObjectiveConfig& config,
                                                          const std::vector<double>& gamma_grid,
                                                          const std::vector<Axis>& axes,
                                                          const ScanOptions& scan = {},
                                                          const RefineOptions& options = {},
                                                          bool refine_result = true);

}  // namespace cphase::opt
