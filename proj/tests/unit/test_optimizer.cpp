#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "cphase/lossless_v.hpp"
#include "cphase/lossy_v.hpp"
#include "cphase/optimizer.hpp"

using namespace cphase;
using namespace cphase::opt;

namespace {

Objective quadratic(double x0, double y0) {
  Objective o;
  o.axes = {"gT", "delta"};
  o.value = [=](const std::vector<double>& c) {
    return 1.0 - (c[0] - x0) * (c[0] - x0) - 2.0 * (c[1] - y0) * (c[1] - y0);
  };
  return o;
}

}  // namespace

TEST(Axis, ParseAndValues) {
  const auto a = parse_axis("gT", "0:2:5");
  EXPECT_EQ(a.name, "gT");
  EXPECT_EQ(a.steps, 5);
  const auto v = a.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 2.0);
  EXPECT_DOUBLE_EQ(v[2], 1.0);
  EXPECT_DOUBLE_EQ(a.spacing(), 0.5);
  const auto one = parse_axis("delta", "0.7:0.7:1");
  EXPECT_EQ(one.values(), std::vector<double>{0.7});
}

TEST(Axis, RejectsMalformed) {
  for (const char* bad : {"1:2", "a:b:3", "0:1:0", "2:1:3", "0:1:2:3", "0:1:2x", "0:inf:3"}) {
    EXPECT_THROW((void)parse_axis("gT", bad), InvalidArgument) << bad;
  }
}

TEST(Model, NamesRoundTrip) {
  for (auto m : {Model::v_lossless, Model::v_lossy, Model::two_atom, Model::five_level, Model::two_level}) {
    EXPECT_EQ(parse_model(to_string(m)), m);
  }
  EXPECT_THROW((void)parse_model("lambda"), InvalidArgument);
}

TEST(GridScan, RowMajorAndMatchesDirectEvaluation) {
  const auto obj = quadratic(0.3, 0.1);
  const std::vector<Axis> axes{{"gT", 0.0, 1.0, 3}, {"delta", 0.0, 0.5, 2}};
  const auto t = grid_scan(obj, axes, {1});
  ASSERT_EQ(t.values.size(), 6u);
  EXPECT_EQ(t.coords[1], (std::vector<double>{0.0, 0.5}));
  EXPECT_EQ(t.coords[2], (std::vector<double>{0.5, 0.0}));
  for (std::size_t r = 0; r < 6; ++r) EXPECT_EQ(t.values[r], obj.value(t.coords[r]));
  EXPECT_EQ(t.best_index(), 2u);
}

TEST(GridScan, ThreadCountDoesNotChangeResults) {
  ObjectiveConfig c;
  c.model = Model::v_lossy;
  c.base.gamma = 0.02;
  const auto obj = make_objective(c, {"gT", "delta"});
  const std::vector<Axis> axes{{"gT", 0.0, 10.0, 21}, {"delta", 0.0, 1.0, 5}};
  const auto a = grid_scan(obj, axes, {1});
  const auto b = grid_scan(obj, axes, {3});
  const auto again = grid_scan(obj, axes, {1});
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.values, again.values);
  EXPECT_EQ(a.coords, b.coords);
}

TEST(GridScan, TimeFastPathAgreesWithPointwise) {
  for (auto model : {Model::v_lossless, Model::v_lossy, Model::two_atom, Model::five_level}) {
    ObjectiveConfig c;
    c.model = model;
    if (model != Model::v_lossless) c.base.gamma = 0.05;
    if (model == Model::five_level) c.base.omega_rabi = 0.8;
    const auto fast = make_objective(c, {"delta", "gT"});
    auto slow = fast;
    slow.time_axis.reset();
    const std::vector<Axis> axes{{"delta", 0.0, 1.0, 2}, {"gT", 0.0, 6.0, 4}};
    const auto a = grid_scan(fast, axes);
    const auto b = grid_scan(slow, axes);
    for (std::size_t r = 0; r < a.values.size(); ++r) EXPECT_NEAR(a.values[r], b.values[r], 1e-10) << to_string(model);
  }
}

TEST(GridScan, FailureReportsCoordinates) {
  Objective o;
  o.axes = {"gT"};
  o.value = [](const std::vector<double>& c) -> double {
    if (c[0] > 0.5) throw std::runtime_error("boom");
    return c[0];
  };
  try {
    (void)grid_scan(o, {{"gT", 0.0, 1.0, 5}}, {2});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("gT=0.75"), std::string::npos) << e.what();
  }
}

TEST(GridScan, RejectsMismatchedAxes) {
  const auto obj = quadratic(0.0, 0.0);
  EXPECT_THROW((void)grid_scan(obj, {{"delta", 0, 1, 2}, {"gT", 0, 1, 2}}), InvalidArgument);
  EXPECT_THROW((void)grid_scan(obj, {{"gT", 0, 1, 2}}), InvalidArgument);
  ObjectiveConfig c;
  EXPECT_THROW((void)make_objective(c, {"kappa"}), InvalidArgument);
}

TEST(Refine, FindsQuadraticPeakAndNeverDecreases) {
  const auto obj = quadratic(0.4137, 0.2219);
  const std::vector<Axis> b{{"gT", 0.0, 1.0, 11}, {"delta", 0.0, 1.0, 11}};
  const std::vector<double> start{0.4, 0.2};
  const auto r = refine(obj, start, b);
  EXPECT_NEAR(r.coord("gT"), 0.4137, 2e-4);
  EXPECT_NEAR(r.coord("delta"), 0.2219, 2e-4);
  EXPECT_GE(r.value, obj.value(start));
  EXPECT_FALSE(r.any_boundary());
}

TEST(Refine, IdempotentAtConvergedPoint) {
  const auto obj = quadratic(0.4137, 0.2219);
  const std::vector<Axis> b{{"gT", 0.0, 1.0, 11}, {"delta", 0.0, 1.0, 11}};
  const auto first = refine(obj, {0.4, 0.2}, b);
  RefineOptions o;
  o.initial_step = {1e-4, 1e-4};
  const auto second = refine(obj, first.coords, b, o);
  EXPECT_EQ(second.coords, first.coords);
  EXPECT_EQ(second.value, first.value);
}

TEST(Refine, FlagsBoundaryOptimum) {
  const auto obj = quadratic(2.0, 0.5);
  const std::vector<Axis> b{{"gT", 0.0, 1.0, 11}, {"delta", 0.0, 1.0, 11}};
  const auto r = optimize(obj, b);
  EXPECT_TRUE(r.hit_boundary[0]);
  EXPECT_FALSE(r.hit_boundary[1]);
  EXPECT_DOUBLE_EQ(r.coord("gT"), 1.0);
}

TEST(Refine, RejectsStartOutsideBounds) {
  EXPECT_THROW((void)refine(quadratic(0, 0), {2.0, 0.0}, {{"gT", 0, 1, 2}, {"delta", 0, 1, 2}}), InvalidArgument);
}

TEST(Optimize, ResonantConvergentPeaks) {
  ObjectiveConfig c;
  const auto obj = make_objective(c, {"gT"});
  const auto first = optimize(obj, {{"gT", 5.0, 8.0, 61}});
  EXPECT_NEAR(first.coord("gT"), 6.473, 0.02);
  EXPECT_NEAR(first.value, 0.9714, 5e-4);
  const auto second = optimize(obj, {{"gT", 14.0, 17.0, 61}});
  EXPECT_NEAR(second.coord("gT"), 15.629, 0.02);
  EXPECT_NEAR(second.value, 0.9950, 5e-4);
}

TEST(Optimize, DetunedOperatingPoints) {
  ObjectiveConfig c;
  const auto obj = make_objective(c, {"gT", "delta"});
  const auto hi = optimize(obj, {{"gT", 16.0, 20.0, 81}, {"delta", 1.0, 1.8, 81}});
  EXPECT_NEAR(hi.coord("gT"), 18.007, 0.02);
  EXPECT_NEAR(hi.coord("delta"), 1.3881, 0.02);
  EXPECT_NEAR(hi.value, 0.9968, 1e-3);
  const auto lo = optimize(obj, {{"gT", 7.0, 10.0, 61}, {"delta", 0.4, 1.0, 61}});
  EXPECT_NEAR(lo.coord("gT"), 8.762, 0.02);
  EXPECT_NEAR(lo.coord("delta"), 0.699, 0.02);
  EXPECT_NEAR(lo.value, 0.9849, 1e-3);
}

TEST(Optimize, VersusGammaKeepsGridOrder) {
  ObjectiveConfig c;
  c.model = Model::v_lossy;
  const std::vector<double> gammas{0.01, 0.05, 0.1};
  const auto r = optimize_vs_gamma(c, gammas, {{"gT", 0.0, 10.0, 51}, {"delta", 0.0, 1.0, 6}}, {}, {}, false);
  ASSERT_EQ(r.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r[i].gamma, gammas[i]);
  EXPECT_GT(r[0].point.value, r[1].point.value);
  EXPECT_GT(r[1].point.value, r[2].point.value);
}

TEST(Optimize, ConditionalObjective) {
  ObjectiveConfig c;
  c.model = Model::v_lossy;
  c.base.gamma = 0.05;
  c.base.t_final = 6.473;
  c.conditional = true;
  const auto obj = make_objective(c, {"delta"});
  SystemParams p = c.base;
  EXPECT_DOUBLE_EQ(obj.value({0.0}), lossy::gate_fidelity_lossy(p).f_cond);
}
