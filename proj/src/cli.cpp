#include "cphase/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cphase/core_model.hpp"
#include "cphase/five_level.hpp"
#include "cphase/lossless_v.hpp"
#include "cphase/lossy_v.hpp"
#include "cphase/multi_atom.hpp"
#include "cphase/number_theory.hpp"
#include "cphase/optimizer.hpp"
#include "cphase/two_level.hpp"

namespace cphase::cli {
namespace {

using nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
  std::string scheme = "v";
  std::string format = "csv";
  std::string output;
  double dt = ode::kDefaultStep;
  bool dt_given = false;
  double branching = 0.5;
  bool conditional = false;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  int n_atoms = 1;

  // fidelity
  double delta = 0.0;
  double gamma = 0.0;
  double omega = 0.0;
  double gT = 0.0;
  std::size_t mc_samples = 0;

  // scan / optimize: plain numbers or lo:hi:steps
  std::string gT_axis;
  std::string delta_axis = "0";
  std::string omega_axis = "0";
  std::string gamma_axis = "0";
  bool no_refine = false;
  double min_step = 1e-4;

  // figure
  std::string figure;
  std::string gamma_grid;
  std::string omega_grid;
  std::string value_list;
  int gT_steps = 0;
  int delta_steps = 0;

  // number theory
  std::int64_t surd = 0;
  double x = 0.0;
  bool x_given = false;
  int count = 5;
  int max_n = 10;
  std::string rank = "residual";
};

double round15(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_number(v));
}

void emit(const Table& table, const json& meta, const Options& o, std::ostream& out) {
  std::ostringstream buf;
  if (o.format == "json") {
    write_json(table, meta.dump(), buf);
  } else {
    write_csv(table, buf);
  }
  if (o.output.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file " + o.output);
  f << buf.str();
}

json base_meta(const std::string& sub, const Options& o) {
  return json{{"subcommand", sub}, {"scheme", o.scheme}, {"format", o.format},
              {"dt", o.dt},        {"seed", o.seed},     {"g", 1.0}};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidArgument("cannot parse list entry '" + item + "'");
    v.push_back(d);
  }
  if (v.empty()) throw InvalidArgument("empty value list");
  return v;
}

double parse_number(const std::string& name, const std::string& text) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InvalidArgument(name + ": cannot parse '" + text + "'");
  return d;
}

SystemParams fidelity_params(const Options& o) {
  SystemParams p;
  p.delta = o.delta;
  p.gamma = o.gamma;
  p.omega_rabi = o.omega;
  p.n_atoms = o.n_atoms;
  p.t_final = o.gT;
  p.validate();
  return p;
}

opt::Model resolve_model(const Options& o, bool lossy) {
  if (o.scheme == "v") return lossy ? opt::Model::v_lossy : opt::Model::v_lossless;
  return opt::parse_model(o.scheme);
}

std::vector<double> report_row(const FidelityReport& r, bool conditional) {
  return {conditional ? r.f_cond : r.f_uncond,
          r.f_uncond,
          r.f_cond,
          r.phi1,
          r.phi2,
          r.nonlinear_phase.value_or(kNaN),
          r.loss_prob,
          r.prob_g1,
          r.prob_g2,
          r.flagged ? 1.0 : 0.0};
}

const std::vector<std::string> kReportHeader{"F",        "f_uncond",  "f_cond",  "phi1",    "phi2",
                                             "nonlinear_phase", "loss_prob", "prob_g1", "prob_g2", "flagged"};

void cmd_fidelity(const Options& o, std::ostream& out, std::ostream& err) {
  SystemParams p = fidelity_params(o);
  Table t;
  t.header = kReportHeader;
  FidelityReport rep;
  std::vector<double> extra;
  if (o.scheme == "v" || o.scheme == "v_lossy") {
    if (p.omega_rabi != 0.0) throw InvalidArgument("scheme v has no drive; use --scheme five_level");
    if (p.n_atoms != 1) throw InvalidArgument("scheme v is single-atom; use --scheme two_atom");
    const bool lossless = o.scheme == "v" && p.gamma == 0.0;
    if (lossless) {
      const auto amps = lossless::closed_form_amplitudes(p, p.t_final);
      rep = lossless::gate_fidelity_lossless(amps);
      if (o.mc_samples > 0) {
        const auto mc = lossless::monte_carlo_fidelity(amps, o.mc_samples, o.seed);
        t.header.insert(t.header.end(), {"mc_mean", "mc_stderr"});
        extra = {mc.mean, mc.std_error};
      }
    } else {
      rep = lossy::gate_fidelity_lossy(p, o.dt);
    }
  } else if (o.scheme == "two_atom") {
    if (p.n_atoms != 1 && p.n_atoms != 2) throw InvalidArgument("scheme two_atom fixes n_atoms = 2");
    p.n_atoms = 2;
    rep = multi::two_atom_gate_fidelity(p, o.dt);
  } else if (o.scheme == "five_level") {
    five::FiveLevelOptions fo;
    fo.dt = o.dt;
    fo.branching = o.branching;
    const auto r = five::five_level_master_fidelity(p, fo);
    rep = r.report;
    t.header.insert(t.header.end(), {"A", "B", "C", "D"});
    extra = {r.terms.A, r.terms.B, r.terms.C, r.terms.D};
  } else if (o.scheme == "two_level") {
    rep = twolevel::two_level_gate_fidelity(p);
  } else {
    throw InvalidArgument("unknown scheme '" + o.scheme + "'");
  }
  if (o.mc_samples > 0 && extra.empty()) {
    throw InvalidArgument("--mc-samples applies to the lossless V scheme only");
  }
  if (rep.flagged) err << "warning: ground amplitude below phase floor; nonlinear phase undefined\n";
  auto row = report_row(rep, o.conditional);
  row.insert(row.end(), extra.begin(), extra.end());
  t.rows.push_back(row);

  json meta = base_meta("fidelity", o);
  meta["params"] = {{"delta", p.delta},          {"gamma", p.gamma}, {"omega", p.omega_rabi},
                    {"n_atoms", p.n_atoms},      {"gT", p.t_final},  {"conditional", o.conditional},
                    {"branching", o.branching}, {"mc_samples", o.mc_samples}};
  emit(t, meta, o, out);
}

struct AxisSetup {
  std::vector<opt::Axis> axes;
  opt::ObjectiveConfig config;
};

AxisSetup build_axes(const Options& o) {
  AxisSetup s;
  s.config.dt = o.dt;
  s.config.branching = o.branching;
  s.config.conditional = o.conditional;
  s.config.base.n_atoms = o.n_atoms;
  bool lossy = false;
  const std::vector<std::pair<std::string, std::string>> specs{
      {"gT", o.gT_axis}, {"delta", o.delta_axis}, {"omega", o.omega_axis}, {"gamma", o.gamma_axis}};
  for (const auto& [name, text] : specs) {
    if (text.find(':') != std::string::npos) {
      s.axes.push_back(opt::parse_axis(name, text));
      if (name == "gamma" && s.axes.back().hi > 0.0) lossy = true;
      continue;
    }
    const double v = parse_number(name, text);
    if (name == "gT") s.config.base.t_final = v;
    if (name == "delta") s.config.base.delta = v;
    if (name == "omega") s.config.base.omega_rabi = v;
    if (name == "gamma") {
      s.config.base.gamma = v;
      lossy = lossy || v > 0.0;
    }
  }
  if (s.axes.empty()) throw InvalidArgument("give at least one axis as lo:hi:steps");
  s.config.model = resolve_model(o, lossy);
  s.config.base.validate();
  return s;
}

std::vector<std::string> axis_names(const std::vector<opt::Axis>& axes) {
  std::vector<std::string> n;
  for (const auto& a : axes) n.push_back(a.name);
  return n;
}

json axes_meta(const std::vector<opt::Axis>& axes) {
  json j = json::array();
  for (const auto& a : axes) j.push_back({{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"steps", a.steps}});
  return j;
}

void cmd_scan(const Options& o, std::ostream& out) {
  const AxisSetup s = build_axes(o);
  const auto names = axis_names(s.axes);
  const auto table = opt::grid_scan(opt::make_objective(s.config, names), s.axes, {o.threads});
  Table t;
  t.header = names;
  t.header.push_back("F");
  t.rows.reserve(table.values.size());
  for (std::size_t r = 0; r < table.values.size(); ++r) {
    auto row = table.coords[r];
    row.push_back(table.values[r]);
    t.rows.push_back(std::move(row));
  }
  json meta = base_meta("scan", o);
  meta["axes"] = axes_meta(s.axes);
  meta["model"] = std::string(opt::to_string(s.config.model));
  meta["conditional"] = o.conditional;
  emit(t, meta, o, out);
}

void cmd_optimize(const Options& o, std::ostream& out) {
  const AxisSetup s = build_axes(o);
  const auto names = axis_names(s.axes);
  opt::RefineOptions ro;
  ro.min_step = o.min_step;
  const auto best = opt::optimize(opt::make_objective(s.config, names), s.axes, {o.threads}, ro, !o.no_refine);
  Table t;
  t.header = names;
  t.header.push_back("F");
  for (const auto& n : names) t.header.push_back("hit_" + n);
  t.header.push_back("evaluations");
  auto row = best.coords;
  row.push_back(best.value);
  for (bool b : best.hit_boundary) row.push_back(b ? 1.0 : 0.0);
  row.push_back(static_cast<double>(best.evaluations));
  t.rows.push_back(row);
  json meta = base_meta("optimize", o);
  meta["axes"] = axes_meta(s.axes);
  meta["model"] = std::string(opt::to_string(s.config.model));
  meta["refine"] = !o.no_refine;
  emit(t, meta, o, out);
}

opt::Axis grid_or(const std::string& name, const std::string& text, const std::string& fallback) {
  return opt::parse_axis(name, text.empty() ? fallback : text);
}

void cmd_figure(const Options& o, std::ostream& out) {
  Table t;
  json meta = base_meta("figure", o);
  meta["figure"] = o.figure;
  const int gT_steps_v = o.gT_steps > 0 ? o.gT_steps : 401;
  const int delta_steps_v = o.delta_steps > 0 ? o.delta_steps : 201;

  if (o.figure == "fig2") {
    opt::ObjectiveConfig c;
    const std::vector<opt::Axis> axes{{"gT", 0.0, 20.0, gT_steps_v}, {"delta", 0.0, 2.0, delta_steps_v}};
    const auto table = opt::grid_scan(opt::make_objective(c, {"gT", "delta"}), axes, {o.threads});
    t.header = {"gT", "delta", "F"};
    for (std::size_t r = 0; r < table.values.size(); ++r) {
      t.rows.push_back({table.coords[r][0], table.coords[r][1], table.values[r]});
    }
    meta["axes"] = axes_meta(axes);
  } else if (o.figure == "fig3") {
    const opt::Axis g = grid_or("gamma", o.gamma_grid, "0:0.155:32");
    t.header = {"gamma", "F_uncond", "F_cond", "gT", "delta"};
    for (const auto& pt : lossy::figure3_curve(g.values(), lossy::default_regimes(), o.dt)) {
      t.rows.push_back({pt.gamma, pt.f_uncond, pt.f_cond, pt.gT, pt.delta});
    }
    meta["gamma_grid"] = axes_meta({g});
  } else if (o.figure == "fig4") {
    const opt::Axis g = grid_or("gamma", o.gamma_grid, "0.005:0.1:20");
    const std::vector<opt::Axis> axes{{"gT", 0.0, 20.0, o.gT_steps > 0 ? o.gT_steps : 201},
                                      {"delta", 0.0, 2.0, o.delta_steps > 0 ? o.delta_steps : 41}};
    opt::ObjectiveConfig single;
    single.model = opt::Model::v_lossy;
    single.dt = o.dt;
    opt::ObjectiveConfig pair = single;
    pair.model = opt::Model::two_atom;
    const auto one = opt::optimize_vs_gamma(single, g.values(), axes, {o.threads});
    const auto two = opt::optimize_vs_gamma(pair, g.values(), axes, {o.threads});
    t.header = {"gamma", "F_uncond", "F_cond", "F_two_atom", "gT", "delta", "gT_two_atom", "delta_two_atom"};
    for (std::size_t i = 0; i < one.size(); ++i) {
      SystemParams p;
      p.gamma = one[i].gamma;
      p.t_final = one[i].point.coords[0];
      p.delta = one[i].point.coords[1];
      const auto rep = lossy::gate_fidelity_lossy(p, o.dt);
      t.rows.push_back({one[i].gamma, one[i].point.value, rep.f_cond, two[i].point.value, one[i].point.coords[0],
                        one[i].point.coords[1], two[i].point.coords[0], two[i].point.coords[1]});
    }
    meta["axes"] = axes_meta(axes);
  } else if (o.figure == "fig6" || o.figure == "fig7") {
    const double dt = o.dt_given ? o.dt : 2e-3;
    meta["dt"] = dt;
    const std::vector<opt::Axis> axes{{"gT", 0.0, 30.0, o.gT_steps > 0 ? o.gT_steps : 301},
                                      {"delta", 0.0, 10.0, o.delta_steps > 0 ? o.delta_steps : 11}};
    opt::ObjectiveConfig c;
    c.model = opt::Model::five_level;
    c.dt = dt;
    c.branching = o.branching;
    std::vector<double> gammas, omegas;
    if (o.figure == "fig6") {
      gammas = grid_or("gamma", o.gamma_grid, "0.02:0.16:8").values();
      omegas = parse_list(o.value_list.empty() ? "0,0.4,0.8,1.2" : o.value_list);
      t.header = {"gamma", "omega", "F", "gT", "delta", "hit_gT", "hit_delta"};
    } else {
      omegas = grid_or("omega", o.omega_grid, "0:1.6:9").values();
      gammas = parse_list(o.value_list.empty() ? "0.05,0.1,0.15" : o.value_list);
      t.header = {"omega", "gamma", "F", "gT", "delta", "hit_gT", "hit_delta"};
    }
    for (double gam : gammas) {
      for (double om : omegas) {
        c.base.gamma = gam;
        c.base.omega_rabi = om;
        const auto best = opt::optimize(opt::make_objective(c, {"gT", "delta"}), axes, {o.threads}, {}, false);
        const double a = o.figure == "fig6" ? gam : om;
        const double b = o.figure == "fig6" ? om : gam;
        t.rows.push_back({a, b, best.value, best.coords[0], best.coords[1], best.hit_boundary[0] ? 1.0 : 0.0,
                          best.hit_boundary[1] ? 1.0 : 0.0});
      }
    }
    if (o.figure == "fig6") {
      std::stable_sort(t.rows.begin(), t.rows.end(), [](const auto& x, const auto& y) { return x[1] < y[1]; });
    } else {
      std::stable_sort(t.rows.begin(), t.rows.end(), [](const auto& x, const auto& y) { return x[1] < y[1]; });
    }
    meta["axes"] = axes_meta(axes);
  } else {
    throw InvalidArgument("unknown figure id '" + o.figure + "' (expected fig2, fig3, fig4, fig6 or fig7)");
  }
  emit(t, meta, o, out);
}

void cmd_convergents(const Options& o, std::ostream& out) {
  std::vector<numtheory::Convergent> cs;
  json meta = base_meta("convergents", o);
  if (o.x_given && o.surd != 0) throw InvalidArgument("give either --surd or --x");
  if (o.x_given) {
    cs = numtheory::convergents_of(o.x, o.count);
    meta["x"] = o.x;
  } else {
    cs = numtheory::convergents_of_surd(o.surd == 0 ? 2 : o.surd, o.count);
    meta["surd"] = o.surd == 0 ? 2 : o.surd;
  }
  meta["count"] = o.count;
  Table t;
  t.header = {"p", "q", "value", "error"};
  for (const auto& c : cs) {
    t.rows.push_back({static_cast<double>(c.p), static_cast<double>(c.q),
                      static_cast<double>(c.p) / static_cast<double>(c.q), c.error});
  }
  emit(t, meta, o, out);
}

void cmd_triples(const Options& o, std::ostream& out) {
  auto ts = numtheory::resonance_triples(o.max_n);
  if (o.rank == "quality") {
    ts = numtheory::rank_by_quality(std::move(ts));
  } else if (o.rank != "residual") {
    throw InvalidArgument("--rank must be residual or quality");
  }
  Table t;
  t.header = {"n", "m", "q", "residual", "delta_over_g", "gT"};
  for (const auto& x : ts) {
    t.rows.push_back({static_cast<double>(x.n), static_cast<double>(x.m), static_cast<double>(x.q),
                      static_cast<double>(x.residual), x.predicted_delta_over_g, x.predicted_gT});
  }
  json meta = base_meta("triples", o);
  meta["max_n"] = o.max_n;
  meta["rank"] = o.rank;
  emit(t, meta, o, out);
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("-o,--output", o.output, "Write to this file instead of stdout");
}

void add_model_options(CLI::App* sub, Options& o) {
  sub->add_option("--scheme", o.scheme, "v, v_lossy, two_atom, five_level or two_level")
      ->check(CLI::IsMember({"v", "v_lossy", "two_atom", "five_level", "two_level"}));
  sub->add_option("--n-atoms", o.n_atoms, "Number of atoms")->check(CLI::PositiveNumber);
  sub->add_option("--dt", o.dt, "RK4 step in units of 1/g")->check(CLI::PositiveNumber);
  sub->add_option("--branching", o.branching, "Five-level fraction of decay back to g")->check(CLI::Range(0.0, 1.0));
  sub->add_flag("--conditional", o.conditional, "Report the no-jump (conditional) fidelity as F");
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, const std::string& meta_json, std::ostream& out) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double v = round15(row[i]);
      if (std::isfinite(v)) {
        r[table.header[i]] = v;
      } else {
        r[table.header[i]] = nullptr;
      }
    }
    rows.push_back(std::move(r));
  }
  json doc;
  doc["meta"] = json::parse(meta_json);
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Photon-photon controlled-phase gate simulator"};
  app.name("cphase");
  app.require_subcommand(1);

  auto* fid = app.add_subcommand("fidelity", "Gate fidelity at one parameter point");
  add_model_options(fid, o);
  add_output_options(fid, o);
  fid->add_option("--delta", o.delta, "Detuning δ/g");
  fid->add_option("--gamma", o.gamma, "Decay rate γ/g")->check(CLI::NonNegativeNumber);
  fid->add_option("--omega", o.omega, "Drive Ω/g (five_level)")->check(CLI::NonNegativeNumber);
  fid->add_option("--gT", o.gT, "Interaction time gT")->check(CLI::NonNegativeNumber);
  fid->add_option("--mc-samples", o.mc_samples, "Also estimate the state average by Monte Carlo");
  fid->add_option("--seed", o.seed, "Monte Carlo seed");

  auto* scan = app.add_subcommand("scan", "Grid scan; axes as lo:hi:steps, fixed values as numbers");
  auto* optimize = app.add_subcommand("optimize", "Grid scan followed by coordinate-descent refinement");
  for (auto* sub : {scan, optimize}) {
    add_model_options(sub, o);
    add_output_options(sub, o);
    sub->add_option("--gT", o.gT_axis, "gT axis or value")->required();
    sub->add_option("--delta", o.delta_axis, "δ/g axis or value");
    sub->add_option("--omega", o.omega_axis, "Ω/g axis or value");
    sub->add_option("--gamma", o.gamma_axis, "γ/g axis or value");
    sub->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  }
  optimize->add_flag("--no-refine", o.no_refine, "Report the best grid point only");
  optimize->add_option("--min-step", o.min_step, "Refinement stops below this step")->check(CLI::PositiveNumber);

  auto* fig = app.add_subcommand("figure", "Figure-ready data: fig2, fig3, fig4, fig6, fig7");
  add_output_options(fig, o);
  fig->add_option("id", o.figure, "Figure id")->required();
  fig->add_option("--dt", o.dt, "RK4 step (five-level figures default to 0.002)")->check(CLI::PositiveNumber);
  fig->add_option("--branching", o.branching, "Five-level fraction of decay back to g")->check(CLI::Range(0.0, 1.0));
  fig->add_option("--gamma-grid", o.gamma_grid, "γ/g grid lo:hi:steps (fig3, fig4, fig6)");
  fig->add_option("--omega-grid", o.omega_grid, "Ω/g grid lo:hi:steps (fig7)");
  fig->add_option("--values", o.value_list, "Comma list: Ω/g values (fig6) or γ/g values (fig7)");
  fig->add_option("--gT-steps", o.gT_steps, "Points along gT")->check(CLI::PositiveNumber);
  fig->add_option("--delta-steps", o.delta_steps, "Points along δ/g")->check(CLI::PositiveNumber);
  fig->add_option("--threads", o.threads, "Worker threads (0: all cores)");

  auto* conv = app.add_subcommand("convergents", "Continued-fraction convergents");
  add_output_options(conv, o);
  conv->add_option("--surd", o.surd, "Radicand D of √D (default 2)");
  conv->add_option("--x", o.x, "Arbitrary real x > 1")->each([&](const std::string&) { o.x_given = true; });
  conv->add_option("--count", o.count, "Number of convergents")->check(CLI::PositiveNumber);

  auto* tri = app.add_subcommand("triples", "Near-solutions of 2n² = m² + q²");
  add_output_options(tri, o);
  tri->add_option("--max-n", o.max_n, "Largest n")->check(CLI::Range(2, 100000));
  tri->add_option("--rank", o.rank, "residual or quality")->check(CLI::IsMember({"residual", "quality"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (auto* sub : {fid, scan, optimize, fig}) {
      if (sub->parsed() && sub->get_option_no_throw("--dt") && sub->count("--dt") > 0) o.dt_given = true;
    }
    if (fid->parsed()) cmd_fidelity(o, out, err);
    if (scan->parsed()) cmd_scan(o, out);
    if (optimize->parsed()) cmd_optimize(o, out);
    if (fig->parsed()) cmd_figure(o, out);
    if (conv->parsed()) cmd_convergents(o, out);
    if (tri->parsed()) cmd_triples(o, out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const numtheory::OverflowError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kSuccess;
}

}  // namespace cphase::cli
