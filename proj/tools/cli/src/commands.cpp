#include "strebel_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <CLI11.hpp>

#include "strebel/geometry.hpp"
#include "strebel_cli/report.hpp"
#include "strebel_cli/svg.hpp"

namespace strebel::cli {

using nlohmann::json;

namespace {

constexpr double kFormulaTol = 1e-6;
constexpr double kClosedFormTol = 1e-8;
constexpr double kModulusTol = 1e-10;
constexpr double kLevelFidelity = 1e-10;
constexpr double kCriticalMargin = 1e-6;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void warn_if_critical(const CriticalSet& cs, double level, bool allow, std::ostream& err) {
  if (!allow && critical_margin(cs, level) < kCriticalMargin)
    err << "warning: level " << number(level) << " is within relative " << kCriticalMargin
        << " of a critical value; tracing will fail\n";
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  return f;
}

ContourSet oracle_contours(const QuadDifferential& qd, double level, int resolution) {
  Box box = Box::around(qd);
  for (int attempt = 0;; ++attempt) {
    try {
      return marching_squares_oracle(qd, level, box, resolution);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoxTooSmall || attempt >= 4) throw;
      box = box.scaled(2.0);
    }
  }
}

double level_deviation(const QuadDifferential& qd, const ClosedCurve& c) {
  const double target = std::log(c.level);
  double worst = 0.0;
  for (const auto z : c.points) worst = std::max(worst, std::abs(qd.log_modulus(z) - target));
  return worst;
}

}  // namespace

json analyze(const Config& cfg, const AnalyzeFlags& flags, std::ostream& err) {
  Stopwatch total;
  const auto& qd = cfg.qd;
  json report;
  json poles = json::array();
  for (const auto p : qd.poles()) poles.push_back(to_json(p));
  report["poles"] = poles;
  report["weights"] = std::vector<double>(qd.weights().begin(), qd.weights().end());
  report["alpha"] = qd.alpha();

  Stopwatch crit;
  const auto cs = critical_set(qd);
  report["critical_set"] = to_json(cs);
  report["connectivity"] = to_json(is_critical_graph_connected(cs));
  json timings{{"critical_set_s", crit.seconds()}};
  if (flags.graph) {
    Stopwatch g;
    const auto graph = critical_graph(qd, cfg.step);
    report["critical_graph"] = {{"component_count", graph.component_count}, {"edges", graph.edges.size()}};
    timings["critical_graph_s"] = g.seconds();
  }

  const auto& levels = flags.levels.empty() ? cfg.levels : flags.levels;
  json per_level = json::array();
  json level_times = json::array();
  for (const double level : levels) {
    Stopwatch lt;
    warn_if_critical(cs, level, flags.allow_critical, err);
    const auto comps = find_components(qd, level, cfg.step);
    json arr = json::array();
    for (const auto& c : comps) arr.push_back(component_summary(qd, c));
    per_level.push_back({{"level", level}, {"component_count", comps.size()}, {"components", arr}});
    level_times.push_back(lt.seconds());
  }
  report["levels"] = per_level;
  if (flags.timings) {
    timings["levels_s"] = level_times;
    timings["total_s"] = total.seconds();
    report["timings"] = timings;
  }
  return report;
}

json trace(const Config& cfg, const TraceFlags& flags, std::ostream& err) {
  const auto& qd = cfg.qd;
  const auto cs = critical_set(qd);
  warn_if_critical(cs, flags.level, flags.allow_critical, err);
  const auto comps = find_components(qd, flags.level, cfg.step);
  std::optional<CriticalGraph> graph;
  if (flags.graph) graph = critical_graph(qd, cfg.step);

  if (flags.svg) open_output(*flags.svg) << render_svg(qd, cs, comps, graph ? &*graph : nullptr);
  if (flags.csv) {
    auto f = open_output(*flags.csv);
    write_trace_csv(f, comps);
  }
  json arr = json::array();
  for (const auto& c : comps) arr.push_back(component_summary(qd, c));
  json report{{"level", flags.level}, {"component_count", comps.size()}, {"components", arr}};
  if (graph) report["critical_graph"] = {{"component_count", graph->component_count}, {"edges", graph->edges.size()}};
  return report;
}

json fingerprint(const Config& cfg, const FingerprintFlags& flags) {
  Stopwatch sw;
  const auto& qd = cfg.qd;
  const auto comps = find_components(qd, flags.level, cfg.step);
  const ClosedCurve* chosen = nullptr;
  if (flags.component) {
    const auto sig = parse_signature(*flags.component);
    for (const auto& c : comps)
      if (c.enclosed_poles == sig) chosen = &c;
  } else if (comps.size() == 1) {
    chosen = &comps.front();
  }
  if (!chosen) {
    std::string avail;
    for (const auto& c : comps) avail += " " + signature_string(c.enclosed_poles);
    throw Error(ErrorKind::InvalidArgument, "select a component with --component; available:" + avail);
  }

  const auto r = analyze_component(qd, *chosen, cfg.analysis);
  if (flags.csv) {
    auto f = open_output(*flags.csv);
    write_fingerprint_csv(f, r.fingerprint);
  }
  json report{{"level", flags.level}, {"component", component_summary(qd, *chosen)}, {"analysis", to_json(r)}};
  if (!r.ring.empty()) {
    json passing = json::array();
    for (const auto& rr : r.ring)
      if (rr.residual <= kFormulaTol) passing.push_back(to_string(rr.variant));
    report["passing_variants"] = passing;
  }
  if (flags.timings) report["timings"] = {{"total_s", sw.seconds()}};
  return report;
}

json verify(const Config& cfg, bool timings) {
  Stopwatch sw;
  const auto& qd = cfg.qd;
  json failures = json::array();
  std::size_t checks = 0;
  const auto check = [&](const std::string& name, bool ok, json context) {
    ++checks;
    if (!ok) {
      context["check"] = name;
      failures.push_back(std::move(context));
    }
  };
  const auto measured = [&](const std::string& name, double value, double bound, json context) {
    context["value"] = value;
    context["bound"] = bound;
    check(name, value <= bound, std::move(context));
  };

  const auto cs = critical_set(qd);
  const auto conn = is_critical_graph_connected(cs);
  if (qd.size() >= 2) {
    const auto graph = critical_graph(qd, cfg.step);
    check("critical_graph_connectivity", conn.connected == (graph.component_count == 1),
          {{"connected", conn.connected}, {"graph_components", graph.component_count}});
    double approach = 0.0;
    for (const auto& e : graph.edges) approach = std::max(approach, e.approach);
    measured("critical_edge_endpoints", approach, 1e-6 * qd.diameter(), json::object());
  }

  for (const double level : cfg.levels) {
    const json at{{"level", level}};
    measured("critical_margin", -critical_margin(cs, level), -kCriticalMargin, at);
    std::vector<ClosedCurve> comps;
    try {
      comps = find_components(qd, level, cfg.step);
    } catch (const Error& e) {
      check("find_components", false, {{"level", level}, {"error", e.what()}});
      continue;
    }
    const auto oracle = oracle_contours(qd, level, 512);
    std::vector<std::vector<std::size_t>> sigs;
    for (const auto& c : comps) sigs.push_back(c.enclosed_poles);
    check("oracle_census", sigs == oracle.signatures,
          {{"level", level}, {"traced", sigs}, {"oracle", oracle.signatures}});

    for (const auto& c : comps) {
      json ctx{{"level", level}, {"signature", c.enclosed_poles}};
      measured("closure_gap", c.closure_gap, cfg.step.closure_gap, ctx);
      measured("level_fidelity", level_deviation(qd, c), kLevelFidelity * std::max(1.0, std::abs(std::log(level))), ctx);
      check("simple_curve", geometry::is_simple(c.points), ctx);
      check("counterclockwise", geometry::signed_area(c.points) > 0.0, ctx);

      ComponentReport r;
      try {
        r = analyze_component(qd, c, cfg.analysis);
      } catch (const Error& e) {
        json fail = ctx;
        fail["error"] = e.what();
        check("analyze_component", false, fail);
        continue;
      }
      const double diam = geometry::diameter(c.points);
      measured("interior_self_test", r.interior_self_test, cfg.analysis.map.self_test_tol * diam, ctx);
      measured("exterior_self_test", r.exterior_self_test, cfg.analysis.map.self_test_tol * diam, ctx);
      check("winding_one", r.fingerprint.winding == 1, ctx);
      check("monotone", r.monotone, ctx);
      measured("unit_modulus", r.modulus_error, kModulusTol, ctx);
      if (r.formula) measured("formula_agreement", r.formula->sup_dist, kFormulaTol, ctx);
      if (r.closed_form) measured("closed_form_agreement", r.closed_form->sup_dist, kClosedFormTol, ctx);
      if (!r.ring.empty()) {
        json residuals = json::object();
        int passing = 0;
        for (const auto& rr : r.ring) {
          residuals[to_string(rr.variant)] = rr.residual;
          passing += rr.residual <= kFormulaTol;
        }
        json fail = ctx;
        fail["residuals"] = residuals;
        check("ring_single_variant", passing == 1, fail);
      }
    }
  }
  json report{{"checks", checks}, {"failures", failures}, {"passed", failures.empty()},
              {"connectivity", conn.connected}};
  if (timings) report["timings"] = {{"total_s", sw.seconds()}};
  return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lemniscate components, conformal welding fingerprints and their closed forms"};
  app.require_subcommand(1);

  std::string config_path;
  AnalyzeFlags af;
  TraceFlags tf;
  FingerprintFlags ff;
  bool no_timings = false;
  std::optional<std::size_t> samples, nodes;

  auto* analyze_cmd = app.add_subcommand("analyze", "critical set, connectivity and component inventory");
  analyze_cmd->add_option("config", config_path, "JSON configuration")->required();
  analyze_cmd->add_option("--level", af.levels, "levels overriding the configuration");
  analyze_cmd->add_flag("--graph", af.graph, "trace the critical graph");
  analyze_cmd->add_flag("--no-timings", no_timings, "omit the timings block");
  analyze_cmd->add_flag("--allow-critical", af.allow_critical, "suppress near-critical level warnings");

  auto* trace_cmd = app.add_subcommand("trace", "trace the components of one level");
  trace_cmd->add_option("config", config_path, "JSON configuration")->required();
  trace_cmd->add_option("--level", tf.level, "level lambda")->required();
  trace_cmd->add_option("--svg", tf.svg, "SVG output path");
  trace_cmd->add_option("--out", tf.csv, "CSV polyline output path");
  trace_cmd->add_flag("--graph", tf.graph, "draw the critical graph");
  trace_cmd->add_flag("--allow-critical", tf.allow_critical, "suppress near-critical level warnings");

  auto* fp_cmd = app.add_subcommand("fingerprint", "fingerprint of one component");
  fp_cmd->add_option("config", config_path, "JSON configuration")->required();
  fp_cmd->add_option("--level", ff.level, "level lambda")->required();
  fp_cmd->add_option("--component", ff.component, "signature, e.g. 0,2");
  fp_cmd->add_option("--out", ff.csv, "CSV output path (theta,arg_k)");
  fp_cmd->add_option("--samples", samples, "fingerprint samples M");
  fp_cmd->add_option("--nodes", nodes, "boundary nodes N (default: chosen by self-test)");
  fp_cmd->add_flag("--no-timings", no_timings, "omit the timings block");

  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite on every configured level");
  verify_cmd->add_option("config", config_path, "JSON configuration")->required();
  verify_cmd->add_option("--samples", samples, "fingerprint samples M");
  verify_cmd->add_option("--nodes", nodes, "boundary nodes N");
  verify_cmd->add_flag("--no-timings", no_timings, "omit the timings block");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    auto cfg = load_config(config_path);
    if (samples) cfg.analysis.samples = *samples;
    if (nodes) cfg.analysis.map.nodes = *nodes;
    if (cfg.analysis.samples < 16) throw Error(ErrorKind::InvalidArgument, "samples must be at least 16");
    for (const double l : {tf.level, ff.level})
      if (l < 0 || !std::isfinite(l)) throw Error(ErrorKind::InvalidArgument, "level must be positive");

    if (*analyze_cmd) {
      for (const double l : af.levels)
        if (!(l > 0)) throw Error(ErrorKind::InvalidArgument, "levels must be positive");
      af.timings = !no_timings;
      out << dump(analyze(cfg, af, err));
    } else if (*trace_cmd) {
      if (!(tf.level > 0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
      out << dump(trace(cfg, tf, err));
    } else if (*fp_cmd) {
      if (!(ff.level > 0)) throw Error(ErrorKind::InvalidArgument, "level must be positive");
      ff.timings = !no_timings;
      out << dump(fingerprint(cfg, ff));
    } else if (*verify_cmd) {
      const auto report = verify(cfg, !no_timings);
      out << dump(report);
      return report["passed"].get<bool>() ? kOk : kInvariantFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_configuration_error(e.kind()) ? kConfigError : kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace strebel::cli
