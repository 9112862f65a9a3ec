// Command-line front end: solve / sweep / braess / measures / final.
// Exit codes: 0 ok, 1 usage error, 2 invalid input, 3 solver failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "routeq/io.hpp"
#include "routeq/parallel.hpp"

using namespace routeq;

namespace {

struct RunConfig {
  Tolerances tol;
  long path_cap = 10000;
  int breakpoint_cap = 10000;
  long subset_cap = 20000;
  int threads = 0;
  std::string out_dir = ".";
  std::string format = "text";  // text | csv | svg

  void validate() const {
    if (tol.kkt <= 0 || tol.feas <= 0 || tol.classify <= 0)
      throw ValidationError("tolerances must be positive");
    if (path_cap <= 0 || breakpoint_cap <= 0 || subset_cap <= 0)
      throw ValidationError("caps must be positive");
  }
  bool wants(const std::string& f) const { return format == f; }
};

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& network_path) {
  cmd->add_option("--network", network_path, "network JSON file")->required();
  cmd->add_option("--tol-kkt", cfg.tol.kkt, "solver optimality tolerance");
  cmd->add_option("--tol-feas", cfg.tol.feas, "feasibility tolerance");
  cmd->add_option("--tol-class", cfg.tol.classify, "active/used classification tolerance");
  cmd->add_option("--cap-paths", cfg.path_cap, "path enumeration cap");
  cmd->add_option("--cap-breakpoints", cfg.breakpoint_cap, "breakpoint cap");
  cmd->add_option("--cap-subsets", cfg.subset_cap, "subset scan cap");
  cmd->add_option("--out", cfg.out_dir, "output directory for generated files");
  cmd->add_option("--format", cfg.format, "text, csv, or svg")
      ->check(CLI::IsMember({"text", "csv", "svg"}));
  cmd->add_option("--threads", cfg.threads, "worker thread cap (0 = all cores)");
}

PathCostModel load_model(const std::string& path, const RunConfig& cfg) {
  Network net = parse_network_file(path);
  return build_cost_model(net, enumerate_paths(net, cfg.path_cap));
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::filesystem::path p = std::filesystem::path(cfg.out_dir) / name;
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  std::cout << "wrote " << p.string() << "\n";
  return out;
}

// Accepts "p3" or a 1-based number.
int parse_path_label(const std::string& label, int n) {
  std::string digits = label;
  if (!digits.empty() && (digits[0] == 'p' || digits[0] == 'P')) digits = digits.substr(1);
  try {
    int idx = std::stoi(digits);
    if (idx < 1 || idx > n) throw ValidationError("path label out of range: " + label);
    return idx - 1;
  } catch (const std::invalid_argument&) {
    throw ValidationError("cannot parse path label: " + label);
  }
}

std::vector<ModifiedGame> load_candidates(const std::string& path, const PathCostModel& model) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open candidates file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (j.is_object() && j.contains("candidates")) j = j.at("candidates");
  if (!j.is_array()) throw ParseError(path + ": expected a list of path subsets");
  std::vector<ModifiedGame> out;
  for (const auto& js : j) {
    PathSet removed;
    for (const auto& item : js) {
      if (item.is_string())
        removed.push_back(parse_path_label(item.get<std::string>(), model.path_count()));
      else
        removed.push_back(item.get<int>() - 1);
    }
    out.push_back(make_modified_game(model, removed));
  }
  return out;
}

double default_dmax(const EquilibriumCurve& curve) {
  return curve.last_breakpoint() * 1.25 + 1.0;
}

int cmd_solve(const std::string& network, double demand, const RunConfig& cfg) {
  PathCostModel model = load_model(network, cfg);
  Equilibrium eq = compute_we(model, demand, {}, {}, cfg.tol);
  std::cout << describe(model) << describe(model, eq);
  if (cfg.wants("csv")) {
    auto out = open_out(cfg, "solve.csv");
    out << "D,lambda_we";
    for (int p = 0; p < model.path_count(); ++p) out << ",flow_p" << (p + 1);
    for (int p = 0; p < model.path_count(); ++p) out << ",lambda_p" << (p + 1);
    out << ",potential\n" << demand << "," << eq.min_cost;
    for (int p = 0; p < model.path_count(); ++p) out << "," << eq.flow(p);
    for (int p = 0; p < model.path_count(); ++p) out << "," << eq.costs(p);
    out << "," << eq.potential << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& network, double dmax, const RunConfig& cfg) {
  PathCostModel model = load_model(network, cfg);
  TraceOptions topts;
  topts.max_breakpoints = cfg.breakpoint_cap;
  EquilibriumCurve curve = trace_curve(model, {}, topts, cfg.tol);
  if (dmax <= 0) dmax = default_dmax(curve);
  std::cout << describe(model) << describe(model, curve);
  if (cfg.wants("csv") || cfg.wants("svg")) {
    auto intervals = open_out(cfg, "sweep_intervals.csv");
    emit_interval_csv(curve, intervals);
    auto samples = open_out(cfg, "sweep_curve.csv");
    emit_curve_csv(curve, samples, dmax);
  }
  if (cfg.wants("svg")) {
    std::vector<LabeledSeries> series(1 + model.path_count());
    series[0].label = "lambda_we";
    for (int p = 0; p < model.path_count(); ++p)
      series[p + 1].label = "lambda_p" + std::to_string(p + 1);
    for (int k = 0; k <= 200; ++k) {
      double d = dmax * k / 200;
      series[0].x.push_back(d);
      series[0].y.push_back(curve.lambda_at(d));
      Eigen::VectorXd costs = curve.costs_at(d);
      for (int p = 0; p < model.path_count(); ++p) {
        series[p + 1].x.push_back(d);
        series[p + 1].y.push_back(costs(p));
      }
    }
    std::vector<double> ticks;
    for (const auto& bp : curve.breakpoints) ticks.push_back(bp.demand);
    auto svg = open_out(cfg, "sweep.svg");
    svg << render_svg(series, ticks);
  }
  return 0;
}

int cmd_braess(const std::string& network, double demand, const std::string& candidates_file,
               int scan_max, const RunConfig& cfg) {
  PathCostModel model = load_model(network, cfg);
  TraceOptions topts;
  topts.max_breakpoints = cfg.breakpoint_cap;
  EquilibriumCurve curve = trace_curve(model, {}, topts, cfg.tol);

  std::vector<BraessReport> reports = detect_slope_increase(curve, cfg.tol);
  reports.push_back(detect_flow_losing(model, compute_we(model, demand, {}, {}, cfg.tol), cfg.tol));

  std::vector<ModifiedGame> candidates = default_candidates(model, curve);
  if (!candidates_file.empty()) {
    auto user = load_candidates(candidates_file, model);
    candidates.insert(candidates.begin(), user.begin(), user.end());
  }
  auto ext = extension_gap(model, curve, candidates, demand, cfg.tol);
  reports.insert(reports.end(), ext.begin(), ext.end());

  std::cout << describe(model) << "equilibrium cost at demand " << demand << ": "
            << curve.lambda_at(demand) << "\n"
            << describe(reports);

  if (scan_max > 0) {
    ScanOptions sopts;
    sopts.max_subset_size = scan_max;
    sopts.subset_cap = cfg.subset_cap;
    auto entries = scan_unnecessary(model, demand, sopts, cfg.tol);
    std::cout << "unnecessary subsets at demand " << demand << ":\n" << describe(entries);
  }
  if (cfg.wants("csv")) {
    auto out = open_out(cfg, "braess.csv");
    emit_reports_csv(reports, out);
  }
  return 0;
}

int cmd_measures(const std::string& network, const std::vector<std::string>& remove,
                 double dmax, const RunConfig& cfg) {
  PathCostModel model = load_model(network, cfg);
  PathSet removed;
  for (const auto& label : remove) removed.push_back(parse_path_label(label, model.path_count()));
  ModifiedGame game = make_modified_game(model, removed);
  EquilibriumCurve base = trace_curve(model, {}, {}, cfg.tol);
  if (dmax <= 0) dmax = default_dmax(base);

  PiecewiseLinear lambda = lambda_curve(base);
  PiecewiseLinear lambda_mod = lambda_curve(trace_curve(model, game.removed, {}, cfg.tol));
  std::cout << describe(model) << "removing " << format_path_set(game.removed) << "\n";
  std::cout << "J(" << dmax << ") = " << integrate_difference(lambda_mod, lambda, dmax) << "\n";
  std::cout << "W(" << dmax << ") = "
            << integrate_weighted_difference(lambda_mod, lambda, dmax) << "\n";
  if (cfg.wants("csv") || cfg.wants("svg")) {
    auto out = open_out(cfg, "measures.csv");
    out << "D,lambda,lambda_removed,J,W\n";
    for (int k = 0; k <= 200; ++k) {
      double d = dmax * k / 200;
      out << d << "," << lambda(d) << "," << lambda_mod(d) << ","
          << integrate_difference(lambda_mod, lambda, d) << ","
          << integrate_weighted_difference(lambda_mod, lambda, d) << "\n";
    }
  }
  if (cfg.wants("svg")) {
    LabeledSeries a{"lambda", {}, {}}, b{"lambda_removed", {}, {}};
    for (int k = 0; k <= 200; ++k) {
      double d = dmax * k / 200;
      a.x.push_back(d);
      a.y.push_back(lambda(d));
      b.x.push_back(d);
      b.y.push_back(lambda_mod(d));
    }
    auto svg = open_out(cfg, "measures.svg");
    svg << render_svg({a, b}, lambda.knots);
  }
  return 0;
}

int cmd_final(const std::string& network, const RunConfig& cfg) {
  PathCostModel model = load_model(network, cfg);
  FinalInterval fin = final_interval(model, {}, cfg.tol);
  std::cout << describe(model) << describe(fin);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wardrop equilibria of single origin-destination routing games with "
               "affine edge costs: demand sweeps and Braess-paradox detection"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string network;
  double demand = 0.0, dmax = -1.0;
  std::string candidates_file;
  int scan_max = 0;
  std::vector<std::string> remove;

  CLI::App* solve = app.add_subcommand("solve", "equilibrium at one demand");
  add_common(solve, cfg, network);
  solve->add_option("--demand", demand, "demand level")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "trace the whole demand range");
  add_common(sweep, cfg, network);
  sweep->add_option("--dmax", dmax, "sampling horizon for emitted curves");

  CLI::App* braess = app.add_subcommand("braess", "run the paradox detectors");
  add_common(braess, cfg, network);
  braess->add_option("--demand", demand, "demand level")->required();
  braess->add_option("--candidates", candidates_file, "JSON file with removal candidates");
  braess->add_option("--scan-max", scan_max, "scan subsets up to this size");

  CLI::App* measures = app.add_subcommand("measures", "path-value measures for a removal set");
  add_common(measures, cfg, network);
  measures->add_option("--remove", remove, "path to remove, e.g. p3 (repeatable)")->required();
  measures->add_option("--dmax", dmax, "upper integration/plot limit");

  CLI::App* final_cmd = app.add_subcommand("final", "final-interval report");
  add_common(final_cmd, cfg, network);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.validate();
    par::set_thread_limit(cfg.threads);
    if (solve->parsed()) return cmd_solve(network, demand, cfg);
    if (sweep->parsed()) return cmd_sweep(network, dmax, cfg);
    if (braess->parsed()) return cmd_braess(network, demand, candidates_file, scan_max, cfg);
    if (measures->parsed()) return cmd_measures(network, remove, dmax, cfg);
    if (final_cmd->parsed()) return cmd_final(network, cfg);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDemand& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PathExplosion& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NoPath& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NoPathsLeft& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SubsetCapExceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
