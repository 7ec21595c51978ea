// Command line front end: simulate, bound, experiment, check.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "coxpp/coxmodels.hpp"
#include "coxpp/harness.hpp"
#include "coxpp/parallel.hpp"

namespace fs = std::filesystem;
using namespace coxpp;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::string out;
  std::string config;
  bool plots = false;
  unsigned threads = 0;
};

std::ofstream open_output(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(fs::path(dir) / name);
  if (!os) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
  return os;
}

int run_simulate(const Globals& g, const std::string& model, double c, double lambda,
                 std::size_t n, const std::string& window) {
  const std::uint64_t seed = g.seed.value_or(20240501);
  RngStream rng = StreamKey(seed).stream(0);
  nlohmann::json summary;
  summary["model"] = model;
  summary["seed"] = seed;
  summary["c"] = c;
  std::ostringstream csv;
  if (parse_model_kind(model) == ModelKind::CoxLine) {
    const Window K = Window::parse(window);
    const auto s = sample_cox_line(ModelParams::planar(c, lambda), K, rng);
    write_csv(csv, s.points);
    std::size_t hitting = 0;
    for (const auto& l : s.lines) hitting += l.chord.has_value();
    summary["lambda_n"] = lambda;
    summary["mu_n"] = s.params.mu_n;
    summary["window"] = K.describe();
    summary["lines"] = s.lines.size();
    summary["lines_hitting_window"] = hitting;
    summary["points"] = s.points.size();
  } else {
    const auto s = sample_satellites(ModelParams::spherical(c, n), rng);
    write_csv(csv, s.points);
    summary["n"] = n;
    summary["mu_n"] = s.params.mu_n;
    summary["orbits"] = s.orbits.size();
    summary["points"] = s.points.size();
  }
  if (g.out.empty()) {
    std::cout << csv.str();
    std::cerr << summary.dump() << '\n';
  } else {
    open_output(g.out, "points.csv") << csv.str();
    open_output(g.out, "summary.json") << summary.dump(2) << '\n';
    std::cout << summary.dump() << '\n';
  }
  return kOk;
}

int run_bound(const Globals& g, const std::string& model, double c, double lambda, std::size_t n,
              const std::string& window) {
  BoundReport b;
  if (parse_model_kind(model) == ModelKind::CoxLine) {
    b = cox_bound(ModelParams::planar(c, lambda), Window::parse(window));
  } else {
    b = satellite_bound(ModelParams::spherical(c, n));
  }
  std::ostringstream csv;
  write_bound_csv(csv, b);
  if (g.out.empty()) {
    std::cout << csv.str();
  } else {
    open_output(g.out, "bound.csv") << csv.str();
  }
  std::cerr << std::setprecision(10) << to_string(b.model) << " bound = " << b.bound_value;
  if (b.quadrature_error > 0) std::cerr << " (quadrature error " << b.quadrature_error << ")";
  if (b.closed_form) std::cerr << ", closed form " << *b.closed_form;
  std::cerr << '\n';
  return kOk;
}

int run_experiment_cmd(const Globals& g, const std::string& name) {
  ModelKind model{};
  if (name == "converge-cox") {
    model = ModelKind::CoxLine;
  } else if (name == "converge-sat") {
    model = ModelKind::Satellites;
  } else {
    throw ConfigError("unknown experiment '" + name + "'");
  }
  ExperimentConfig cfg = g.config.empty() ? default_config(model) : load_config(g.config, model);
  if (g.seed) cfg.seed = *g.seed;
  if (g.reps) cfg.reps = *g.reps;
  cfg.validate();

  const std::string dir = g.out.empty() ? "." : g.out;
  auto results = open_output(dir, "results.csv");
  write_results_header(results);
  results.flush();
  std::cout << std::left << std::setw(10) << "parameter" << std::setw(12) << "target"
            << std::setw(14) << "distance" << std::setw(12) << "stderr" << std::setw(14)
            << "count_tv" << std::setw(14) << "bound" << "ok\n";
  const auto result = run_experiment(cfg, [&](const ExperimentRow& row) {
    write_result_row(results, cfg, row);
    results.flush();
    std::cout << std::setw(10) << row.parameter << std::setw(12) << row.convention
              << std::setw(14) << row.distance.value << std::setw(12) << row.distance.se
              << std::setw(14) << row.count_tv.value << std::setw(14) << row.bound.bound_value
              << (row.within_bound ? "yes" : "NO") << std::endl;
  });
  {
    auto fit = open_output(dir, "fit.csv");
    write_fit_csv(fit, result);
  }
  {
    auto timing = open_output(dir, "timing.csv");
    timing << "parameter,seconds\n";
    for (const auto& r : result.rows) timing << r.parameter << ',' << r.seconds << '\n';
    timing << "total," << result.seconds << '\n';
  }
  if (g.plots) {
    auto svg = open_output(dir, name + ".svg");
    write_rate_svg(svg, result);
  }
  if (result.fit) {
    std::cout << "slope " << result.fit->slope << "  r^2 " << result.fit->r_squared << '\n';
  } else {
    std::cout << "slope undefined (a distance was floored at zero)\n";
  }
  if (model == ModelKind::CoxLine && !result.rows.empty()) {
    const auto& r0 = result.rows.front();
    std::cout << "intensity: nominal c = " << cfg.c << ", calibrated "
              << r0.effective_intensity.mean << " +- " << r0.effective_intensity.se
              << ", target used " << r0.target_intensity << " (" << r0.convention << ")\n";
  }
  bool ok = true;
  for (const auto& r : result.rows) ok = ok && r.within_bound;
  return ok ? kOk : kCheckFailed;
}

int run_check(const Globals& g, const std::string& group) {
  const CheckGroup which = parse_check_group(group);
  SuiteOptions opts;
  if (g.seed) opts.seed = *g.seed;
  opts.reps = g.reps;
  const auto rows = run_validation_suite(which, opts);
  const std::string dir = g.out.empty() ? "." : g.out;
  {
    auto csv = open_output(dir, "validation.csv");
    write_validation_csv(csv, rows);
  }
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "pass  " : "FAIL  ") << std::left << std::setw(60) << r.check
              << std::setprecision(6) << " lhs=" << r.lhs << " rhs=" << r.rhs
              << " tol=" << r.tolerance << '\n';
  }
  std::cout << rows.size() - failed << "/" << rows.size() << " checks passed\n";
  return failed == 0 ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification toolkit for Cox point processes"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--reps", g.reps, "replicates (overrides config and check defaults)");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--config", g.config, "experiment config file (INI)");
  app.add_flag("--plots", g.plots, "write SVG plots");
  app.add_option("--threads", g.threads, "worker threads, 0 = hardware concurrency");

  double c = -1.0, lambda = 20.0;
  std::size_t n = 40;
  std::string window = "disk:0,0,1";
  std::string model, target;

  auto* sim = app.add_subcommand("simulate", "draw one sample and print it as CSV");
  sim->add_option("model", model, "cox-line or satellites")->required();
  sim->add_option("--c", c, "intensity constant (default 1 for cox-line, 2 for satellites)");
  sim->add_option("--lambda", lambda, "line intensity lambda_n");
  sim->add_option("--n", n, "number of orbits");
  sim->add_option("--window", window, "disk:cx,cy,R or rect:x0,y0,x1,y1");

  auto* bound = app.add_subcommand("bound", "evaluate the explicit error bound");
  bound->add_option("model", model, "cox-line or satellites")->required();
  bound->add_option("--c", c, "intensity constant");
  bound->add_option("--lambda", lambda, "line intensity lambda_n");
  bound->add_option("--n", n, "number of orbits");
  bound->add_option("--window", window, "disk:cx,cy,R or rect:x0,y0,x1,y1");

  auto* exp = app.add_subcommand("experiment", "run a convergence sweep");
  exp->add_option("name", target, "converge-cox or converge-sat")->required();

  auto* check = app.add_subcommand("check", "run validation checks");
  check->add_option("group", target, "mecke, invariance, glauber, coarea, bound or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    set_thread_count(g.threads);
    if (c < 0) c = (model == "satellites") ? 2.0 : 1.0;
    if (*sim) return run_simulate(g, model, c, lambda, n, window);
    if (*bound) return run_bound(g, model, c, lambda, n, window);
    if (*exp) return run_experiment_cmd(g, target);
    if (*check) return run_check(g, target);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kOk;
}
