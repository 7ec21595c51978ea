#include <doctest.h>

#include <sstream>

#include "coxpp/harness.hpp"

using namespace coxpp;

namespace {

ExperimentConfig parse(const std::string& text, ModelKind m) {
  std::istringstream is(text);
  return parse_config(is, m);
}

ExperimentConfig small_sat() {
  auto cfg = default_config(ModelKind::Satellites);
  cfg.sweep = {10, 20, 40, 80};
  cfg.reps = 1000;
  cfg.calibration_reps = 1000;
  cfg.bootstrap = 20;
  return cfg;
}

std::string csv_of(const ExperimentResult& r) {
  std::ostringstream os;
  write_results_header(os);
  for (const auto& row : r.rows) write_result_row(os, r.config, row);
  return os.str();
}

} // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse("seed = 7\n[converge-cox]\nc = 2\nsweep = 5, 10, 20, 40\n"
                         "window = rect:0,0,1,1\nreps = 2000\ntarget_intensity = half-c\n",
                         ModelKind::CoxLine);
  CHECK(cfg.seed == 7);
  CHECK(cfg.c == 2.0);
  CHECK(cfg.sweep == std::vector<double>{5, 10, 20, 40});
  CHECK_FALSE(cfg.window.is_disk());
  CHECK(cfg.reps == 2000);
  CHECK(cfg.target == TargetConvention::HalfC);

  // the other experiment's section is ignored
  const auto sat = parse("[converge-cox]\nc = 9\n[converge-sat]\nc = 3\n", ModelKind::Satellites);
  CHECK(sat.c == 3.0);
}

TEST_CASE("config errors name the field") {
  auto fails_with = [](const std::string& text, const std::string& field) {
    try {
      parse(text, ModelKind::Satellites);
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(field) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("colour = blue\n", "colour"));
  CHECK(fails_with("[other]\nc = 1\n", "other"));
  CHECK(fails_with("sweep = 10, 5, 20, 40\n", "sweep"));
  CHECK(fails_with("sweep = 10, 20, 40\n", "sweep"));
  CHECK(fails_with("sweep = 10, 20.5, 40, 80\n", "sweep"));
  CHECK(fails_with("reps = 10\n", "reps"));
  CHECK(fails_with("c = -1\n", "c"));
  CHECK(fails_with("c = abc\n", "c"));
  CHECK(fails_with("model = cox-line\n", "model"));
  CHECK(fails_with("target_intensity = double\n", "target_intensity"));
  CHECK(fails_with("regions = fancy\n", "regions"));
  CHECK(fails_with("window = blob\n", "window"));
  CHECK_THROWS_AS(load_config("/nonexistent/file.ini", ModelKind::Satellites), ConfigError);
}

TEST_CASE("experiment smoke run with partial flush") {
  const auto cfg = small_sat();
  std::size_t seen = 0;
  const auto r = run_experiment(cfg, [&](const ExperimentRow& row) {
    ++seen;
    CHECK(row.parameter == cfg.sweep[seen - 1]);
  });
  CHECK(seen == 4);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.fit.has_value());
  for (const auto& row : r.rows) {
    CHECK(row.convention == "c");
    CHECK(row.coupled);
    CHECK(row.within_bound);
  }
  // byte-identical output for the same seed
  CHECK(csv_of(r) == csv_of(run_experiment(cfg)));
  auto other = cfg;
  other.seed += 1;
  CHECK(csv_of(r) != csv_of(run_experiment(other)));
}

TEST_CASE("standard errors shrink as 1/sqrt(reps)") {
  auto cfg = small_sat();
  cfg.sweep = {10, 11, 12, 13};
  const auto a = run_experiment(cfg);
  cfg.reps = 4000;
  const auto b = run_experiment(cfg);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const double ratio = a.rows[i].distance.se / b.rows[i].distance.se;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
  }
}

TEST_CASE("cox-line auto target snaps to c/2") {
  auto cfg = default_config(ModelKind::CoxLine);
  cfg.sweep = {5, 10, 20, 40};
  cfg.reps = 1000;
  cfg.bootstrap = 20;
  const auto r = run_experiment(cfg);
  for (const auto& row : r.rows) {
    CHECK(row.convention == "c/2");
    CHECK(row.target_intensity == 0.5);
    CHECK(row.coupled);
  }
  cfg.target = TargetConvention::C;
  cfg.sweep = {40, 50, 60, 80};
  const auto c = run_experiment(cfg);
  for (const auto& row : c.rows) {
    CHECK_FALSE(row.coupled);
    CHECK(row.distance.value > row.bound.bound_value);
  }
}

TEST_CASE("validation rows and CSV") {
  const auto rows = run_validation_suite(CheckGroup::Coarea, {5, std::nullopt});
  REQUIRE_FALSE(rows.empty());
  for (const auto& r : rows) CHECK(r.pass);
  const auto bound = run_validation_suite(CheckGroup::Bound, {5, std::nullopt});
  for (const auto& r : bound) CHECK(r.pass);
  std::ostringstream os;
  write_validation_csv(os, rows);
  const std::string text = os.str();
  CHECK(text.rfind("# schema_version=1\ncheck_name,relation,lhs,rhs,stderr,tolerance,pass,seed\n", 0) == 0);
  CHECK_THROWS_AS(parse_check_group("everything"), ConfigError);
}

TEST_CASE("svg output") {
  const auto r = run_experiment(small_sat());
  std::ostringstream os;
  write_rate_svg(os, r);
  CHECK(os.str().find("<svg") == 0);
  CHECK(os.str().find("polyline") != std::string::npos);
}
