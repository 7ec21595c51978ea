#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxpp/diagnostics.hpp"
#include "coxpp/steinbound.hpp"

namespace coxpp {

/// Raised for invalid experiment configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class TargetConvention { C, HalfC, Auto };
std::string to_string(TargetConvention t);
TargetConvention parse_target_convention(const std::string& s);

struct ExperimentConfig {
  ModelKind model = ModelKind::Satellites;
  double c = 2.0;
  std::vector<double> sweep;  ///< lambda_n values (cox-line) or n values (satellites)
  Window window = Window::disk({0.0, 0.0}, 1.0); ///< ignored for satellites
  std::size_t reps = 10000;
  std::string regions = "default";
  std::uint64_t seed = 20240501;
  TargetConvention target = TargetConvention::Auto;
  std::size_t calibration_reps = 4000;
  std::size_t bootstrap = 200;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Defaults for `experiment converge-cox` and `experiment converge-sat`.
ExperimentConfig default_config(ModelKind model);

/// Reads an INI file. Keys may sit at top level or in a section named after
/// the experiment (converge-cox / converge-sat); section keys win. Unknown
/// keys or sections are errors.
ExperimentConfig parse_config(std::istream& is, ModelKind model);
ExperimentConfig load_config(const std::string& path, ModelKind model);

/// Documented keys, for help output and the README.
const std::vector<std::pair<std::string, std::string>>& config_keys();

struct ExperimentRow {
  double parameter = 0.0;
  ModelParams params;
  DistanceEstimate distance; ///< Wasserstein lower bound against the target PPP
  DistanceEstimate count_tv; ///< largest region count TV against Poisson
  BoundReport bound;
  Estimate effective_intensity;
  double target_intensity = 0.0;
  std::string convention; ///< "c", "c/2" or "calibrated"
  bool coupled = false;   ///< coupled estimator used for `distance`
  bool within_bound = false;
  double seconds = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::optional<RateFit> fit;
  double seconds = 0.0;
};

/// Runs the sweep point by point. on_row is called as each row completes so
/// callers can flush partial results.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::function<void(const ExperimentRow&)>& on_row = {});

/// One line of validation.csv. relation "eq": |lhs - rhs| <= tolerance;
/// relation "le": lhs <= rhs + tolerance.
struct ValidationRow {
  std::string check;
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double se = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
};

enum class CheckGroup { Mecke, Invariance, Glauber, Coarea, Bound, All };
CheckGroup parse_check_group(const std::string& s);

struct SuiteOptions {
  std::uint64_t seed = 20240501;
  std::optional<std::size_t> reps; ///< overrides every Monte Carlo replicate count
};

std::vector<ValidationRow> run_validation_suite(CheckGroup group, const SuiteOptions& opts);
inline std::vector<ValidationRow> run_validation_suite(std::uint64_t seed) {
  return run_validation_suite(CheckGroup::All, {seed, std::nullopt});
}

// CSV and plot output. Every CSV starts with a "# schema_version=1" line.
inline constexpr int kSchemaVersion = 1;
void write_results_header(std::ostream& os);
void write_result_row(std::ostream& os, const ExperimentConfig& cfg, const ExperimentRow& row);
void write_fit_csv(std::ostream& os, const ExperimentResult& result);
void write_validation_csv(std::ostream& os, const std::vector<ValidationRow>& rows);
void write_bound_csv(std::ostream& os, const BoundReport& report);
/// Log-log plot of distance against the sweep parameter with the bound line.
void write_rate_svg(std::ostream& os, const ExperimentResult& result);

} // namespace coxpp
