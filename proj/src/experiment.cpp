#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "coxpp/coxmodels.hpp"
#include "coxpp/harness.hpp"

namespace coxpp {

std::string to_string(TargetConvention t) {
  switch (t) {
    case TargetConvention::C:
      return "c";
    case TargetConvention::HalfC:
      return "c/2";
    case TargetConvention::Auto:
      return "auto";
  }
  return "?";
}

TargetConvention parse_target_convention(const std::string& s) {
  if (s == "c") return TargetConvention::C;
  if (s == "c/2" || s == "half-c") return TargetConvention::HalfC;
  if (s == "auto") return TargetConvention::Auto;
  throw ConfigError("target_intensity: expected c, half-c or auto, got '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("c: must be a positive number");
  if (sweep.size() < 4) throw ConfigError("sweep: need at least 4 values");
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (!(sweep[i] > 0.0) || !std::isfinite(sweep[i])) {
      throw ConfigError("sweep: values must be positive");
    }
    if (i > 0 && !(sweep[i] > sweep[i - 1])) throw ConfigError("sweep: must be strictly increasing");
    if (model == ModelKind::Satellites && (sweep[i] != std::floor(sweep[i]) || sweep[i] < 2)) {
      throw ConfigError("sweep: satellite orbit counts must be integers >= 2");
    }
  }
  if (reps < 1000) throw ConfigError("reps: must be >= 1000");
  if (calibration_reps < 1000) throw ConfigError("calibration_reps: must be >= 1000");
  if (bootstrap < 10) throw ConfigError("bootstrap: must be >= 10");
  if (regions != "default") throw ConfigError("regions: only the 'default' preset exists");
  if (model == ModelKind::CoxLine && !(window.area() > 0.0)) {
    throw ConfigError("window: must have positive area");
  }
}

ExperimentConfig default_config(ModelKind model) {
  ExperimentConfig cfg;
  cfg.model = model;
  if (model == ModelKind::Satellites) {
    cfg.c = 2.0;
    cfg.sweep = {10, 20, 40, 80, 160};
  } else {
    cfg.c = 1.0;
    cfg.sweep = {5, 10, 20, 40, 80};
  }
  return cfg;
}

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"model", "cox-line or satellites; must match the experiment"},
      {"c", "limiting intensity constant, > 0"},
      {"sweep", "comma separated lambda_n (cox-line) or n (satellites), increasing, >= 4 values"},
      {"window", "disk:cx,cy,R or rect:x0,y0,x1,y1 (cox-line only)"},
      {"reps", "replicates per sweep point, >= 1000"},
      {"regions", "region preset; only 'default'"},
      {"seed", "master seed, unsigned 64-bit"},
      {"target_intensity", "c, half-c or auto"},
      {"calibration_reps", "replicates for the intensity calibration, >= 1000"},
      {"bootstrap", "bootstrap resamples for count TV standard errors"},
  };
  return keys;
}

namespace {

std::string section_name(ModelKind m) {
  return m == ModelKind::CoxLine ? "converge-cox" : "converge-sat";
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T value{};
  is >> value;
  if (is.fail() || !(is >> std::ws).eof()) {
    throw ConfigError(key + ": cannot parse '" + text + "'");
  }
  return value;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model") {
    ModelKind m{};
    try {
      m = parse_model_kind(value);
    } catch (const std::exception&) {
      throw ConfigError("model: unknown model '" + value + "'");
    }
    if (m != cfg.model) throw ConfigError("model: '" + value + "' does not match the experiment");
  } else if (key == "c") {
    cfg.c = parse_number<double>(key, value);
  } else if (key == "sweep") {
    cfg.sweep.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.sweep.push_back(parse_number<double>(key, item));
  } else if (key == "window") {
    try {
      cfg.window = Window::parse(value);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("window: ") + e.what());
    }
  } else if (key == "reps") {
    cfg.reps = parse_number<std::size_t>(key, value);
  } else if (key == "regions") {
    cfg.regions = value;
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "target_intensity") {
    cfg.target = parse_target_convention(value);
  } else if (key == "calibration_reps") {
    cfg.calibration_reps = parse_number<std::size_t>(key, value);
  } else if (key == "bootstrap") {
    cfg.bootstrap = parse_number<std::size_t>(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

} // namespace

ExperimentConfig parse_config(std::istream& is, ModelKind model) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg = default_config(model);
  const std::string own = section_name(model);
  const pt::ptree* section = nullptr;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      apply_key(cfg, key, node.data());
    } else if (key == own) {
      section = &node;
    } else if (key != "converge-cox" && key != "converge-sat") {
      throw ConfigError("unknown section [" + key + "]");
    }
  }
  if (section) {
    for (const auto& [key, node] : *section) apply_key(cfg, key, node.data());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ModelKind model) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in, model);
}

namespace {

ModelParams params_for(const ExperimentConfig& cfg, double parameter) {
  if (cfg.model == ModelKind::CoxLine) return ModelParams::planar(cfg.c, parameter);
  return ModelParams::spherical(cfg.c, static_cast<std::size_t>(parameter));
}

// Intensity the construction converges to: per unit area for the planar
// model, per unit nu-measure for the satellites.
double construction_intensity(const ExperimentConfig& cfg, const ModelParams& p) {
  return cfg.model == ModelKind::CoxLine ? cox_line_construction_intensity(p) : cfg.c;
}

// Chooses the target intensity. `auto` snaps the calibrated estimate to c or
// c/2 when either lies within three standard errors.
void choose_target(const ExperimentConfig& cfg, ExperimentRow& row) {
  switch (cfg.target) {
    case TargetConvention::C:
      row.target_intensity = cfg.c;
      row.convention = "c";
      return;
    case TargetConvention::HalfC:
      row.target_intensity = 0.5 * cfg.c;
      row.convention = "c/2";
      return;
    case TargetConvention::Auto:
      break;
  }
  const Estimate& e = row.effective_intensity;
  const double tol = 3.0 * e.se;
  const double dc = std::fabs(e.mean - cfg.c);
  const double dh = std::fabs(e.mean - 0.5 * cfg.c);
  if (dh <= tol && dh <= dc) {
    row.target_intensity = 0.5 * cfg.c;
    row.convention = "c/2";
  } else if (dc <= tol) {
    row.target_intensity = cfg.c;
    row.convention = "c";
  } else {
    row.target_intensity = e.mean;
    row.convention = "calibrated";
  }
}

template <class P, class Region>
DistanceEstimate max_count_tv(const std::vector<Configuration<P>>& samples,
                              const std::vector<NamedRegion<Region>>& regions, double intensity,
                              const StreamKey& key, std::size_t bootstrap) {
  DistanceEstimate best;
  bool first = true;
  for (std::size_t k = 0; k < regions.size(); ++k) {
    auto d = count_tv_lower_bound<P>(samples, regions[k], intensity * measure(regions[k].region),
                                     key.child(k), bootstrap);
    if (first || d.value > best.value) {
      best = d;
      first = false;
    }
  }
  return best;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::function<void(const ExperimentRow&)>& on_row) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  ExperimentResult result;
  result.config = cfg;
  const StreamKey root(cfg.seed);
  const Window& K = cfg.window;

  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
    const auto t0 = clock::now();
    ExperimentRow row;
    row.parameter = cfg.sweep[i];
    row.params = params_for(cfg, row.parameter);
    const StreamKey key = root.child(i + 1);

    row.effective_intensity =
        effective_intensity(cfg.model, row.params, K, cfg.calibration_reps, key.child(1));
    choose_target(cfg, row);
    row.coupled = row.target_intensity == construction_intensity(cfg, row.params);

    if (cfg.model == ModelKind::Satellites) {
      row.bound = satellite_bound(row.params);
      const auto samples = map_replicates(cfg.reps, key.child(3), [&](RngStream& rng, std::size_t) {
        return sample_satellites(row.params, rng).points;
      });
      const auto family = sphere_test_family();
      if (row.coupled) {
        const auto pairs = map_replicates(cfg.reps, key.child(2), [&](RngStream& rng, std::size_t) {
          return sample_satellite_pair_given_collision(row.params, rng);
        });
        row.distance = wasserstein_lower_bound_coupled<PointS2>(
            pairs, satellite_collision_probability(row.params), family, "sphere-preset");
      } else {
        const double mean_total = row.target_intensity;
        row.distance = wasserstein_lower_bound<PointS2>(
            samples, [mean_total](RngStream& rng) { return sample_ppp_sphere(mean_total, rng); },
            family, key.child(2), "sphere-preset");
      }
      row.count_tv = max_count_tv(samples, sphere_region_preset(), row.target_intensity,
                                  key.child(4), cfg.bootstrap);
    } else {
      row.bound = cox_bound(row.params, K);
      const auto samples = map_replicates(cfg.reps, key.child(3), [&](RngStream& rng, std::size_t) {
        return sample_cox_line(row.params, K, rng).points;
      });
      const auto family = planar_test_family(K);
      if (row.coupled) {
        const auto moments = cox_line_cluster_moments(row.params, K);
        const auto pairs = map_replicates(cfg.reps, key.child(2), [&](RngStream& rng, std::size_t) {
          return sample_cox_line_pair_given_difference(row.params, K, moments, rng);
        });
        row.distance = wasserstein_lower_bound_coupled<Point2>(
            pairs, moments.difference_probability, family, "planar-preset");
      } else {
        const double lambda = row.target_intensity;
        row.distance = wasserstein_lower_bound<Point2>(
            samples, [&K, lambda](RngStream& rng) { return sample_ppp_window(K, lambda, rng); },
            family, key.child(2), "planar-preset");
      }
      row.count_tv = max_count_tv(samples, planar_region_preset(K), row.target_intensity,
                                  key.child(4), cfg.bootstrap);
    }

    const double b = row.bound.bound_value;
    row.within_bound = row.distance.value <= b + 3.0 * row.distance.se &&
                       row.count_tv.value <= b + 3.0 * row.count_tv.se;
    row.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    result.rows.push_back(row);
    if (on_row) on_row(row);
  }

  std::vector<std::pair<double, double>> points;
  for (const auto& r : result.rows) points.emplace_back(r.parameter, r.distance.value);
  try {
    result.fit = rate_regression(points);
  } catch (const std::invalid_argument&) {
    // A distance floored at zero leaves the fit undefined.
    result.fit.reset();
  }
  result.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return result;
}

} // namespace coxpp
