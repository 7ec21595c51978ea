#include "coxpp/coxmodels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coxpp/parallel.hpp"

namespace coxpp {

CoxLineSample sample_cox_line(const ModelParams& params, const Window& K, RngStream& rng,
                              std::optional<double> r_max) {
  if (!params.has_planar_coupling()) {
    throw std::invalid_argument("sample_cox_line: parameters must satisfy mu_n = c / lambda_n");
  }
  const double rmax = r_max.value_or(support_radius(K));
  if (!(rmax >= 0.0) || !std::isfinite(rmax)) {
    throw std::invalid_argument("sample_cox_line: r_max must be finite and >= 0");
  }
  CoxLineSample out;
  out.params = params;
  out.window = K;
  const std::uint64_t m = sample_poisson(rng, params.lambda_n * rmax);
  out.lines.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const double r = rmax * rng.uniform();
    const double theta = kTwoPi * rng.uniform();
    LineChord lc{{r, theta}, chord_interval(K, {r, theta})};
    if (lc.chord) {
      for (double s : sample_ppp_interval(lc.chord->lo, lc.chord->hi, params.mu_n, rng)) {
        out.points.push(line_point(lc.line, s));
        out.parent.push_back(out.lines.size());
      }
    }
    out.lines.push_back(lc);
  }
  return out;
}

SatelliteSample sample_satellites(const ModelParams& params, RngStream& rng) {
  if (!params.has_spherical_coupling()) {
    throw std::invalid_argument("sample_satellites: parameters must satisfy mu_n = c / n");
  }
  SatelliteSample out;
  out.params = params;
  out.orbits.reserve(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    const PointS2 base = sample_uniform_sphere(rng);
    out.orbits.push_back(base);
    const std::uint64_t k = sample_poisson(rng, params.mu_n);
    if (k == 0) continue;
    const Rotation3 rot = rotation_to(base);
    for (std::uint64_t j = 0; j < k; ++j) {
      const double phi = kTwoPi * rng.uniform();
      out.points.push(rot.apply({std::cos(phi), std::sin(phi), 0.0}));
      out.parent.push_back(i);
    }
  }
  return out;
}

Estimate effective_intensity(ModelKind model, const ModelParams& params, const Window& K,
                             std::size_t reps, const StreamKey& key) {
  if (reps < 1000) throw std::invalid_argument("effective_intensity: reps must be >= 1000");
  const auto values = map_replicates(reps, key, [&](RngStream& rng, std::size_t) {
    if (model == ModelKind::CoxLine) {
      return static_cast<double>(sample_cox_line(params, K, rng).points.size()) / K.area();
    }
    return static_cast<double>(sample_satellites(params, rng).points.size());
  });
  return mean_stderr(values);
}

double satellite_collision_probability(const ModelParams& params) {
  if (!params.has_spherical_coupling()) {
    throw std::invalid_argument("satellite coupling: parameters must satisfy mu_n = c / n");
  }
  const double mu = params.mu_n;
  return -std::expm1(static_cast<double>(params.n) * (std::log1p(mu) - mu));
}

CoupledPair<PointS2> sample_satellite_pair_given_collision(const ModelParams& params,
                                                          RngStream& rng) {
  if (!params.has_spherical_coupling() || params.c <= 0.0 || params.n < 2) {
    throw std::invalid_argument("satellite coupling: need c > 0, n >= 2 and mu_n = c / n");
  }
  // Given the total M ~ Poisson(c), i.i.d. Poisson(c/n) orbit counts are a
  // uniform assignment of the M satellites to orbits.
  std::vector<std::uint64_t> labels;
  for (;;) {
    const std::uint64_t m = sample_poisson(rng, params.c);
    if (m < 2) continue;
    labels.resize(m);
    for (auto& l : labels) l = rng.below(params.n);
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) break;
  }
  CoupledPair<PointS2> pair;
  std::vector<std::uint64_t> seen;
  std::vector<Rotation3> rotations;
  for (const std::uint64_t label : labels) {
    const auto it = std::find(seen.begin(), seen.end(), label);
    const double phi = kTwoPi * rng.uniform();
    if (it == seen.end()) {
      seen.push_back(label);
      rotations.push_back(rotation_to(sample_uniform_sphere(rng)));
      const PointS2 p = rotations.back().apply({std::cos(phi), std::sin(phi), 0.0});
      pair.model.push(p);
      pair.target.push(p);
    } else {
      const auto& rot = rotations[static_cast<std::size_t>(it - seen.begin())];
      pair.model.push(rot.apply({std::cos(phi), std::sin(phi), 0.0}));
      pair.target.push(sample_uniform_sphere(rng));
    }
  }
  return pair;
}

ClusterMoments cox_line_cluster_moments(const ModelParams& params, const Window& K,
                                        const QuadratureSpec& q) {
  if (!params.has_planar_coupling()) {
    throw std::invalid_argument("cluster moments: parameters must satisfy mu_n = c / lambda_n");
  }
  const double mu = params.mu_n;
  // lambda dr dtheta / (2 pi) over line space.
  const double scale = params.lambda_n / kTwoPi;
  const LineFunction multi_lines = [mu](const LineParams&, const Interval& chord) {
    const double m = mu * chord.length();
    return -std::expm1(-m) - m * std::exp(-m);
  };
  const LineFunction multi_points = [mu](const LineParams&, const Interval& chord) {
    const double m = mu * chord.length();
    return -m * std::expm1(-m);
  };
  const auto a = refine(q, [&](const Nodes& r, const Nodes& t) {
    return scale * line_space_integral(K, multi_lines, r, t);
  });
  const auto b = refine(q, [&](const Nodes& r, const Nodes& t) {
    return scale * line_space_integral(K, multi_points, r, t);
  });
  ClusterMoments out;
  out.multi_line_mean = a.value;
  out.multi_point_mean = b.value;
  out.difference_probability = -std::expm1(-(a.value + b.value));
  out.quadrature_error = a.error + b.error;
  return out;
}

namespace {

// Draws a line meeting K with density proportional to weight(L) dr dtheta on
// [0, r_max] x [0, 2pi); weight must be non-decreasing in the chord length.
template <class Weight>
LineChord sample_weighted_line(const Window& K, double r_max, Weight weight, RngStream& rng) {
  const double w_max = weight(2.0 * r_max);
  for (;;) {
    const LineParams line{r_max * rng.uniform(), kTwoPi * rng.uniform()};
    const auto chord = chord_interval(K, line);
    if (!chord) continue;
    if (rng.uniform() * w_max < weight(chord->length())) return {line, chord};
  }
}

// Poisson(mean) conditioned on being >= 2, by inversion.
std::uint64_t poisson_at_least_two(double mean, RngStream& rng) {
  const double tail = -std::expm1(-mean) - mean * std::exp(-mean);
  const double u = rng.uniform() * tail;
  double p = std::exp(-mean) * mean * mean / 2.0;
  double cdf = p;
  std::uint64_t k = 2;
  while (u > cdf && p > 1e-300) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

} // namespace

CoupledPair<Point2> sample_cox_line_pair_given_difference(const ModelParams& params,
                                                         const Window& K,
                                                         const ClusterMoments& moments,
                                                         RngStream& rng) {
  if (!params.has_planar_coupling() || params.c <= 0.0) {
    throw std::invalid_argument("cox-line coupling: need c > 0 and mu_n = c / lambda_n");
  }
  const double mu = params.mu_n;
  const double r_max = support_radius(K);
  CoupledPair<Point2> pair;

  // Shared part: points of lines with exactly one point in K.
  const std::uint64_t m = sample_poisson(rng, params.lambda_n * r_max);
  for (std::uint64_t i = 0; i < m; ++i) {
    const LineParams line{r_max * rng.uniform(), kTwoPi * rng.uniform()};
    const auto chord = chord_interval(K, line);
    if (!chord) continue;
    if (sample_poisson(rng, mu * chord->length()) == 1) {
      const Point2 p = line_point(line, rng.uniform(chord->lo, chord->hi));
      pair.model.push(p);
      pair.target.push(p);
    }
  }

  // Clustered part and its Poisson replacement, conditioned on not both empty.
  std::uint64_t cluster_lines = 0, replacement_points = 0;
  do {
    cluster_lines = sample_poisson(rng, moments.multi_line_mean);
    replacement_points = sample_poisson(rng, moments.multi_point_mean);
  } while (cluster_lines == 0 && replacement_points == 0);

  const auto multi_weight = [mu](double len) {
    const double x = mu * len;
    return -std::expm1(-x) - x * std::exp(-x);
  };
  const auto point_weight = [mu](double len) { return -len * std::expm1(-mu * len); };
  for (std::uint64_t i = 0; i < cluster_lines; ++i) {
    const LineChord lc = sample_weighted_line(K, r_max, multi_weight, rng);
    const std::uint64_t k = poisson_at_least_two(mu * lc.chord->length(), rng);
    for (std::uint64_t j = 0; j < k; ++j) {
      pair.model.push(line_point(lc.line, rng.uniform(lc.chord->lo, lc.chord->hi)));
    }
  }
  for (std::uint64_t i = 0; i < replacement_points; ++i) {
    const LineChord lc = sample_weighted_line(K, r_max, point_weight, rng);
    pair.target.push(line_point(lc.line, rng.uniform(lc.chord->lo, lc.chord->hi)));
  }
  return pair;
}

} // namespace coxpp
