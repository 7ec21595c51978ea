#include "coxpp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace coxpp {

CountHistogram::CountHistogram(std::string region, std::span<const std::size_t> counts)
    : region_(std::move(region)) {
  for (std::size_t c : counts) add(c);
}

void CountHistogram::add(std::size_t count, std::size_t times) {
  counts_[count] += times;
  reps_ += times;
}

double CountHistogram::pmf(std::size_t k) const {
  const auto it = counts_.find(k);
  if (it == counts_.end() || reps_ == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(reps_);
}

double tv_distance(const CountHistogram& a, const CountHistogram& b) {
  double sum = 0.0;
  auto ia = a.counts().begin();
  auto ib = b.counts().begin();
  while (ia != a.counts().end() || ib != b.counts().end()) {
    if (ib == b.counts().end() || (ia != a.counts().end() && ia->first < ib->first)) {
      sum += a.pmf(ia->first);
      ++ia;
    } else if (ia == a.counts().end() || ib->first < ia->first) {
      sum += b.pmf(ib->first);
      ++ib;
    } else {
      sum += std::fabs(a.pmf(ia->first) - b.pmf(ib->first));
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

TruncatedPoisson truncated_poisson(double mean, double tail_mass) {
  TruncatedPoisson out;
  if (mean == 0.0) {
    out.pmf = {1.0};
    return out;
  }
  double cdf = 0.0;
  for (std::size_t k = 0;; ++k) {
    const double kd = static_cast<double>(k);
    const double p = std::exp(kd * std::log(mean) - mean - std::lgamma(kd + 1.0));
    out.pmf.push_back(p);
    cdf += p;
    if (kd > mean && 1.0 - cdf < tail_mass) break;
    if (k > 100000) break;
  }
  out.tail = std::max(0.0, 1.0 - cdf);
  return out;
}

PoissonTv tv_to_poisson(const CountHistogram& h, double mean) {
  const auto pois = truncated_poisson(mean);
  double sum = 0.0;
  for (std::size_t k = 0; k < pois.pmf.size(); ++k) sum += std::fabs(h.pmf(k) - pois.pmf[k]);
  for (const auto& [k, n] : h.counts()) {
    if (k >= pois.pmf.size()) sum += h.pmf(k);
  }
  // The unlisted Poisson tail can shift the sum by at most its mass.
  return {0.5 * (sum + pois.tail), 0.5 * pois.tail};
}

std::string to_string(DistanceKind k) {
  switch (k) {
    case DistanceKind::TvCounts:
      return "tv-counts";
    case DistanceKind::WassersteinLower:
      return "wasserstein-lower";
    case DistanceKind::MeanGap:
      return "mean-gap";
  }
  return "?";
}

DistanceEstimate count_tv_lower_bound(std::string region, std::span<const std::size_t> counts,
                                      double target_mean, const StreamKey& key,
                                      std::size_t bootstrap) {
  if (counts.size() < 1000) {
    throw std::invalid_argument("count_tv_lower_bound: need at least 1000 samples");
  }
  if (!(target_mean >= 0.0)) throw std::invalid_argument("count_tv_lower_bound: mean must be >= 0");
  const CountHistogram h(region, counts);
  const double tv = tv_to_poisson(h, target_mean).tv;
  const std::size_t n = counts.size();
  const auto boot = map_replicates(bootstrap, key, [&](RngStream& rng, std::size_t) {
    CountHistogram resample(region);
    for (std::size_t i = 0; i < n; ++i) resample.add(counts[rng.below(n)]);
    return tv_to_poisson(resample, target_mean).tv;
  });
  const Estimate spread = mean_stderr(boot);
  DistanceEstimate out;
  // mean_stderr returns sd / sqrt(B); the bootstrap standard error is the sd.
  out.se = spread.se * std::sqrt(static_cast<double>(bootstrap));
  out.value = std::max(0.0, tv - out.se);
  out.kind = DistanceKind::TvCounts;
  out.regions = region;
  out.functional = "count(" + region + ")";
  out.raw = tv;
  return out;
}

DistanceEstimate reduce_gaps(const GapTable& table, std::string regions) {
  DistanceEstimate out;
  out.kind = DistanceKind::WassersteinLower;
  out.regions = std::move(regions);
  std::size_t best = 0;
  double best_gap = -1.0;
  for (std::size_t i = 0; i < table.gaps.size(); ++i) {
    const double g = std::fabs(table.gaps[i].mean);
    if (g > best_gap) {
      best_gap = g;
      best = i;
    }
  }
  if (table.gaps.empty()) return out;
  out.raw = best_gap;
  out.se = table.gaps[best].se;
  out.value = std::max(0.0, best_gap - out.se);
  out.functional = table.names[best];
  return out;
}

namespace {

MeckeResult finish(std::string name, const std::vector<double>& lhs,
                   const std::vector<double>& rhs) {
  MeckeResult r;
  r.name = std::move(name);
  r.lhs = mean_stderr(lhs);
  r.rhs = mean_stderr(rhs);
  r.se = combined_stderr(r.lhs.se, r.rhs.se);
  r.pass = std::fabs(r.lhs.mean - r.rhs.mean) <= 3.0 * r.se;
  return r;
}

PlanarConfig without(const PlanarConfig& w, std::size_t skip) {
  PlanarConfig out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != skip) out.push(w[i]);
  }
  return out;
}

} // namespace

MeckeResult mecke_check_ppp(const PairFunctional<Point2>& F, double lambda, const Window& K,
                            std::size_t reps, const StreamKey& key) {
  const double mass = lambda * K.area();
  const auto values = map_replicates(reps, key, [&](RngStream& rng, std::size_t) {
    const PlanarConfig phi = sample_ppp_window(K, lambda, rng);
    double lhs = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) lhs += F(phi[j], without(phi, j));
    const PlanarConfig other = sample_ppp_window(K, lambda, rng);
    const Point2 x = sample_uniform(K, rng);
    return std::pair{lhs, mass * F(x, other)};
  });
  std::vector<double> lhs(reps), rhs(reps);
  for (std::size_t i = 0; i < reps; ++i) std::tie(lhs[i], rhs[i]) = values[i];
  return finish("mecke_ppp:" + F.name, lhs, rhs);
}

MeckeResult mecke_check_bpp(const PairFunctional<Point2>& F, std::size_t N,
                            const std::function<Point2(RngStream&)>& sampler, std::size_t reps,
                            const StreamKey& key) {
  if (N == 0) throw std::invalid_argument("mecke_check_bpp: N must be >= 1");
  const auto values = map_replicates(reps, key, [&](RngStream& rng, std::size_t) {
    const PlanarConfig phi = sample_bpp(N, sampler, rng);
    double lhs = 0.0;
    for (const auto& x : phi) lhs += F(x, phi);
    PlanarConfig reduced = sample_bpp(N - 1, sampler, rng);
    const Point2 x = sampler(rng);
    reduced.push(x);
    return std::pair{lhs, static_cast<double>(N) * F(x, reduced)};
  });
  std::vector<double> lhs(reps), rhs(reps);
  for (std::size_t i = 0; i < reps; ++i) std::tie(lhs[i], rhs[i]) = values[i];
  return finish("mecke_bpp:" + F.name, lhs, rhs);
}

namespace {

constexpr std::size_t kBlock = 8192;

// Accumulates per-region count histograms of `draw` over reps replicates,
// in blocks so memory stays bounded.
template <class Draw>
std::vector<CountHistogram> region_histograms(const std::vector<NamedRegion<PlanarRegion>>& regions,
                                              std::size_t reps, const StreamKey& key,
                                              Draw&& draw) {
  std::vector<CountHistogram> hists;
  for (const auto& r : regions) hists.emplace_back(r.name);
  for (std::size_t first = 0; first < reps; first += kBlock) {
    const std::size_t n = std::min(kBlock, reps - first);
    const auto block = map_replicates(
        n, key,
        [&](RngStream& rng, std::size_t) {
          const PlanarConfig w = draw(rng);
          std::vector<std::size_t> counts(regions.size());
          for (std::size_t k = 0; k < regions.size(); ++k) counts[k] = count_in(w, regions[k].region);
          return counts;
        },
        first);
    for (const auto& counts : block) {
      for (std::size_t k = 0; k < regions.size(); ++k) hists[k].add(counts[k]);
    }
  }
  return hists;
}

PlanarConfig thinned_superposition(double lambda, const Window& K, double t, RngStream& rng) {
  const PlanarConfig a = sample_ppp_window(K, lambda, rng);
  const PlanarConfig b = sample_ppp_window(K, lambda, rng);
  return superpose(thin(a, t, rng), thin(b, 1.0 - t, rng));
}

} // namespace

std::vector<RegionTv> invariance_check(double lambda, const Window& K, double t,
                                       const std::vector<NamedRegion<PlanarRegion>>& regions,
                                       std::size_t reps, const StreamKey& key,
                                       std::size_t reference_factor) {
  check_probability(t, "invariance_check");
  const auto mixed = region_histograms(regions, reps, key.child(1), [&](RngStream& rng) {
    return thinned_superposition(lambda, K, t, rng);
  });
  const auto fresh = region_histograms(regions, reps * reference_factor, key.child(2),
                                       [&](RngStream& rng) { return sample_ppp_window(K, lambda, rng); });
  std::vector<RegionTv> out;
  const double tol = tv_noise_floor(reps);
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const double tv = tv_distance(mixed[k], fresh[k]);
    out.push_back({regions[k].name, tv, tol, tv <= tol});
  }
  return out;
}

RegionTv joint_invariance_check(double lambda, const Window& K, double t,
                                const NamedRegion<PlanarRegion>& a,
                                const NamedRegion<PlanarRegion>& b, std::size_t reps,
                                const StreamKey& key, std::size_t reference_factor) {
  check_probability(t, "joint_invariance_check");
  // Encode the pair of counts (i, j) as a single cell index.
  auto joint = [&](std::size_t n, const StreamKey& k, auto draw) {
    CountHistogram h(a.name + "x" + b.name);
    for (std::size_t first = 0; first < n; first += kBlock) {
      const std::size_t m = std::min(kBlock, n - first);
      const auto cells = map_replicates(
          m, k,
          [&](RngStream& rng, std::size_t) {
            const PlanarConfig w = draw(rng);
            return count_in(w, a.region) * 1000003 + count_in(w, b.region);
          },
          first);
      for (std::size_t c : cells) h.add(c);
    }
    return h;
  };
  const auto mixed = joint(reps, key.child(1), [&](RngStream& rng) {
    return thinned_superposition(lambda, K, t, rng);
  });
  const auto fresh = joint(reps * reference_factor, key.child(2),
                           [&](RngStream& rng) { return sample_ppp_window(K, lambda, rng); });
  const double tv = tv_distance(mixed, fresh);
  const double tol = tv_noise_floor(reps);
  return {mixed.region(), tv, tol, tv <= tol};
}

RateFit rate_regression(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4) throw std::invalid_argument("rate_regression: need at least 4 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0.0)) {
      throw std::invalid_argument("rate_regression: parameters must be positive");
    }
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      throw std::invalid_argument("rate_regression: parameters must be strictly increasing");
    }
    if (!(points[i].second > 0.0)) {
      throw std::invalid_argument("rate_regression: distances must be positive");
    }
  }
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [p, d] : points) {
    sx += std::log(p);
    sy += std::log(d);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [p, d] : points) {
    const double dx = std::log(p) - mx;
    const double dy = std::log(d) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  RateFit fit;
  fit.pairs.assign(points.begin(), points.end());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [p, d] : points) {
    const double e = std::log(d) - (fit.intercept + fit.slope * std::log(p));
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

} // namespace coxpp
