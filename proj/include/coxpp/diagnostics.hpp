#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxpp/configuration.hpp"
#include "coxpp/functionals.hpp"
#include "coxpp/parallel.hpp"
#include "coxpp/pointprocess.hpp"
#include "coxpp/stats.hpp"

namespace coxpp {

/// Empirical law of a region count.
class CountHistogram {
public:
  CountHistogram() = default;
  explicit CountHistogram(std::string region) : region_(std::move(region)) {}
  CountHistogram(std::string region, std::span<const std::size_t> counts);

  void add(std::size_t count, std::size_t times = 1);
  const std::string& region() const { return region_; }
  const std::map<std::size_t, std::size_t>& counts() const { return counts_; }
  std::size_t reps() const { return reps_; }
  double pmf(std::size_t k) const;

private:
  std::string region_;
  std::map<std::size_t, std::size_t> counts_;
  std::size_t reps_ = 0;
};

/// Total variation between two empirical count laws.
double tv_distance(const CountHistogram& a, const CountHistogram& b);

/// Poisson(mean) pmf on 0..kmax where the tail beyond kmax is < 1e-12.
struct TruncatedPoisson {
  std::vector<double> pmf;
  double tail = 0.0;
};
TruncatedPoisson truncated_poisson(double mean, double tail_mass = 1e-12);

struct PoissonTv {
  double tv = 0.0;
  double truncation_error = 0.0; ///< |reported - exact| <= truncation_error
};
PoissonTv tv_to_poisson(const CountHistogram& h, double mean);

enum class DistanceKind { TvCounts, WassersteinLower, MeanGap };
std::string to_string(DistanceKind k);

/// Distance between a model law and a target law. For kind TvCounts and
/// WassersteinLower the value is a lower bound on the Wasserstein distance
/// over 1-Lipschitz functionals of configurations (up to Monte Carlo error).
struct DistanceEstimate {
  double value = 0.0;
  double se = 0.0;
  DistanceKind kind = DistanceKind::TvCounts;
  std::string regions;    ///< region set descriptor
  std::string functional; ///< maximising functional or region
  double raw = 0.0;       ///< uncorrected maximum |gap| (WassersteinLower)
};

/// TV between the law of a region count and Poisson(target_mean), with a
/// bootstrap standard error. value = max(0, tv - se), raw = tv. Requires at
/// least 1000 samples.
DistanceEstimate count_tv_lower_bound(std::string region, std::span<const std::size_t> counts,
                                      double target_mean, const StreamKey& key,
                                      std::size_t bootstrap = 200);

template <class P>
DistanceEstimate count_tv_lower_bound(std::span<const Configuration<P>> samples,
                                      const NamedRegion<typename AmbientTraits<P>::Region>& A,
                                      double target_mean, const StreamKey& key,
                                      std::size_t bootstrap = 200) {
  std::vector<std::size_t> counts;
  counts.reserve(samples.size());
  for (const auto& s : samples) counts.push_back(count_in(s, A.region));
  return count_tv_lower_bound(A.name, counts, target_mean, key, bootstrap);
}

/// Per-functional mean gaps from per-sample values.
struct GapTable {
  std::vector<std::string> names;
  std::vector<Estimate> gaps; ///< E F(model) - E F(target)
};

/// Reduces a gap table to the conservative lower bound max_f |gap_f| - se_f*
/// (f* the argmax of |gap|), floored at zero.
DistanceEstimate reduce_gaps(const GapTable& table, std::string regions);

inline void require_lipschitz(const auto& family) {
  for (const auto& f : family) {
    if (!f.lipschitz) {
      throw std::invalid_argument("functional '" + f.name + "' is not certified 1-Lipschitz");
    }
  }
}

/// Lower bound on d_W from independent samples of both laws: the target is
/// drawn `samples.size()` times from `reference`.
template <class P>
DistanceEstimate wasserstein_lower_bound(
    std::span<const Configuration<P>> samples,
    const std::function<Configuration<P>(RngStream&)>& reference,
    const std::vector<Functional<P>>& family, const StreamKey& key,
    std::string regions = "family") {
  require_lipschitz(family);
  const std::size_t n = samples.size();
  const auto refs = map_replicates(n, key, [&](RngStream& rng, std::size_t) { return reference(rng); });
  GapTable table;
  for (const auto& f : family) {
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = f(samples[i]);
      b[i] = f(refs[i]);
    }
    const Estimate ea = mean_stderr(a);
    const Estimate eb = mean_stderr(b);
    table.names.push_back(f.name);
    table.gaps.push_back({ea.mean - eb.mean, combined_stderr(ea.se, eb.se)});
  }
  return reduce_gaps(table, std::move(regions));
}

/// Lower bound on d_W from coupled pairs drawn conditionally on an event of
/// probability `weight` outside of which model and target coincide.
template <class P>
DistanceEstimate wasserstein_lower_bound_coupled(std::span<const CoupledPair<P>> pairs,
                                                 double weight,
                                                 const std::vector<Functional<P>>& family,
                                                 std::string regions = "family") {
  require_lipschitz(family);
  GapTable table;
  std::vector<double> d(pairs.size());
  for (const auto& f : family) {
    for (std::size_t i = 0; i < pairs.size(); ++i) d[i] = f(pairs[i].model) - f(pairs[i].target);
    const Estimate e = mean_stderr(d);
    table.names.push_back(f.name);
    table.gaps.push_back({weight * e.mean, weight * e.se});
  }
  return reduce_gaps(table, std::move(regions));
}

/// Result of a two-sided identity check lhs = rhs.
struct MeckeResult {
  std::string name;
  Estimate lhs;
  Estimate rhs;
  double se = 0.0; ///< combined
  bool pass = false; ///< |lhs - rhs| <= 3 se
};

/// E sum_{x in Phi} F(x, Phi - x) vs lambda |K| E F(U, Phi), U uniform in K.
MeckeResult mecke_check_ppp(const PairFunctional<Point2>& F, double lambda, const Window& K,
                            std::size_t reps, const StreamKey& key);

/// E sum_{x in Phi_N} F(x, Phi_N) vs N E F(X, Phi_{N-1} + X), X ~ mu.
MeckeResult mecke_check_bpp(const PairFunctional<Point2>& F, std::size_t N,
                            const std::function<Point2(RngStream&)>& sampler, std::size_t reps,
                            const StreamKey& key);

struct RegionTv {
  std::string region;
  double tv = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Count-histogram TV per region between t o Phi1 + (1-t) o Phi2 (reps
/// draws) and a fresh PPP (reference_factor * reps draws).
std::vector<RegionTv> invariance_check(double lambda, const Window& K, double t,
                                       const std::vector<NamedRegion<PlanarRegion>>& regions,
                                       std::size_t reps, const StreamKey& key,
                                       std::size_t reference_factor = 10);

/// Same on the joint law of the counts of two regions.
RegionTv joint_invariance_check(double lambda, const Window& K, double t,
                                const NamedRegion<PlanarRegion>& a,
                                const NamedRegion<PlanarRegion>& b, std::size_t reps,
                                const StreamKey& key, std::size_t reference_factor = 10);

/// Noise floor for count-histogram TV with `reps` draws.
inline double tv_noise_floor(std::size_t reps) { return 2.0 / std::sqrt(static_cast<double>(reps)); }

struct RateFit {
  std::vector<std::pair<double, double>> pairs;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log(distance) on log(parameter). Needs >= 4 points with
/// strictly increasing parameters and positive distances.
RateFit rate_regression(std::span<const std::pair<double, double>> points);

} // namespace coxpp
