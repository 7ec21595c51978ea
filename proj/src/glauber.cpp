#include "coxpp/glauber.hpp"

#include <cmath>
#include <stdexcept>

namespace coxpp {

void GlauberSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("GlauberSpec: lambda must be positive");
  }
  if (!(window.area() > 0.0)) throw std::invalid_argument("GlauberSpec: window has zero area");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("GlauberSpec: horizon must be finite and >= 0");
  }
}

PlanarConfig glauber_simulate(const PlanarConfig& omega0, const GlauberSpec& spec, RngStream& rng) {
  spec.validate();
  for (const auto& p : omega0) {
    if (!spec.window.contains(p)) {
      throw std::invalid_argument("glauber_simulate: initial point outside the window");
    }
  }
  PlanarConfig state = omega0;
  const double birth = spec.birth_rate();
  double time = 0.0;
  while (true) {
    const double total = birth + static_cast<double>(state.size());
    time += rng.exponential(total);
    if (time > spec.horizon) break;
    if (rng.uniform() * total < birth) {
      state.push(sample_uniform(spec.window, rng));
    } else {
      state.swap_remove(rng.below(state.size()));
    }
  }
  return state;
}

PlanarConfig semigroup_sample(const PlanarConfig& omega, double t, const GlauberSpec& spec,
                              RngStream& rng) {
  if (!(t >= 0.0)) throw std::invalid_argument("semigroup_sample: t must be >= 0");
  const double keep = std::exp(-t);
  PlanarConfig out = thin(omega, keep, rng);
  out.append(sample_ppp_window(spec.window, -std::expm1(-t) * spec.lambda, rng));
  return out;
}

Estimate semigroup_estimate(const Functional<Point2>& F, const PlanarConfig& omega, double t,
                            const GlauberSpec& spec, std::size_t reps, const StreamKey& key) {
  if (reps == 0) throw std::invalid_argument("semigroup_estimate: reps must be >= 1");
  const auto values = map_replicates(reps, key, [&](RngStream& rng, std::size_t) {
    return F(semigroup_sample(omega, t, spec, rng));
  });
  return mean_stderr(values);
}

namespace {

std::vector<CountHistogram> histograms(const std::vector<NamedRegion<PlanarRegion>>& regions,
                                       const std::vector<PlanarConfig>& samples) {
  std::vector<CountHistogram> out;
  for (const auto& r : regions) {
    CountHistogram h(r.name);
    for (const auto& s : samples) h.add(count_in(s, r.region));
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<RegionTv> compare(const std::vector<CountHistogram>& a,
                              const std::vector<CountHistogram>& b, std::size_t reps) {
  std::vector<RegionTv> out;
  const double tol = tv_noise_floor(reps);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double tv = tv_distance(a[k], b[k]);
    out.push_back({a[k].region(), tv, tol, tv <= tol});
  }
  return out;
}

} // namespace

std::vector<RegionTv> semigroup_trajectory_consistency(
    const PlanarConfig& omega0, const GlauberSpec& spec,
    const std::vector<NamedRegion<PlanarRegion>>& regions, std::size_t reps, const StreamKey& key,
    std::size_t reference_factor) {
  if (reps < 1000) throw std::invalid_argument("semigroup_trajectory_consistency: reps must be >= 1000");
  const auto paths = map_replicates(reps, key.child(1), [&](RngStream& rng, std::size_t) {
    return glauber_simulate(omega0, spec, rng);
  });
  const auto thinned = map_replicates(reps * reference_factor, key.child(2), [&](RngStream& rng, std::size_t) {
    return semigroup_sample(omega0, spec.horizon, spec, rng);
  });
  return compare(histograms(regions, paths), histograms(regions, thinned), reps);
}

std::vector<RegionTv> semigroup_property_check(
    const PlanarConfig& omega0, const GlauberSpec& spec, double s, double t,
    const std::vector<NamedRegion<PlanarRegion>>& regions, std::size_t reps, const StreamKey& key) {
  const auto twice = map_replicates(reps, key.child(1), [&](RngStream& rng, std::size_t) {
    return semigroup_sample(semigroup_sample(omega0, s, spec, rng), t, spec, rng);
  });
  const auto once = map_replicates(reps, key.child(2), [&](RngStream& rng, std::size_t) {
    return semigroup_sample(omega0, s + t, spec, rng);
  });
  // Both sides carry reps draws, so the floor is widened by sqrt(2).
  auto out = compare(histograms(regions, twice), histograms(regions, once), reps / 2);
  return out;
}

Estimate generator_apply(const Functional<Point2>& F, const PlanarConfig& omega,
                         const GlauberSpec& spec, std::size_t pairs, RngStream& rng) {
  spec.validate();
  if (pairs == 0) throw std::invalid_argument("generator_apply: need at least one pair");
  const double base = F(omega);
  double death = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    PlanarConfig less = omega;
    less.erase_one(omega[i]);
    death += F(less) - base;
  }
  const Point2 c = spec.window.center();
  const double mass = spec.birth_rate();
  std::vector<double> births(pairs);
  PlanarConfig more = omega;
  for (auto& b : births) {
    const Point2 x = sample_uniform(spec.window, rng);
    const Point2 y{2.0 * c.x - x.x, 2.0 * c.y - x.y};
    more.push(x);
    const double fx = F(more);
    more.swap_remove(more.size() - 1);
    more.push(y);
    const double fy = F(more);
    more.swap_remove(more.size() - 1);
    b = mass * (0.5 * (fx + fy) - base);
  }
  Estimate birth = mean_stderr(births);
  return {death + birth.mean, birth.se};
}

Estimate contraction_estimate(const Functional<Point2>& F, const PlanarConfig& omega,
                              const Point2& z, double t, const GlauberSpec& spec,
                              std::size_t reps, const StreamKey& key) {
  if (!F.lipschitz) throw std::invalid_argument("contraction_estimate: functional must be 1-Lipschitz");
  if (!spec.window.contains(z)) throw std::invalid_argument("contraction_estimate: z outside the window");
  if (reps == 0) throw std::invalid_argument("contraction_estimate: reps must be >= 1");
  const double keep = std::exp(-t);
  const auto values = map_replicates(reps, key, [&](RngStream& rng, std::size_t) {
    PlanarConfig a = semigroup_sample(omega, t, spec, rng);
    const double fa = F(a);
    if (rng.uniform() >= keep) return 0.0;
    a.push(z);
    return std::fabs(F(a) - fa);
  });
  return mean_stderr(values);
}

} // namespace coxpp
