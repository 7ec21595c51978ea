#pragma once

#include <cstddef>
#include <vector>

#include "coxpp/diagnostics.hpp"
#include "coxpp/functionals.hpp"
#include "coxpp/geometry.hpp"
#include "coxpp/stats.hpp"

namespace coxpp {

/// Birth-death dynamics on a window: births at rate lambda per unit area,
/// each point dies at rate 1. `horizon` is the simulated time.
struct GlauberSpec {
  Window window = Window::rect(0, 0, 1, 1);
  double lambda = 1.0;
  double horizon = 0.0;

  void validate() const;
  double birth_rate() const { return lambda * window.area(); }
};

/// Exact jump simulation of the dynamics from omega0 up to spec.horizon.
PlanarConfig glauber_simulate(const PlanarConfig& omega0, const GlauberSpec& spec, RngStream& rng);

/// One draw of thin(omega, e^-t) + PPP((1 - e^-t) lambda) on the window.
PlanarConfig semigroup_sample(const PlanarConfig& omega, double t, const GlauberSpec& spec,
                              RngStream& rng);

/// Monte Carlo estimate of P_t F(omega).
Estimate semigroup_estimate(const Functional<Point2>& F, const PlanarConfig& omega, double t,
                            const GlauberSpec& spec, std::size_t reps, const StreamKey& key);

/// Per-region count TV between trajectories at spec.horizon (reps draws) and
/// the thinning representation (reference_factor * reps draws).
std::vector<RegionTv> semigroup_trajectory_consistency(
    const PlanarConfig& omega0, const GlauberSpec& spec,
    const std::vector<NamedRegion<PlanarRegion>>& regions, std::size_t reps, const StreamKey& key,
    std::size_t reference_factor = 10);

/// Count TV between two thinning steps (s then t) and a single step s + t.
std::vector<RegionTv> semigroup_property_check(
    const PlanarConfig& omega0, const GlauberSpec& spec, double s, double t,
    const std::vector<NamedRegion<PlanarRegion>>& regions, std::size_t reps, const StreamKey& key);

/// LF(omega): the death sum is exact, the birth integral uses `pairs`
/// antithetic pairs (x and its reflection through the window centre).
Estimate generator_apply(const Functional<Point2>& F, const PlanarConfig& omega,
                         const GlauberSpec& spec, std::size_t pairs, RngStream& rng);

/// Mean of |F(B) - F(A)| where A = thin(omega, e^-t) + fresh PPP and B adds z
/// with its own coin; bounds |P_t F(omega + z) - P_t F(omega)|.
Estimate contraction_estimate(const Functional<Point2>& F, const PlanarConfig& omega,
                              const Point2& z, double t, const GlauberSpec& spec,
                              std::size_t reps, const StreamKey& key);

} // namespace coxpp
