#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coxpp/configuration.hpp"
#include "coxpp/pointprocess.hpp"
#include "coxpp/rng.hpp"
#include "coxpp/stats.hpp"
#include "coxpp/steinbound.hpp"

namespace coxpp {

struct LineChord {
  LineParams line;
  std::optional<Interval> chord;
};

/// Cox-Poisson sample restricted to K: a Poisson line process carrying
/// independent 1-D Poisson marks. parent[i] indexes the line of points[i].
struct CoxLineSample {
  std::vector<LineChord> lines;
  PlanarConfig points;
  std::vector<std::size_t> parent;
  ModelParams params;
  Window window;
};

/// Satellite sample: n i.i.d. uniform base points, each carrying a
/// Poisson(mu_n) number of satellites on its great circle.
struct SatelliteSample {
  std::vector<PointS2> orbits;
  SphereConfig points;
  std::vector<std::size_t> parent;
  ModelParams params;
};

/// Lines are drawn from the PPP with intensity lambda_n dr dtheta/(2pi)
/// restricted to r <= r_max (default support_radius(K), which loses no line
/// meeting K).
CoxLineSample sample_cox_line(const ModelParams& params, const Window& K, RngStream& rng,
                              std::optional<double> r_max = std::nullopt);

SatelliteSample sample_satellites(const ModelParams& params, RngStream& rng);

/// Mean number of points per unit area of K (cox-line) or per unit
/// nu-measure (satellites), over `reps` independent samples.
Estimate effective_intensity(ModelKind model, const ModelParams& params, const Window& K,
                             std::size_t reps, const StreamKey& key);

/// Limiting intensity the planar construction actually produces: for fixed
/// theta the lines {D(r, theta) : r >= 0} sweep a half-plane, so the mean
/// measure of the points is (c/2) Leb.
inline double cox_line_construction_intensity(const ModelParams& p) { return 0.5 * p.c; }

// ---------------------------------------------------------------------------
// Coupled samplers used to estimate E F(model) - E F(target PPP) with low
// variance. Each returns a pair (model, target) whose marginals are exactly
// the model law and the matched PPP law, drawn conditionally on the event D
// outside of which the two coincide; the mean gap is P(D) * E[F(m) - F(t) | D].
// ---------------------------------------------------------------------------

/// P(some orbit carries >= 2 satellites) = 1 - (e^{-mu}(1 + mu))^n.
double satellite_collision_probability(const ModelParams& params);

/// Coupling of Psi_n with a PPP(c nu): per orbit the first satellite is
/// shared (it is uniform on the sphere), further satellites of the same orbit
/// are replaced by fresh uniform points in the target. The pair is drawn
/// conditionally on a collision (some orbit with >= 2 satellites).
CoupledPair<PointS2> sample_satellite_pair_given_collision(const ModelParams& params,
                                                          RngStream& rng);

/// Line-space moments of the clustered part of Y_n on K.
struct ClusterMoments {
  double multi_line_mean = 0.0;  ///< E #{lines with >= 2 points in K}
  double multi_point_mean = 0.0; ///< E #{points on such lines}
  double difference_probability = 0.0; ///< 1 - exp(-(multi_line_mean + multi_point_mean))
  double quadrature_error = 0.0;
};

ClusterMoments cox_line_cluster_moments(const ModelParams& params, const Window& K,
                                        const QuadratureSpec& q = {});

/// Coupling of Y_n cap K with a PPP((c/2) Leb) on K. Y_n = S + M where S are
/// the points of lines carrying exactly one point and M those of lines with
/// >= 2 points; the target is S + Z with Z a PPP whose intensity equals the
/// mean measure of M. The pair is drawn conditionally on {M or Z non-empty}.
CoupledPair<Point2> sample_cox_line_pair_given_difference(const ModelParams& params,
                                                         const Window& K,
                                                         const ClusterMoments& moments,
                                                         RngStream& rng);

} // namespace coxpp
