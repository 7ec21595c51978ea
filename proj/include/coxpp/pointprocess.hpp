#pragma once

#include <cstddef>
#include <vector>

#include "coxpp/configuration.hpp"
#include "coxpp/geometry.hpp"
#include "coxpp/rng.hpp"

namespace coxpp {

/// Intensity bookkeeping for the two Cox models. The factories enforce the
/// couplings mu_n = c / lambda_n (plane) and mu_n = c / n (sphere).
struct ModelParams {
  double lambda_n = 0.0; ///< line intensity per unit r (planar model)
  double mu_n = 0.0;     ///< points per unit length (plane) or per orbit (sphere)
  double c = 0.0;
  std::size_t n = 0; ///< orbit count (spherical model)

  static ModelParams planar(double c, double lambda_n);
  static ModelParams spherical(double c, std::size_t n);

  bool has_planar_coupling() const;
  bool has_spherical_coupling() const;
};

/// Throws std::invalid_argument unless 0 <= p <= 1.
void check_probability(double p, const char* what);

Point2 sample_uniform(const Window& K, RngStream& rng);

/// Homogeneous PPP of intensity lambda on K.
PlanarConfig sample_ppp_window(const Window& K, double lambda, RngStream& rng);

/// Homogeneous 1-D PPP of intensity mu on [lo, hi], in generation order.
std::vector<double> sample_ppp_interval(double lo, double hi, double mu, RngStream& rng);

/// Uniform point on the sphere (z uniform on [-1, 1], azimuth uniform).
PointS2 sample_uniform_sphere(RngStream& rng);

/// PPP on the sphere with intensity mean_total * nu.
SphereConfig sample_ppp_sphere(double mean_total, RngStream& rng);

/// Binomial process: N i.i.d. draws from `sampler(rng)`.
template <class Sampler>
auto sample_bpp(std::size_t N, Sampler&& sampler, RngStream& rng) {
  using P = decltype(sampler(rng));
  Configuration<P> cfg;
  cfg.reserve(N);
  for (std::size_t i = 0; i < N; ++i) cfg.push(sampler(rng));
  return cfg;
}

/// p-thinning: each point kept independently with probability p.
template <class P>
Configuration<P> thin(const Configuration<P>& cfg, double p, RngStream& rng) {
  check_probability(p, "thin");
  Configuration<P> out;
  out.reserve(cfg.size());
  for (const auto& x : cfg) {
    if (rng.uniform() < p) out.push(x);
  }
  return out;
}

} // namespace coxpp
