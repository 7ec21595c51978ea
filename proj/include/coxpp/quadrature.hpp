#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxpp/geometry.hpp"

namespace coxpp {

enum class QuadratureRule { Midpoint, GaussLegendre };

/// Node counts are per smooth piece: radial integrals are split at the
/// chord-topology breakpoints of the window, angular integrals at the angles
/// where those breakpoints cross each other or r = 0.
struct QuadratureSpec {
  int radial_nodes = 16;
  int angular_nodes = 16;
  QuadratureRule rule = QuadratureRule::GaussLegendre;
  double tolerance = 1e-8;  ///< absolute, on the node-doubling error estimate
  int max_refinements = 6;  ///< node doublings before giving up

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0; ///< |I(2n) - I(n)| at the final level
  int refinements = 0;
};

class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, QuadratureResult last)
      : std::runtime_error(what), last_(last) {}
  const QuadratureResult& last() const { return last_; }

private:
  QuadratureResult last_;
};

/// Nodes and weights on [-1, 1].
struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

Nodes gauss_legendre_nodes(int n);
Nodes rule_nodes(QuadratureRule rule, int n);

/// Integrand over lines meeting K: called with a line and its (non-empty)
/// chord interval.
using LineFunction = std::function<double(const LineParams&, const Interval&)>;

/// int_0^inf fn(line(r, theta)) dr at fixed theta, on one grid level.
double radial_integral(const Window& K, double theta, const LineFunction& fn,
                       const Nodes& radial);

/// int_0^{2pi} int_0^inf fn(line(r, theta)) dr dtheta on one grid level.
double line_space_integral(const Window& K, const LineFunction& fn, const Nodes& radial,
                           const Nodes& angular);

/// Angles in [0, 2pi) where the radial piece structure of K changes.
std::vector<double> angular_breakpoints(const Window& K);

/// Runs `level(radial_nodes, angular_nodes)` with node doubling until two
/// successive levels agree to spec.tolerance. Throws QuadratureError otherwise.
QuadratureResult refine(const QuadratureSpec& spec,
                        const std::function<double(const Nodes&, const Nodes&)>& level);

} // namespace coxpp
