#include "coxpp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <variant>

namespace coxpp {

void QuadratureSpec::validate() const {
  if (radial_nodes < 8 || angular_nodes < 8) {
    throw std::invalid_argument("quadrature: node counts must be >= 8");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("quadrature: tolerance must be > 0");
  if (max_refinements < 0) throw std::invalid_argument("quadrature: max_refinements must be >= 0");
}

Nodes gauss_legendre_nodes(int n) {
  Nodes out;
  out.x.resize(n);
  out.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.x[i] = -x;
    out.x[n - 1 - i] = x;
    out.w[i] = w;
    out.w[n - 1 - i] = w;
  }
  return out;
}

Nodes rule_nodes(QuadratureRule rule, int n) {
  if (rule == QuadratureRule::GaussLegendre) return gauss_legendre_nodes(n);
  Nodes out;
  out.x.resize(n);
  out.w.assign(n, 2.0 / n);
  for (int i = 0; i < n; ++i) out.x[i] = -1.0 + (2.0 * i + 1.0) / n;
  return out;
}

namespace {

template <class F>
double integrate_piece(double a, double b, const Nodes& nodes, F&& f) {
  if (!(b > a)) return 0.0;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.x.size(); ++i) sum += nodes.w[i] * f(mid + half * nodes.x[i]);
  return half * sum;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t >= kTwoPi ? 0.0 : t;
}

std::vector<Point2> rect_vertices(const Rect& r) {
  return {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
}

} // namespace

double radial_integral(const Window& K, double theta, const LineFunction& fn,
                       const Nodes& radial) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto at = [&](double r) {
    const LineParams line{r, theta};
    const auto chord = chord_interval(K, line);
    return chord ? fn(line, *chord) : 0.0;
  };
  if (const auto* d = std::get_if<Disk>(&K.shape())) {
    if (!(d->radius > 0.0)) return 0.0;
    // r = p0 + R sin(beta) removes the square-root endpoint behaviour.
    const double p0 = d->center.x * c + d->center.y * s;
    const double lo = std::max(0.0, p0 - d->radius);
    const double hi = p0 + d->radius;
    if (!(hi > lo)) return 0.0;
    const double b0 = std::asin(std::clamp((lo - p0) / d->radius, -1.0, 1.0));
    const double b1 = std::asin(std::clamp((hi - p0) / d->radius, -1.0, 1.0));
    return integrate_piece(b0, b1, radial, [&](double beta) {
      return at(p0 + d->radius * std::sin(beta)) * d->radius * std::cos(beta);
    });
  }
  const auto& rect = std::get<Rect>(K.shape());
  std::vector<double> cuts;
  for (const auto& v : rect_vertices(rect)) cuts.push_back(v.x * c + v.y * s);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = std::max(0.0, cuts[i]);
    const double b = std::max(0.0, cuts[i + 1]);
    total += integrate_piece(a, b, radial, at);
  }
  return total;
}

std::vector<double> angular_breakpoints(const Window& K) {
  std::vector<double> out{0.0};
  if (const auto* d = std::get_if<Disk>(&K.shape())) {
    const double dist = std::hypot(d->center.x, d->center.y);
    if (dist > d->radius && d->radius > 0.0) {
      const double phi = std::atan2(d->center.y, d->center.x);
      const double a = std::acos(d->radius / dist);
      for (double base : {phi, phi + std::numbers::pi}) {
        out.push_back(wrap_angle(base + a));
        out.push_back(wrap_angle(base - a));
      }
    }
  } else {
    const auto verts = rect_vertices(std::get<Rect>(K.shape()));
    auto add_normal_to = [&](double dx, double dy) {
      if (std::hypot(dx, dy) < 1e-300) return;
      const double t = std::atan2(dy, dx);
      out.push_back(wrap_angle(t + 0.5 * std::numbers::pi));
      out.push_back(wrap_angle(t - 0.5 * std::numbers::pi));
    };
    for (std::size_t i = 0; i < verts.size(); ++i) {
      add_normal_to(verts[i].x, verts[i].y);
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        add_normal_to(verts[j].x - verts[i].x, verts[j].y - verts[i].y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  for (double t : out) {
    if (unique.empty() || t - unique.back() > 1e-13) unique.push_back(t);
  }
  return unique;
}

double line_space_integral(const Window& K, const LineFunction& fn, const Nodes& radial,
                           const Nodes& angular) {
  auto cuts = angular_breakpoints(K);
  cuts.push_back(kTwoPi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_piece(cuts[i], cuts[i + 1], angular,
                             [&](double theta) { return radial_integral(K, theta, fn, radial); });
  }
  return total;
}

QuadratureResult refine(const QuadratureSpec& spec,
                        const std::function<double(const Nodes&, const Nodes&)>& level) {
  spec.validate();
  int nr = spec.radial_nodes;
  int na = spec.angular_nodes;
  double coarse = level(rule_nodes(spec.rule, nr), rule_nodes(spec.rule, na));
  QuadratureResult result;
  for (int k = 0; k <= spec.max_refinements; ++k) {
    nr *= 2;
    na *= 2;
    const double fine = level(rule_nodes(spec.rule, nr), rule_nodes(spec.rule, na));
    result = {fine, std::fabs(fine - coarse), k};
    if (result.error <= spec.tolerance) return result;
    coarse = fine;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "quadrature did not converge: value %.12g, error estimate %.3g > tolerance %.3g",
                result.value, result.error, spec.tolerance);
  throw QuadratureError(buf, result);
}

} // namespace coxpp
