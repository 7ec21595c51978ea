#include "coxpp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace coxpp {

double dot(const PointS2& a, const PointS2& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const PointS2& a) { return std::sqrt(dot(a, a)); }
double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

LineParams make_line(double r, double theta) {
  if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(theta)) {
    throw std::invalid_argument("line: r must be finite and >= 0, theta finite");
  }
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return {r, t};
}

Window Window::disk(Point2 center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius) || !std::isfinite(center.x) ||
      !std::isfinite(center.y)) {
    throw std::invalid_argument("disk window: radius must be finite and >= 0");
  }
  return Window(Disk{center, radius});
}

Window Window::rect(double x0, double y0, double x1, double y1) {
  if (!(x0 <= x1) || !(y0 <= y1) || !std::isfinite(x0) || !std::isfinite(x1) ||
      !std::isfinite(y0) || !std::isfinite(y1)) {
    throw std::invalid_argument("rect window: need finite x0 <= x1 and y0 <= y1");
  }
  return Window(Rect{x0, y0, x1, y1});
}

Window Window::parse(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("window descriptor '" + descriptor +
                                "': expected disk:cx,cy,R or rect:x0,y0,x1,y1");
  }
  const std::string kind = descriptor.substr(0, colon);
  std::vector<double> values;
  std::stringstream ss(descriptor.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("window descriptor '" + descriptor + "': bad number '" +
                                  item + "'");
    }
  }
  if (kind == "disk" && values.size() == 3) return disk({values[0], values[1]}, values[2]);
  if (kind == "rect" && values.size() == 4) {
    return rect(values[0], values[1], values[2], values[3]);
  }
  throw std::invalid_argument("window descriptor '" + descriptor +
                              "': expected disk:cx,cy,R or rect:x0,y0,x1,y1");
}

std::string Window::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    os << "disk:" << d->center.x << ',' << d->center.y << ',' << d->radius;
  } else {
    const auto& r = std::get<Rect>(shape_);
    os << "rect:" << r.x0 << ',' << r.y0 << ',' << r.x1 << ',' << r.y1;
  }
  return os.str();
}

double Window::area() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    return std::numbers::pi * d->radius * d->radius;
  }
  const auto& r = std::get<Rect>(shape_);
  return (r.x1 - r.x0) * (r.y1 - r.y0);
}

bool Window::contains(const Point2& p) const {
  if (const auto* d = std::get_if<Disk>(&shape_)) {
    const double dx = p.x - d->center.x;
    const double dy = p.y - d->center.y;
    return dx * dx + dy * dy <= d->radius * d->radius;
  }
  const auto& r = std::get<Rect>(shape_);
  return p.x >= r.x0 && p.x <= r.x1 && p.y >= r.y0 && p.y <= r.y1;
}

Point2 Window::center() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) return d->center;
  const auto& r = std::get<Rect>(shape_);
  return {0.5 * (r.x0 + r.x1), 0.5 * (r.y0 + r.y1)};
}

double Window::inscribed_radius() const {
  if (const auto* d = std::get_if<Disk>(&shape_)) return d->radius;
  const auto& r = std::get<Rect>(shape_);
  return 0.5 * std::min(r.x1 - r.x0, r.y1 - r.y0);
}

Point2 line_point(const LineParams& l, double s) {
  const double c = std::cos(l.theta);
  const double sn = std::sin(l.theta);
  return {l.r * c - s * sn, l.r * sn + s * c};
}

namespace {

// Restricts [lo, hi] to { s : a <= f + s d <= b }; returns false if empty.
bool clip_slab(double f, double d, double a, double b, double& lo, double& hi) {
  if (std::fabs(d) < 1e-15) return f >= a && f <= b;
  double t0 = (a - f) / d;
  double t1 = (b - f) / d;
  if (t0 > t1) std::swap(t0, t1);
  lo = std::max(lo, t0);
  hi = std::min(hi, t1);
  return lo < hi;
}

} // namespace

std::optional<Interval> chord_interval(const Window& K, const LineParams& l) {
  const double c = std::cos(l.theta);
  const double sn = std::sin(l.theta);
  if (const auto* d = std::get_if<Disk>(&K.shape())) {
    const double offset = d->center.x * c + d->center.y * sn - l.r;
    const double h2 = d->radius * d->radius - offset * offset;
    if (!(h2 > 0.0)) return std::nullopt;
    const double h = std::sqrt(h2);
    const double mid = -d->center.x * sn + d->center.y * c;
    return Interval{mid - h, mid + h};
  }
  const auto& r = std::get<Rect>(K.shape());
  const Point2 foot{l.r * c, l.r * sn};
  const double dx = -sn;
  const double dy = c;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  if (!clip_slab(foot.x, dx, r.x0, r.x1, lo, hi)) return std::nullopt;
  if (!clip_slab(foot.y, dy, r.y0, r.y1, lo, hi)) return std::nullopt;
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
  return Interval{lo, hi};
}

double chord_length(const Window& K, const LineParams& l) {
  const auto iv = chord_interval(K, l);
  return iv ? iv->length() : 0.0;
}

double support_radius(const Window& K) {
  if (const auto* d = std::get_if<Disk>(&K.shape())) {
    return std::hypot(d->center.x, d->center.y) + d->radius;
  }
  const auto& r = std::get<Rect>(K.shape());
  const double mx = std::max(std::fabs(r.x0), std::fabs(r.x1));
  const double my = std::max(std::fabs(r.y0), std::fabs(r.y1));
  return std::hypot(mx, my);
}

PointS2 Rotation3::apply(const PointS2& v) const {
  return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
          m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

double Rotation3::determinant() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Rotation3 rotation_to(const PointS2& x) {
  if (!(std::fabs(norm(x) - 1.0) <= 1e-9)) {
    throw std::invalid_argument("rotation_to: base point must have unit norm");
  }
  // Axis k = (e3 x x)/|e3 x x| = (-y, x, 0)/s, angle a with cos a = z, sin a = s.
  const double s = std::hypot(x.x, x.y);
  if (s == 0.0) {
    Rotation3 r;
    if (x.z < 0.0) r.m = {1, 0, 0, 0, -1, 0, 0, 0, -1};
    return r;
  }
  const double kx = -x.y / s;
  const double ky = x.x / s;
  const double one_minus_c = 1.0 - x.z;
  // Rodrigues: R = I + sin(a) [k]x + (1 - cos a) [k]x^2 with kz = 0.
  Rotation3 r;
  r.m = {1.0 - one_minus_c * ky * ky, one_minus_c * kx * ky,       s * ky,
         one_minus_c * kx * ky,       1.0 - one_minus_c * kx * kx, -s * kx,
         -s * ky,                     s * kx,                      x.z};
  return r;
}

PointS2 orbit_point(const PointS2& x, double phi) {
  return rotation_to(x).apply({std::cos(phi), std::sin(phi), 0.0});
}

} // namespace coxpp
