#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

namespace coxpp {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;
};

/// Point on the unit sphere. The struct does not enforce the unit norm;
/// operations that need it validate their arguments.
struct PointS2 {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  friend bool operator==(const PointS2&, const PointS2&) = default;
  friend auto operator<=>(const PointS2&, const PointS2&) = default;
};

double dot(const PointS2& a, const PointS2& b);
double norm(const PointS2& a);
double distance(const Point2& a, const Point2& b);

/// Line D(r, theta) = { p : p.x cos(theta) + p.y sin(theta) = r }, with
/// arc-length coordinate s measured from the foot of the perpendicular.
struct LineParams {
  double r = 0.0;
  double theta = 0.0;
};

/// Validates r >= 0 and reduces theta into [0, 2pi).
LineParams make_line(double r, double theta);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct Disk {
  Point2 center;
  double radius = 1.0;
};

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;
};

/// Compact convex observation window. Zero-area (degenerate) windows are
/// representable; samplers treat them as empty.
class Window {
public:
  Window() : shape_(Disk{}) {}
  static Window disk(Point2 center, double radius);
  static Window rect(double x0, double y0, double x1, double y1);

  /// Parses "disk:cx,cy,R" or "rect:x0,y0,x1,y1".
  static Window parse(const std::string& descriptor);
  std::string describe() const;

  const std::variant<Disk, Rect>& shape() const { return shape_; }
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }

  double area() const;
  bool contains(const Point2& p) const;
  Point2 center() const;
  /// Radius of the largest disk centred at center() that fits in the window.
  double inscribed_radius() const;

private:
  explicit Window(std::variant<Disk, Rect> s) : shape_(s) {}
  std::variant<Disk, Rect> shape_;
};

Point2 line_point(const LineParams& l, double s);

/// Arc-length interval of K along the line; empty when the line misses K or
/// meets it in a set of zero length.
std::optional<Interval> chord_interval(const Window& K, const LineParams& l);
double chord_length(const Window& K, const LineParams& l);

/// max_{p in K} |p|; lines with r > support_radius(K) miss K.
double support_radius(const Window& K);

/// Row-major 3x3 rotation.
struct Rotation3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  PointS2 apply(const PointS2& v) const;
  double operator()(int row, int col) const { return m[3 * row + col]; }
  double determinant() const;
};

/// Minimal geodesic rotation taking e3 to x (axis e3 x x). For x = -e3 the
/// convention is the rotation by pi about e1, i.e. diag(1, -1, -1).
/// Throws std::invalid_argument unless | |x| - 1 | <= 1e-9.
Rotation3 rotation_to(const PointS2& x);

/// rotation_to(x) applied to (cos phi, sin phi, 0): a point of the great
/// circle orthogonal to x.
PointS2 orbit_point(const PointS2& x, double phi);

} // namespace coxpp
