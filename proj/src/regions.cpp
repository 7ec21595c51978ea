#include "coxpp/regions.hpp"

#include <cmath>
#include <string>

namespace coxpp {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
} // namespace

PlanarRegion as_region(const Window& K) {
  return std::visit([](const auto& s) -> PlanarRegion { return s; }, K.shape());
}

bool contains(const PlanarRegion& A, const Point2& p) {
  return std::visit(
      overloaded{
          [&](const Disk& d) {
            const double dx = p.x - d.center.x;
            const double dy = p.y - d.center.y;
            return dx * dx + dy * dy <= d.radius * d.radius;
          },
          [&](const Rect& r) { return p.x >= r.x0 && p.x <= r.x1 && p.y >= r.y0 && p.y <= r.y1; },
          [&](const Annulus& a) {
            const double dx = p.x - a.center.x;
            const double dy = p.y - a.center.y;
            const double d2 = dx * dx + dy * dy;
            return d2 >= a.r_in * a.r_in && d2 <= a.r_out * a.r_out;
          }},
      A);
}

bool contains(const SphereRegion& A, const PointS2& p) {
  return std::visit(overloaded{[&](const Cap& c) { return dot(p, c.axis) >= c.min_cos; },
                               [&](const Band& b) { return p.z >= b.z_lo && p.z <= b.z_hi; }},
                    A);
}

double measure(const PlanarRegion& A) {
  return std::visit(
      overloaded{[](const Disk& d) { return std::numbers::pi * d.radius * d.radius; },
                 [](const Rect& r) { return (r.x1 - r.x0) * (r.y1 - r.y0); },
                 [](const Annulus& a) {
                   return std::numbers::pi * (a.r_out * a.r_out - a.r_in * a.r_in);
                 }},
      A);
}

double measure(const SphereRegion& A) {
  return std::visit(overloaded{[](const Cap& c) { return 0.5 * (1.0 - c.min_cos); },
                               [](const Band& b) { return 0.5 * (b.z_hi - b.z_lo); }},
                    A);
}

std::vector<NamedRegion<PlanarRegion>> planar_region_preset(const Window& K) {
  std::vector<NamedRegion<PlanarRegion>> out;
  Rect box;
  if (const auto* r = std::get_if<Rect>(&K.shape())) {
    box = *r;
  } else {
    const auto& d = std::get<Disk>(K.shape());
    const double h = d.radius / std::sqrt(2.0);
    box = {d.center.x - h, d.center.y - h, d.center.x + h, d.center.y + h};
  }
  const double wx = (box.x1 - box.x0) / 4.0;
  const double wy = (box.y1 - box.y0) / 4.0;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) {
      out.push_back({"cell_" + std::to_string(i) + std::to_string(j),
                     Rect{box.x0 + i * wx, box.y0 + j * wy, box.x0 + (i + 1) * wx,
                          box.y0 + (j + 1) * wy}});
    }
  }
  const Point2 c = K.center();
  const double rho = K.inscribed_radius();
  for (int k = 0; k < 3; ++k) {
    out.push_back({"annulus_" + std::to_string(k), Annulus{c, rho * k / 3.0, rho * (k + 1) / 3.0}});
  }
  return out;
}

std::vector<NamedRegion<SphereRegion>> sphere_region_preset() {
  std::vector<NamedRegion<SphereRegion>> out;
  for (int k = 0; k < 6; ++k) {
    out.push_back({"band_" + std::to_string(k), Band{-1.0 + k / 3.0, -1.0 + (k + 1) / 3.0}});
  }
  const double s = 1.0 / std::sqrt(3.0);
  const PointS2 axes[4] = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  for (int k = 0; k < 4; ++k) {
    out.push_back({"cap_" + std::to_string(k), Cap{axes[k], 0.75}});
  }
  return out;
}

} // namespace coxpp
