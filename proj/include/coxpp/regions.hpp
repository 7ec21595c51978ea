#pragma once

#include <string>
#include <variant>
#include <vector>

#include "coxpp/geometry.hpp"

namespace coxpp {

struct Annulus {
  Point2 center;
  double r_in = 0.0;
  double r_out = 1.0;
};

/// Spherical cap { p : dot(p, axis) >= min_cos }.
struct Cap {
  PointS2 axis;
  double min_cos = 0.0;
};

/// Latitude band { p : z_lo <= p.z <= z_hi }.
struct Band {
  double z_lo = -1.0;
  double z_hi = 1.0;
};

using PlanarRegion = std::variant<Disk, Rect, Annulus>;
using SphereRegion = std::variant<Cap, Band>;

PlanarRegion as_region(const Window& K);

// All regions are closed.
bool contains(const PlanarRegion& A, const Point2& p);
bool contains(const SphereRegion& A, const PointS2& p);

/// Lebesgue area of a planar region.
double measure(const PlanarRegion& A);
/// Normalised surface measure nu(A), so nu(sphere) = 1.
double measure(const SphereRegion& A);

template <class R>
struct NamedRegion {
  std::string name;
  R region;
};

/// 4x4 grid of cells over the window (over its inscribed square for disks)
/// followed by three concentric annuli of the inscribed disk.
std::vector<NamedRegion<PlanarRegion>> planar_region_preset(const Window& K);

/// Six equal-area latitude bands followed by four caps (nu = 1/8 each)
/// centred on tetrahedral directions.
std::vector<NamedRegion<SphereRegion>> sphere_region_preset();

} // namespace coxpp
