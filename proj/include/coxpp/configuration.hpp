#pragma once

#include <algorithm>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "coxpp/geometry.hpp"
#include "coxpp/regions.hpp"

namespace coxpp {

template <class P>
struct AmbientTraits;

template <>
struct AmbientTraits<Point2> {
  static constexpr std::string_view name = "plane";
  static constexpr std::string_view csv_header = "x,y";
  using Region = PlanarRegion;
};

template <>
struct AmbientTraits<PointS2> {
  static constexpr std::string_view name = "sphere";
  static constexpr std::string_view csv_header = "x,y,z";
  using Region = SphereRegion;
};

/// Finite multiset of points of one ambient space. Insertion order is kept
/// for reproducible output; equality and distances are order-insensitive.
template <class P>
class Configuration {
public:
  using point_type = P;
  using region_type = typename AmbientTraits<P>::Region;

  Configuration() = default;
  explicit Configuration(std::vector<P> points) : points_(std::move(points)) {}

  static constexpr std::string_view ambient() { return AmbientTraits<P>::name; }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::span<const P> points() const { return points_; }
  const P& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  void reserve(std::size_t n) { points_.reserve(n); }
  void push(const P& p) { points_.push_back(p); }
  /// Removes one occurrence of p; returns false (and leaves the multiset
  /// unchanged) when p is absent.
  bool erase_one(const P& p) {
    const auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end()) return false;
    points_.erase(it);
    return true;
  }
  /// Removes the point at position i by swapping in the last point.
  void swap_remove(std::size_t i) {
    points_[i] = points_.back();
    points_.pop_back();
  }
  void append(const Configuration& other) {
    points_.insert(points_.end(), other.points_.begin(), other.points_.end());
  }

  std::vector<P> sorted() const {
    std::vector<P> s = points_;
    std::sort(s.begin(), s.end());
    return s;
  }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.size() == b.size() && a.sorted() == b.sorted();
  }

private:
  std::vector<P> points_;
};

/// A draw from a coupling of a model law and a target law.
template <class P>
struct CoupledPair {
  Configuration<P> model;
  Configuration<P> target;
};

using PlanarConfig = Configuration<Point2>;
using SphereConfig = Configuration<PointS2>;

/// phi (+) x
template <class P>
Configuration<P> add(Configuration<P> cfg, const P& p) {
  cfg.push(p);
  return cfg;
}

/// phi (-) x; the identity when x is not in phi.
template <class P>
Configuration<P> remove(Configuration<P> cfg, const P& p) {
  cfg.erase_one(p);
  return cfg;
}

template <class P>
Configuration<P> superpose(Configuration<P> a, const Configuration<P>& b) {
  a.append(b);
  return a;
}

/// |a (-) b| + |b (-) a| as multisets.
template <class P>
std::size_t config_tv_distance(const Configuration<P>& a, const Configuration<P>& b) {
  const auto sa = a.sorted();
  const auto sb = b.sorted();
  std::size_t i = 0, j = 0, common = 0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] < sb[j]) {
      ++i;
    } else if (sb[j] < sa[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return sa.size() + sb.size() - 2 * common;
}

template <class P, class Region>
std::size_t count_in(const Configuration<P>& cfg, const Region& A) {
  std::size_t n = 0;
  for (const auto& p : cfg) n += contains(A, p) ? 1 : 0;
  return n;
}

template <class P>
std::size_t count_in(const Configuration<P>& cfg, const Window& K) {
  return count_in(cfg, as_region(K));
}

/// CSV with header "x,y" or "x,y,z", one point per row, 17 significant digits.
void write_csv(std::ostream& os, const PlanarConfig& cfg);
void write_csv(std::ostream& os, const SphereConfig& cfg);
/// Throws std::runtime_error on a malformed file or a header for the wrong
/// ambient space.
PlanarConfig read_planar_csv(std::istream& is);
SphereConfig read_sphere_csv(std::istream& is);

} // namespace coxpp
