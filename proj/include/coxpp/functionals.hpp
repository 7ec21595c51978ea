#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "coxpp/configuration.hpp"
#include "coxpp/regions.hpp"

namespace coxpp {

/// Named map from configurations to reals. `lipschitz` certifies
/// |F(w + x) - F(w)| <= 1 for all w, x, i.e. F is 1-Lipschitz for
/// config_tv_distance. Raw counts are Lipschitz but unbounded.
template <class P>
struct Functional {
  std::string name;
  bool lipschitz = true;
  bool bounded = true;
  std::function<double(const Configuration<P>&)> eval;

  double operator()(const Configuration<P>& w) const { return eval(w); }
};

/// Two-argument functional F(x, w) for the Campbell-Mecke identities.
template <class P>
struct PairFunctional {
  std::string name;
  std::function<double(const P&, const Configuration<P>&)> eval;

  double operator()(const P& x, const Configuration<P>& w) const { return eval(x, w); }
};

inline double point_distance(const Point2& a, const Point2& b) { return distance(a, b); }
/// Great-circle distance.
inline double point_distance(const PointS2& a, const PointS2& b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

namespace functionals {

template <class P>
Functional<P> constant(double v) {
  return {"constant", true, true, [v](const Configuration<P>&) { return v; }};
}

template <class P>
Functional<P> raw_count(const NamedRegion<typename AmbientTraits<P>::Region>& A) {
  return {"count(" + A.name + ")", true, false, [r = A.region](const Configuration<P>& w) {
            return static_cast<double>(count_in(w, r));
          }};
}

/// min(|w cap A|, m)
template <class P>
Functional<P> truncated_count(const NamedRegion<typename AmbientTraits<P>::Region>& A,
                              std::size_t m) {
  return {"min(count(" + A.name + ")," + std::to_string(m) + ")", true, true,
          [r = A.region, m](const Configuration<P>& w) {
            return static_cast<double>(std::min(count_in(w, r), m));
          }};
}

inline std::string describe_set(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it != s.begin()) out += ' ';
    out += std::to_string(*it);
  }
  return out + "}";
}

/// 1{|w cap A| in S}
template <class P>
Functional<P> count_indicator(const NamedRegion<typename AmbientTraits<P>::Region>& A,
                              std::set<std::size_t> S) {
  return {"1{count(" + A.name + ") in " + describe_set(S) + "}", true, true,
          [r = A.region, S = std::move(S)](const Configuration<P>& w) {
            return S.count(count_in(w, r)) ? 1.0 : 0.0;
          }};
}

/// 1{|w cap A| >= k}
template <class P>
Functional<P> count_at_least(const NamedRegion<typename AmbientTraits<P>::Region>& A,
                             std::size_t k) {
  return {"1{count(" + A.name + ") >= " + std::to_string(k) + "}", true, true,
          [r = A.region, k](const Configuration<P>& w) {
            return count_in(w, r) >= k ? 1.0 : 0.0;
          }};
}

/// 1{|w cap A| in SA} * 1{|w cap B| in SB}
template <class P>
Functional<P> indicator_product(const NamedRegion<typename AmbientTraits<P>::Region>& A,
                                std::set<std::size_t> SA,
                                const NamedRegion<typename AmbientTraits<P>::Region>& B,
                                std::set<std::size_t> SB) {
  return {"1{count(" + A.name + ") in " + describe_set(SA) + "}*1{count(" + B.name + ") in " +
              describe_set(SB) + "}",
          true, true,
          [ra = A.region, rb = B.region, SA = std::move(SA),
           SB = std::move(SB)](const Configuration<P>& w) {
            return (SA.count(count_in(w, ra)) && SB.count(count_in(w, rb))) ? 1.0 : 0.0;
          }};
}

/// 1{some two points of w are within distance delta}
template <class P>
Functional<P> close_pair(double delta) {
  return {"1{close_pair<=" + std::to_string(delta) + "}", true, true,
          [delta](const Configuration<P>& w) {
            const auto pts = w.points();
            for (std::size_t i = 0; i < pts.size(); ++i) {
              for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (point_distance(pts[i], pts[j]) <= delta) return 1.0;
              }
            }
            return 0.0;
          }};
}

} // namespace functionals

namespace pair_functionals {

template <class P>
PairFunctional<P> one() {
  return {"1", [](const P&, const Configuration<P>&) { return 1.0; }};
}

/// 1{x in A}
template <class P>
PairFunctional<P> indicator(const NamedRegion<typename AmbientTraits<P>::Region>& A) {
  return {"1{x in " + A.name + "}", [r = A.region](const P& x, const Configuration<P>&) {
            return contains(r, x) ? 1.0 : 0.0;
          }};
}

/// |w cap A|
template <class P>
PairFunctional<P> count(const NamedRegion<typename AmbientTraits<P>::Region>& A) {
  return {"count(" + A.name + ")", [r = A.region](const P&, const Configuration<P>& w) {
            return static_cast<double>(count_in(w, r));
          }};
}

/// 1{x in A} |w cap A|
template <class P>
PairFunctional<P> indicator_times_count(const NamedRegion<typename AmbientTraits<P>::Region>& A) {
  return {"1{x in " + A.name + "}*count(" + A.name + ")",
          [r = A.region](const P& x, const Configuration<P>& w) {
            return contains(r, x) ? static_cast<double>(count_in(w, r)) : 0.0;
          }};
}

/// 1{some point of w other than x lies within delta of x}
template <class P>
PairFunctional<P> near_neighbour(double delta) {
  return {"1{nn(x)<=" + std::to_string(delta) + "}",
          [delta](const P& x, const Configuration<P>& w) {
            for (const auto& y : w) {
              if (!(y == x) && point_distance(x, y) <= delta) return 1.0;
            }
            return 0.0;
          }};
}

} // namespace pair_functionals

/// Lipschitz test family over the planar region preset of K plus close-pair
/// indicators at several scales.
std::vector<Functional<Point2>> planar_test_family(const Window& K);
/// Same over the sphere region preset.
std::vector<Functional<PointS2>> sphere_test_family();

/// Functionals used by the Glauber checks.
std::vector<Functional<Point2>> glauber_registry(const Window& K);

} // namespace coxpp
