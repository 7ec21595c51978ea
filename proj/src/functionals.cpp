#include "coxpp/functionals.hpp"

namespace coxpp {

namespace {

template <class P>
void add_count_family(std::vector<Functional<P>>& out,
                      const NamedRegion<typename AmbientTraits<P>::Region>& A) {
  for (std::size_t k = 0; k <= 2; ++k) out.push_back(functionals::count_indicator<P>(A, {k}));
  for (std::size_t k = 1; k <= 3; ++k) out.push_back(functionals::count_at_least<P>(A, k));
}

} // namespace

std::vector<Functional<Point2>> planar_test_family(const Window& K) {
  std::vector<Functional<Point2>> out;
  for (const auto& region : planar_region_preset(K)) add_count_family<Point2>(out, region);
  const double scale = K.inscribed_radius();
  for (double f : {0.1, 0.2, 0.4, 0.8}) out.push_back(functionals::close_pair<Point2>(f * scale));
  return out;
}

std::vector<Functional<PointS2>> sphere_test_family() {
  std::vector<Functional<PointS2>> out;
  for (const auto& region : sphere_region_preset()) add_count_family<PointS2>(out, region);
  for (double delta : {0.1, 0.25, 0.5, 0.75}) out.push_back(functionals::close_pair<PointS2>(delta));
  return out;
}

std::vector<Functional<Point2>> glauber_registry(const Window& K) {
  const auto regions = planar_region_preset(K);
  // cell_00 and cell_33 are opposite corners of the grid; annulus_2 is the outer ring.
  const auto& a = regions[0];
  const auto& b = regions[15];
  const auto& ring = regions[18];
  std::vector<Functional<Point2>> out;
  out.push_back(functionals::truncated_count<Point2>(ring, 2));
  out.push_back(functionals::count_indicator<Point2>(ring, {1, 2}));
  out.push_back(functionals::indicator_product<Point2>(a, {0}, b, {1}));
  out.push_back(functionals::close_pair<Point2>(0.25 * K.inscribed_radius()));
  out.push_back(functionals::raw_count<Point2>({"window", as_region(K)}));
  return out;
}

} // namespace coxpp
