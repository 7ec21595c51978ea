#include <doctest.h>

#include <cmath>

#include "coxpp/glauber.hpp"

using namespace coxpp;

namespace {

const Window kSquare = Window::rect(0, 0, 1, 1);

PlanarConfig start() {
  return PlanarConfig({{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.2}, {0.3, 0.8}, {0.6, 0.6}, {0.2, 0.4}});
}

} // namespace

TEST_CASE("trajectory basics") {
  GlauberSpec spec{kSquare, 5.0, 0.0};
  RngStream rng(60, 0);
  CHECK(glauber_simulate(start(), spec, rng) == start());
  spec.horizon = 3.0;
  for (const auto& p : glauber_simulate(start(), spec, rng)) CHECK(kSquare.contains(p));
  CHECK_THROWS_AS(glauber_simulate(PlanarConfig({{2.0, 2.0}}), spec, rng), std::invalid_argument);
  GlauberSpec bad{kSquare, 0.0, 1.0};
  CHECK_THROWS_AS(glauber_simulate(start(), bad, rng), std::invalid_argument);
}

TEST_CASE("mean count from the empty state") {
  for (double t : {0.3, 1.0, 3.0}) {
    GlauberSpec spec{kSquare, 5.0, t};
    const auto n = map_replicates(20000, StreamKey(61).child(static_cast<int>(t * 10)),
                                  [&](RngStream& rng, std::size_t) {
                                    return static_cast<double>(glauber_simulate({}, spec, rng).size());
                                  });
    const auto e = mean_stderr(n);
    CHECK(std::abs(e.mean - 5.0 * (1 - std::exp(-t))) < 4 * e.se);
  }
}

TEST_CASE("semigroup estimate") {
  GlauberSpec spec{kSquare, 5.0, 0.0};
  const auto F = functionals::truncated_count<Point2>({"w", as_region(kSquare)}, 4);
  const auto at0 = semigroup_estimate(F, start(), 0.0, spec, 100, StreamKey(62));
  CHECK(at0.mean == F(start()));
  CHECK(at0.se == 0.0);
  // large t forgets the start
  const auto late = semigroup_estimate(F, start(), 30.0, spec, 20000, StreamKey(63));
  const auto fresh = map_replicates(20000, StreamKey(64), [&](RngStream& rng, std::size_t) {
    return F(sample_ppp_window(kSquare, 5.0, rng));
  });
  const auto ef = mean_stderr(fresh);
  CHECK(std::abs(late.mean - ef.mean) < 3 * combined_stderr(late.se, ef.se));
}

TEST_CASE("trajectories match the thinning representation") {
  const auto regions = planar_region_preset(kSquare);
  GlauberSpec spec{kSquare, 5.0, 0.0};
  for (const auto& r : semigroup_trajectory_consistency(start(), spec, regions, 1000, StreamKey(65), 2)) {
    CHECK(r.tv == 0.0);
  }
  spec.horizon = 0.7;
  for (const auto& r : semigroup_trajectory_consistency(start(), spec, regions, 10000, StreamKey(66), 4)) {
    CAPTURE(r.region);
    CHECK(r.pass);
  }
  CHECK_THROWS(semigroup_trajectory_consistency(start(), spec, regions, 10, StreamKey(66)));
}

TEST_CASE("semigroup property") {
  const auto regions = planar_region_preset(kSquare);
  GlauberSpec spec{kSquare, 5.0, 0.0};
  for (const auto& r : semigroup_property_check(start(), spec, 0.4, 0.8, regions, 20000, StreamKey(67))) {
    CAPTURE(r.region);
    CHECK(r.pass);
  }
}

TEST_CASE("generator") {
  GlauberSpec spec{kSquare, 5.0, 0.0};
  RngStream rng(68, 0);
  const auto c = generator_apply(functionals::constant<Point2>(2.0), start(), spec, 8, rng);
  CHECK(c.mean == 0.0);
  const auto n = generator_apply(functionals::raw_count<Point2>({"w", as_region(kSquare)}), start(),
                                 spec, 8, rng);
  CHECK(n.mean == doctest::Approx(5.0 - 6.0));
  CHECK(n.se == 0.0);

  // E LF(Phi) = 0 at stationarity
  const auto F = functionals::count_indicator<Point2>(planar_region_preset(kSquare)[18], {1, 2});
  const auto v = map_replicates(20000, StreamKey(69), [&](RngStream& r, std::size_t) {
    return generator_apply(F, sample_ppp_window(kSquare, 5.0, r), spec, 4, r).mean;
  });
  const auto e = mean_stderr(v);
  CHECK(std::abs(e.mean) < 3 * e.se);
}

TEST_CASE("contraction") {
  GlauberSpec spec{kSquare, 5.0, 0.0};
  const Point2 z{0.45, 0.55};
  for (const auto& F : glauber_registry(kSquare)) {
    const auto at0 = contraction_estimate(F, start(), z, 0.0, spec, 200, StreamKey(70));
    CHECK(at0.mean == std::abs(F(add(start(), z)) - F(start())));
    CHECK(at0.mean <= 1.0);
    for (double t : {0.5, 1.0, 2.0}) {
      const auto e = contraction_estimate(F, start(), z, t, spec, 5000, StreamKey(71));
      CHECK(e.mean <= std::exp(-t) + 3 * e.se);
    }
  }
  CHECK(contraction_estimate(functionals::constant<Point2>(1), start(), z, 1.0, spec, 100,
                             StreamKey(72))
            .mean == 0.0);
  CHECK_THROWS(contraction_estimate(functionals::constant<Point2>(1), start(), {3, 3}, 1.0, spec,
                                    100, StreamKey(72)));
}
