#include <doctest.h>

#include <cmath>
#include <sstream>

#include "coxpp/parallel.hpp"
#include "coxpp/pointprocess.hpp"
#include "coxpp/stats.hpp"

using namespace coxpp;

namespace {

PlanarConfig random_small(RngStream& rng) {
  // points on a coarse lattice so that repeats occur
  PlanarConfig c;
  const auto n = rng.below(5);
  for (std::uint64_t i = 0; i < n; ++i) {
    c.push({static_cast<double>(rng.below(3)), static_cast<double>(rng.below(2))});
  }
  return c;
}

} // namespace

TEST_CASE("add, remove, superpose") {
  PlanarConfig w({{0, 0}, {1, 1}});
  CHECK(add(w, Point2{2, 2}).size() == 3);
  CHECK(remove(w, Point2{1, 1}).size() == 1);
  CHECK(remove(w, Point2{5, 5}) == w);
  CHECK(superpose(w, w).size() == 4);
  CHECK(PlanarConfig({{1, 1}, {0, 0}}) == w);
  CHECK_FALSE(PlanarConfig({{1, 1}, {1, 1}}) == w);
}

TEST_CASE("config_tv_distance is a metric") {
  RngStream rng(5, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_small(rng), b = random_small(rng), c = random_small(rng);
    CHECK(config_tv_distance(a, a) == 0);
    CHECK(config_tv_distance(a, b) == config_tv_distance(b, a));
    CHECK((config_tv_distance(a, b) == 0) == (a == b));
    CHECK(config_tv_distance(a, c) <= config_tv_distance(a, b) + config_tv_distance(b, c));
  }
  PlanarConfig x({{0, 0}});
  CHECK(config_tv_distance(x, add(x, Point2{1, 0})) == 1);
}

TEST_CASE("PPP counts and uniformity") {
  const Window K = Window::rect(0, 0, 2, 1);
  const double lambda = 3.0;
  const auto regions = planar_region_preset(K);
  const auto samples = map_replicates(40000, StreamKey(6), [&](RngStream& rng, std::size_t) {
    return sample_ppp_window(K, lambda, rng);
  });
  std::vector<double> total, a, b;
  for (const auto& s : samples) {
    for (const auto& p : s) REQUIRE(K.contains(p));
    total.push_back(static_cast<double>(s.size()));
    a.push_back(static_cast<double>(count_in(s, regions[0].region)));
    b.push_back(static_cast<double>(count_in(s, regions[15].region)));
    CHECK(count_in(s, K) == s.size());
    std::size_t cells = 0;
    for (int k = 0; k < 16; ++k) cells += count_in(s, regions[k].region);
    CHECK(cells == s.size());
  }
  const auto et = mean_stderr(total);
  CHECK(std::abs(et.mean - lambda * K.area()) < 4 * et.se);
  const auto ea = mean_stderr(a);
  CHECK(std::abs(ea.mean - lambda * K.area() / 16) < 4 * ea.se);
  // disjoint regions are uncorrelated
  const auto eb = mean_stderr(b);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ea.mean) * (b[i] - eb.mean);
    va += (a[i] - ea.mean) * (a[i] - ea.mean);
    vb += (b[i] - eb.mean) * (b[i] - eb.mean);
  }
  CHECK(std::abs(cov / std::sqrt(va * vb)) < 3 / std::sqrt(static_cast<double>(a.size())));
}

TEST_CASE("PPP on disks and degenerate windows") {
  RngStream rng(7, 0);
  const Window D = Window::disk({1, -1}, 0.5);
  for (int i = 0; i < 100; ++i) {
    for (const auto& p : sample_ppp_window(D, 20, rng)) REQUIRE(D.contains(p));
  }
  CHECK(sample_ppp_window(Window::rect(0, 0, 0, 1), 10, rng).empty());
  CHECK(sample_ppp_window(D, 0.0, rng).empty());
  CHECK_THROWS_AS(sample_ppp_window(D, -1.0, rng), std::invalid_argument);
}

TEST_CASE("1-D PPP on an interval") {
  RngStream rng(8, 0);
  std::vector<double> n(20000);
  for (auto& v : n) {
    const auto pts = sample_ppp_interval(-1.0, 2.0, 1.5, rng);
    for (double s : pts) REQUIRE((s >= -1.0 && s <= 2.0));
    v = static_cast<double>(pts.size());
  }
  const auto e = mean_stderr(n);
  CHECK(std::abs(e.mean - 4.5) < 4 * e.se);
  CHECK(sample_ppp_interval(1.0, 1.0, 5.0, rng).empty());
  CHECK_THROWS_AS(sample_ppp_interval(2.0, 1.0, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_ppp_interval(0.0, 1.0, -1.0, rng), std::invalid_argument);
}

TEST_CASE("uniform points on the sphere") {
  RngStream rng(9, 0);
  std::vector<double> z(100000), z2(100000), x(100000);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto p = sample_uniform_sphere(rng);
    REQUIRE(norm(p) == doctest::Approx(1.0).epsilon(1e-14));
    z[i] = p.z;
    z2[i] = p.z * p.z;
    x[i] = p.x;
  }
  const auto ez = mean_stderr(z), ez2 = mean_stderr(z2), ex = mean_stderr(x);
  CHECK(std::abs(ez.mean) < 4 * ez.se);
  CHECK(std::abs(ex.mean) < 4 * ex.se);
  CHECK(std::abs(ez2.mean - 1.0 / 3.0) < 4 * ez2.se);
}

TEST_CASE("BPP and thinning") {
  RngStream rng(10, 0);
  const Window K = Window::rect(0, 0, 1, 1);
  const auto w = sample_bpp(25, [&](RngStream& r) { return sample_uniform(K, r); }, rng);
  CHECK(w.size() == 25);
  CHECK(thin(w, 1.0, rng) == w);
  CHECK(thin(w, 0.0, rng).empty());
  CHECK_THROWS_AS(thin(w, 1.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(thin(w, -0.1, rng), std::invalid_argument);
  std::vector<double> kept(20000);
  for (auto& k : kept) k = static_cast<double>(thin(w, 0.3, rng).size());
  const auto e = mean_stderr(kept);
  CHECK(std::abs(e.mean - 7.5) < 4 * e.se);
}

TEST_CASE("reproducible samples") {
  const Window K = Window::disk({0, 0}, 1);
  RngStream a(11, 4), b(11, 4);
  const auto x = sample_ppp_window(K, 50, a);
  const auto y = sample_ppp_window(K, 50, b);
  REQUIRE(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == y[i]);
}

TEST_CASE("CSV round trip") {
  RngStream rng(12, 0);
  const auto w = sample_ppp_window(Window::rect(-1, -1, 1, 1), 30, rng);
  std::stringstream ss;
  write_csv(ss, w);
  const auto back = read_planar_csv(ss);
  REQUIRE(back.size() == w.size());
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(back[i] == w[i]);

  SphereConfig s;
  for (int i = 0; i < 10; ++i) s.push(sample_uniform_sphere(rng));
  std::stringstream ts;
  write_csv(ts, s);
  const auto sback = read_sphere_csv(ts);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(sback[i] == s[i]);

  std::stringstream wrong;
  write_csv(wrong, s);
  CHECK_THROWS_AS(read_planar_csv(wrong), std::runtime_error);
  std::stringstream bad("x,y\n1,abc\n");
  CHECK_THROWS_AS(read_planar_csv(bad), std::runtime_error);
}

TEST_CASE("model parameters") {
  const auto p = ModelParams::planar(2.0, 8.0);
  CHECK(p.mu_n == doctest::Approx(0.25));
  CHECK(p.has_planar_coupling());
  const auto s = ModelParams::spherical(2.0, 40);
  CHECK(s.mu_n == doctest::Approx(0.05));
  CHECK(s.has_spherical_coupling());
  CHECK_THROWS_AS(ModelParams::planar(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::planar(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::spherical(1.0, 0), std::invalid_argument);
  ModelParams broken = p;
  broken.mu_n = 1.0;
  CHECK_FALSE(broken.has_planar_coupling());
}
