#include <doctest.h>

#include <cmath>

#include "coxpp/coxmodels.hpp"
#include "coxpp/diagnostics.hpp"
#include "coxpp/functionals.hpp"

using namespace coxpp;

TEST_CASE("satellites lie on their orbits") {
  RngStream rng(20, 0);
  for (int i = 0; i < 200; ++i) {
    const auto s = sample_satellites(ModelParams::spherical(5.0, 10), rng);
    REQUIRE(s.orbits.size() == 10);
    REQUIRE(s.parent.size() == s.points.size());
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      CHECK(std::abs(dot(s.points[k], s.orbits[s.parent[k]])) <= 1e-9);
      CHECK(norm(s.points[k]) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("effective intensity") {
  const Window K = Window::disk({0, 0}, 1);
  for (std::size_t n : {10, 100}) {
    const auto e = effective_intensity(ModelKind::Satellites, ModelParams::spherical(2.0, n), K,
                                       20000, StreamKey(21).child(n));
    CHECK(std::abs(e.mean - 2.0) < 3 * e.se);
  }
  // the half-plane sweep yields c/2, not c
  const auto e = effective_intensity(ModelKind::CoxLine, ModelParams::planar(1.0, 100.0), K,
                                     20000, StreamKey(22));
  CHECK(std::abs(e.mean - 0.5) < 3 * e.se);
  CHECK(std::abs(e.mean - 1.0) > 10 * e.se);
  const auto zero = effective_intensity(ModelKind::CoxLine, ModelParams::planar(0.0, 10.0), K,
                                        1000, StreamKey(23));
  CHECK(zero.mean == 0.0);
  CHECK_THROWS(effective_intensity(ModelKind::CoxLine, ModelParams::planar(1.0, 10.0), K, 10,
                                   StreamKey(23)));
}

TEST_CASE("count scales with c") {
  const Window K = Window::rect(-1, -1, 1, 1);
  const auto a = effective_intensity(ModelKind::CoxLine, ModelParams::planar(1.0, 20.0), K, 20000,
                                     StreamKey(24));
  const auto b = effective_intensity(ModelKind::CoxLine, ModelParams::planar(2.0, 20.0), K, 20000,
                                     StreamKey(25));
  CHECK(std::abs(b.mean - 2 * a.mean) < 3 * combined_stderr(b.se, 2 * a.se));
}

TEST_CASE("cox-line points lie on their chords") {
  const Window K = Window::rect(0, 0, 2, 1);
  RngStream rng(26, 0);
  for (int i = 0; i < 200; ++i) {
    const auto s = sample_cox_line(ModelParams::planar(3.0, 10.0), K, rng);
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      const auto& p = s.points[k];
      const auto& l = s.lines[s.parent[k]];
      REQUIRE(l.chord.has_value());
      CHECK(K.contains(p));
      CHECK(p.x * std::cos(l.line.theta) + p.y * std::sin(l.line.theta) ==
            doctest::Approx(l.line.r).epsilon(1e-12));
    }
    for (const auto& l : s.lines) CHECK(l.line.r <= support_radius(K));
  }
}

TEST_CASE("line truncation at the support radius is exact") {
  const Window K = Window::disk({0.5, 0}, 1);
  const auto params = ModelParams::planar(2.0, 5.0);
  const std::size_t reps = 20000;
  auto counts = [&](std::optional<double> rmax, std::uint64_t tag) {
    CountHistogram h("window");
    const auto v = map_replicates(reps, StreamKey(27).child(tag), [&](RngStream& rng, std::size_t) {
      return sample_cox_line(params, K, rng, rmax).points.size();
    });
    for (auto c : v) h.add(c);
    return h;
  };
  const auto tight = counts(std::nullopt, 1);
  const auto loose = counts(2 * support_radius(K), 2);
  CHECK(tv_distance(tight, loose) <= tv_noise_floor(reps));
}

TEST_CASE("marks on disjoint chord segments are independent Poisson") {
  // fix one line through the unit square and resample the marks
  const auto l = make_line(0.5, 0.0);
  const Window K = Window::rect(0, 0, 1, 1);
  const auto iv = *chord_interval(K, l);
  const double mu = 3.0;
  RngStream rng(28, 0);
  const double mid = 0.5 * (iv.lo + iv.hi);
  std::vector<double> a(50000), b(50000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto pts = sample_ppp_interval(iv.lo, iv.hi, mu, rng);
    for (double s : pts) (s < mid ? a[i] : b[i]) += 1.0;
  }
  const auto ea = mean_stderr(a), eb = mean_stderr(b);
  CHECK(std::abs(ea.mean - 1.5) < 4 * ea.se);
  CHECK(std::abs(eb.mean - 1.5) < 4 * eb.se);
  double cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) cov += (a[i] - ea.mean) * (b[i] - eb.mean);
  cov /= static_cast<double>(a.size());
  CHECK(std::abs(cov) < 4 * 1.5 / std::sqrt(static_cast<double>(a.size())));
}

TEST_CASE("collision probability") {
  const auto p = ModelParams::spherical(2.0, 20);
  const double mu = p.mu_n;
  CHECK(satellite_collision_probability(p) ==
        doctest::Approx(1 - std::pow(std::exp(-mu) * (1 + mu), 20)).epsilon(1e-12));
  const auto hits = map_replicates(100000, StreamKey(29), [&](RngStream& rng, std::size_t) {
    const auto s = sample_satellites(p, rng);
    std::vector<int> per(p.n, 0);
    for (auto k : s.parent) ++per[k];
    for (int c : per) {
      if (c >= 2) return 1.0;
    }
    return 0.0;
  });
  const auto e = mean_stderr(hits);
  CHECK(std::abs(e.mean - satellite_collision_probability(p)) < 4 * e.se);
}

TEST_CASE("cluster moments agree with simulation") {
  const Window K = Window::disk({0, 0}, 1);
  const auto params = ModelParams::planar(1.0, 5.0);
  const auto m = cox_line_cluster_moments(params, K);
  const auto v = map_replicates(50000, StreamKey(30), [&](RngStream& rng, std::size_t) {
    const auto s = sample_cox_line(params, K, rng);
    std::vector<int> per(s.lines.size(), 0);
    for (auto k : s.parent) ++per[k];
    double lines = 0, pts = 0;
    for (int c : per) {
      if (c >= 2) {
        lines += 1;
        pts += c;
      }
    }
    return std::pair{lines, pts};
  });
  std::vector<double> lines, pts;
  for (auto [a, b] : v) {
    lines.push_back(a);
    pts.push_back(b);
  }
  const auto el = mean_stderr(lines), ep = mean_stderr(pts);
  CHECK(std::abs(el.mean - m.multi_line_mean) < 4 * el.se);
  CHECK(std::abs(ep.mean - m.multi_point_mean) < 4 * ep.se);
  CHECK(m.difference_probability ==
        doctest::Approx(-std::expm1(-(m.multi_line_mean + m.multi_point_mean))));
}

// The coupled estimator of a mean gap must agree with the plain two-sample
// estimator; the latter needs many more replicates for the same precision.
TEST_CASE("coupled satellite gap matches the independent estimate") {
  const auto params = ModelParams::spherical(2.0, 10);
  const auto F = functionals::close_pair<PointS2>(0.5);
  const auto pairs = map_replicates(20000, StreamKey(31), [&](RngStream& rng, std::size_t) {
    const auto pr = sample_satellite_pair_given_collision(params, rng);
    return F(pr.model) - F(pr.target);
  });
  const double w = satellite_collision_probability(params);
  const auto ec = mean_stderr(pairs);
  const std::size_t reps = 200000;
  const auto model = map_replicates(reps, StreamKey(32), [&](RngStream& rng, std::size_t) {
    return F(sample_satellites(params, rng).points);
  });
  const auto target = map_replicates(reps, StreamKey(33), [&](RngStream& rng, std::size_t) {
    return F(sample_ppp_sphere(2.0, rng));
  });
  const auto em = mean_stderr(model), et = mean_stderr(target);
  const double gap = em.mean - et.mean;
  const double se = combined_stderr(combined_stderr(em.se, et.se), w * ec.se);
  CHECK(std::abs(w * ec.mean - gap) < 3.5 * se);
  CHECK(w * ec.mean > 5 * w * ec.se);
}

TEST_CASE("coupled cox-line gap matches the independent estimate") {
  const Window K = Window::disk({0, 0}, 1);
  const auto params = ModelParams::planar(1.0, 5.0);
  const auto m = cox_line_cluster_moments(params, K);
  const auto F = functionals::close_pair<Point2>(0.4);
  const auto pairs = map_replicates(20000, StreamKey(34), [&](RngStream& rng, std::size_t) {
    const auto pr = sample_cox_line_pair_given_difference(params, K, m, rng);
    for (const auto& p : pr.model) REQUIRE(K.contains(p));
    for (const auto& p : pr.target) REQUIRE(K.contains(p));
    return F(pr.model) - F(pr.target);
  });
  const auto ec = mean_stderr(pairs);
  const double w = m.difference_probability;
  const std::size_t reps = 100000;
  const auto model = map_replicates(reps, StreamKey(35), [&](RngStream& rng, std::size_t) {
    return F(sample_cox_line(params, K, rng).points);
  });
  const auto target = map_replicates(reps, StreamKey(36), [&](RngStream& rng, std::size_t) {
    return F(sample_ppp_window(K, 0.5, rng));
  });
  const auto em = mean_stderr(model), et = mean_stderr(target);
  const double se = combined_stderr(combined_stderr(em.se, et.se), w * ec.se);
  CHECK(std::abs(w * ec.mean - (em.mean - et.mean)) < 3.5 * se);
}

TEST_CASE("coupled samplers reject degenerate parameters") {
  RngStream rng(37, 0);
  CHECK_THROWS(sample_satellite_pair_given_collision(ModelParams::spherical(0.0, 10), rng));
}
