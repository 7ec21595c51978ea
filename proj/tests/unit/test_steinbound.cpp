#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "coxpp/steinbound.hpp"

using namespace coxpp;
using std::numbers::pi;

namespace {

// Crofton: the integral of the squared chord over all lines equals the
// double integral of 1/|x - y| over K x K; for the unit square that is
// 4 log(1 + sqrt 2) - (4/3)(sqrt 2 - 1).
double unit_square_oracle() {
  const double s2 = std::sqrt(2.0);
  return (4 * std::log(1 + s2) - 4.0 / 3.0 * (s2 - 1)) / pi;
}

} // namespace

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  const auto n = gauss_legendre_nodes(8);
  double w = 0, x6 = 0;
  for (std::size_t i = 0; i < n.x.size(); ++i) {
    w += n.w[i];
    x6 += n.w[i] * std::pow(n.x[i], 6);
  }
  CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x6 == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("unit disk constant") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto q = chord_square_integral(Window::disk({0, 0}, 1));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(std::abs(q.value - 16.0 / 3.0) <= 1e-8);
  CHECK(secs < 1.0);
  CHECK(*chord_square_closed_form(Window::disk({0, 0}, 1)) == doctest::Approx(16.0 / 3.0));
}

TEST_CASE("offset disks scale as R^3") {
  for (double R : {0.5, 2.0}) {
    const Window K = Window::disk({1.5, -0.7}, R);
    const auto q = chord_square_integral(K);
    CHECK(std::abs(q.value - 16 * R * R * R / 3) <= 1e-8 * std::max(1.0, R * R * R));
  }
}

TEST_CASE("square against the Crofton oracle") {
  CHECK(std::abs(chord_square_integral(Window::rect(0, 0, 1, 1)).value - unit_square_oracle()) <= 1e-8);
  CHECK(std::abs(chord_square_integral(Window::rect(-3, 2, -2, 3)).value - unit_square_oracle()) <= 1e-8);
  CHECK_FALSE(chord_square_closed_form(Window::rect(0, 0, 1, 1)).has_value());
}

TEST_CASE("rotation by a quarter turn leaves rectangles unchanged") {
  const double a = chord_square_integral(Window::rect(0.2, 0.1, 1.2, 2.1)).value;
  const double b = chord_square_integral(Window::rect(-2.1, 0.2, -0.1, 1.2)).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("monotone in the window") {
  double prev = 0.0;
  for (double R : {0.2, 0.5, 0.9, 1.0}) {
    const double v = chord_square_integral(Window::disk({0.1, 0}, R)).value;
    CHECK(v > prev);
    prev = v;
  }
  const double inner = chord_square_integral(Window::rect(-0.5, -0.5, 0.5, 0.5)).value;
  const double outer = chord_square_integral(Window::disk({0, 0}, 0.75)).value;
  CHECK(inner < outer);
}

TEST_CASE("midpoint node doubling converges") {
  QuadratureSpec q;
  q.rule = QuadratureRule::Midpoint;
  q.tolerance = 1e-6;
  q.max_refinements = 10;
  const auto r = chord_square_integral(Window::rect(0, 0, 1, 1), q);
  CHECK(std::abs(r.value - unit_square_oracle()) < 1e-5);
  CHECK(r.refinements > 0);

  // errors shrink when nodes double
  std::vector<double> errs;
  for (int n : {8, 16, 32}) {
    QuadratureSpec s;
    s.rule = QuadratureRule::Midpoint;
    s.radial_nodes = s.angular_nodes = n;
    s.max_refinements = 0;
    s.tolerance = 1e9;
    errs.push_back(std::abs(chord_square_integral(Window::disk({0, 0}, 1), s).value - 16.0 / 3.0));
  }
  CHECK(errs[1] <= errs[0] / 2);
  CHECK(errs[2] <= errs[1] / 2);
}

TEST_CASE("quadrature spec validation and failure") {
  QuadratureSpec q;
  q.radial_nodes = 4;
  CHECK_THROWS_AS(chord_square_integral(Window::disk({0, 0}, 1), q), std::invalid_argument);
  QuadratureSpec tight;
  tight.rule = QuadratureRule::Midpoint;
  tight.tolerance = 1e-14;
  tight.max_refinements = 1;
  CHECK_THROWS_AS(chord_square_integral(Window::disk({0, 0}, 1), tight), QuadratureError);
}

TEST_CASE("bounds") {
  const Window K = Window::disk({0, 0}, 1);
  const auto b = cox_bound(ModelParams::planar(1.0, 10.0), K);
  CHECK(b.bound_value == doctest::Approx(16.0 / 30.0).epsilon(1e-9));
  CHECK(std::abs(b.bound_value - *b.closed_form) <= std::max(b.quadrature_error, 1e-12));
  const auto b2 = cox_bound(ModelParams::planar(2.0, 10.0), K);
  CHECK(b2.bound_value == doctest::Approx(4 * b.bound_value));
  ModelParams broken = ModelParams::planar(1.0, 10.0);
  broken.mu_n = 0.5;
  CHECK_THROWS_AS(cox_bound(broken, K), std::invalid_argument);

  const auto s = satellite_bound(ModelParams::spherical(2.0, 40));
  CHECK(s.bound_value == doctest::Approx(0.2));
  CHECK(*s.closed_form == s.bound_value);
  CHECK_FALSE(s.window.has_value());
  broken = ModelParams::spherical(2.0, 40);
  broken.mu_n = 1.0;
  CHECK_THROWS_AS(satellite_bound(broken), std::invalid_argument);
}

TEST_CASE("coarea ratios") {
  const Window square = Window::rect(0, 0, 1, 1);
  const auto r = coarea_check(Integrand::constant(), square, 0.0);
  CHECK(r.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.ratio - 1.0) <= 1e-6);
  CHECK(std::abs(coarea_check(Integrand::constant(), Window::disk({0, 0}, 1), 0.0).ratio - 0.5) <= 1e-6);
  CHECK(std::abs(coarea_check(Integrand::constant(), Window::disk({5, 1}, 1), 0.0).ratio - 1.0) <= 1e-6);
  const auto g = coarea_check(Integrand::gaussian_bump({0.3, 0.6}, 0.2), square, 0.3);
  CHECK(std::abs(g.ratio - 1.0) <= 1e-6);
  const auto m = coarea_check(Integrand::monomial(2, 1), square, 1.0);
  CHECK(m.lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(std::abs(m.ratio - 1.0) <= 1e-6);
  // a square straddling the sweep boundary is only partly covered
  const auto half = coarea_check(Integrand::constant(), Window::rect(-1, 0, 1, 1), 0.0);
  CHECK(half.ratio == doctest::Approx(0.5).epsilon(1e-8));
}
