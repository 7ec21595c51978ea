#include <cmath>
#include <cstdio>
#include <numbers>

#include "coxpp/glauber.hpp"
#include "coxpp/harness.hpp"

namespace coxpp {

CheckGroup parse_check_group(const std::string& s) {
  if (s == "mecke") return CheckGroup::Mecke;
  if (s == "invariance") return CheckGroup::Invariance;
  if (s == "glauber") return CheckGroup::Glauber;
  if (s == "coarea") return CheckGroup::Coarea;
  if (s == "bound") return CheckGroup::Bound;
  if (s == "all") return CheckGroup::All;
  throw ConfigError("unknown check '" + s + "'");
}

namespace {

struct Suite {
  std::uint64_t seed;
  std::vector<ValidationRow> rows;

  void eq(std::string name, double lhs, double rhs, double se, double tol) {
    rows.push_back({std::move(name), "eq", lhs, rhs, se, tol, std::fabs(lhs - rhs) <= tol, seed});
  }
  void le(std::string name, double lhs, double rhs, double se, double tol) {
    rows.push_back({std::move(name), "le", lhs, rhs, se, tol, lhs <= rhs + tol, seed});
  }
  void tv(const std::string& prefix, const RegionTv& r) {
    le(prefix + ":" + r.region, r.tv, 0.0, r.tolerance / 3.0, r.tolerance);
  }
  void mecke(const MeckeResult& m) { eq(m.name, m.lhs.mean, m.rhs.mean, m.se, 3.0 * m.se); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Stream family tags, one per check group.
enum Tag : std::uint64_t { kMecke = 11, kInvariance = 12, kGlauber = 13 };

const Window kUnitSquare = Window::rect(0.0, 0.0, 1.0, 1.0);
constexpr double kLambda = 5.0;

void mecke_checks(Suite& s, std::size_t reps) {
  const StreamKey key = StreamKey(s.seed).child(kMecke);
  const auto regions = planar_region_preset(kUnitSquare);
  const auto& ring = regions[18];
  const auto& cell = regions[5];
  const std::vector<PairFunctional<Point2>> family = {
      pair_functionals::one<Point2>(),
      pair_functionals::indicator<Point2>(ring),
      pair_functionals::count<Point2>(ring),
      pair_functionals::indicator_times_count<Point2>(ring),
      pair_functionals::indicator_times_count<Point2>(cell),
      pair_functionals::near_neighbour<Point2>(0.1),
  };
  const double ring_mass = measure(ring.region);

  std::uint64_t tag = 0;
  for (const auto& F : family) {
    const auto r = mecke_check_ppp(F, kLambda, kUnitSquare, reps, key.child(++tag));
    s.mecke(r);
    if (F.name == family[0].name) {
      s.eq("oracle:ppp_mean_count", r.lhs.mean, kLambda, r.lhs.se, 3.0 * r.lhs.se);
    } else if (F.name == family[3].name) {
      // second factorial moment of a Poisson count
      const double m = kLambda * ring_mass;
      s.eq("oracle:ppp_factorial_moment", r.lhs.mean, m * m, r.lhs.se, 3.0 * r.lhs.se);
    }
  }

  const std::size_t N = 10;
  const auto uniform = [](RngStream& rng) { return sample_uniform(kUnitSquare, rng); };
  for (const auto& F : family) {
    const auto r = mecke_check_bpp(F, N, uniform, reps, key.child(++tag));
    s.mecke(r);
    const double n = static_cast<double>(N);
    if (F.name == family[2].name) {
      // sum over x of |w cap A| is N |w cap A|, whose mean is N^2 mu(A)
      s.eq("oracle:bpp_count", r.lhs.mean, n * n * ring_mass, r.lhs.se, 3.0 * r.lhs.se);
    } else if (F.name == family[3].name) {
      const double v = n * ring_mass * (1.0 + (n - 1.0) * ring_mass);
      s.eq("oracle:bpp_factorial_moment", r.lhs.mean, v, r.lhs.se, 3.0 * r.lhs.se);
    }
  }
}

void invariance_checks(Suite& s, std::size_t reps) {
  const StreamKey key = StreamKey(s.seed).child(kInvariance);
  const auto regions = planar_region_preset(kUnitSquare);
  std::uint64_t tag = 0;
  for (double t : {0.25, 0.5, 0.75}) {
    const std::string prefix = "invariance[t=" + num(t) + "]";
    for (const auto& r : invariance_check(kLambda, kUnitSquare, t, regions, reps, key.child(++tag))) {
      s.tv(prefix, r);
    }
    s.tv(prefix, joint_invariance_check(kLambda, kUnitSquare, t, regions[0], regions[15], reps,
                                        key.child(++tag)));
  }
}

PlanarConfig glauber_start() {
  PlanarConfig w;
  for (double x : {0.2, 0.5, 0.8}) {
    for (double y : {0.25, 0.75}) w.push({x, y});
  }
  w.push({0.1, 0.1});
  w.push({0.9, 0.9});
  return w;
}

void glauber_checks(Suite& s, std::size_t reps) {
  const StreamKey key = StreamKey(s.seed).child(kGlauber);
  const auto regions = planar_region_preset(kUnitSquare);
  const auto registry = glauber_registry(kUnitSquare);
  const PlanarConfig start = glauber_start();
  GlauberSpec spec{kUnitSquare, kLambda, 0.0};
  const double mass = spec.birth_rate();

  std::uint64_t tag = 0;
  for (double t : {0.5, 2.0, 20.0}) {
    spec.horizon = t;
    const std::string prefix = "glauber_trajectory[t=" + num(t) + "]";
    for (const auto& r : semigroup_trajectory_consistency(start, spec, regions, reps, key.child(++tag))) {
      s.tv(prefix, r);
    }
  }

  // From the empty state the mean count solves m' = lambda|W| - m.
  spec.horizon = 1.0;
  {
    const auto counts = map_replicates(reps, key.child(++tag), [&](RngStream& rng, std::size_t) {
      return static_cast<double>(glauber_simulate(PlanarConfig{}, spec, rng).size());
    });
    const Estimate e = mean_stderr(counts);
    s.eq("glauber_mean_from_empty[t=1]", e.mean, mass * (1.0 - std::exp(-1.0)), e.se, 3.0 * e.se);
  }

  for (const auto& r : semigroup_property_check(start, spec, 0.5, 1.0, regions, reps, key.child(++tag))) {
    s.tv("semigroup_property[s=0.5,t=1]", r);
  }

  for (const auto& F : registry) {
    const auto now = map_replicates(reps, key.child(++tag), [&](RngStream& rng, std::size_t) {
      const PlanarConfig phi = sample_ppp_window(kUnitSquare, kLambda, rng);
      return F(semigroup_sample(phi, 1.0, spec, rng));
    });
    const auto fresh = map_replicates(reps, key.child(++tag), [&](RngStream& rng, std::size_t) {
      return F(sample_ppp_window(kUnitSquare, kLambda, rng));
    });
    const Estimate a = mean_stderr(now);
    const Estimate b = mean_stderr(fresh);
    const double se = combined_stderr(a.se, b.se);
    s.eq("stationarity[t=1]:" + F.name, a.mean, b.mean, se, 3.0 * se);
  }

  for (const auto& F : registry) {
    const auto values = map_replicates(reps, key.child(++tag), [&](RngStream& rng, std::size_t) {
      const PlanarConfig phi = sample_ppp_window(kUnitSquare, kLambda, rng);
      return generator_apply(F, phi, spec, 4, rng).mean;
    });
    const Estimate e = mean_stderr(values);
    s.eq("generator_null:" + F.name, e.mean, 0.0, e.se, 3.0 * e.se);
  }

  const Point2 z = kUnitSquare.center();
  for (double t : {0.5, 1.0, 2.0}) {
    for (const auto& F : registry) {
      if (!F.lipschitz) continue;
      const Estimate e = contraction_estimate(F, start, z, t, spec, reps, key.child(++tag));
      s.le("contraction[t=" + num(t) + "]:" + F.name, e.mean, std::exp(-t),
           e.se, 3.0 * e.se);
    }
  }
}

void coarea_checks(Suite& s) {
  const double tol = 1e-6;
  const Window square = Window::rect(0.0, 0.0, 1.0, 1.0);
  const Window disk = Window::disk({0.0, 0.0}, 1.0);
  const Window far = Window::disk({5.0, 1.0}, 1.0);
  auto row = [&](const std::string& name, const Integrand& f, const Window& A, double theta,
                 double expected) {
    const auto r = coarea_check(f, A, theta);
    s.eq("coarea:" + name + ":" + f.name(), r.ratio, expected, r.lhs_error + r.rhs_error, tol);
  };
  row("unit_square", Integrand::constant(), square, 0.0, 1.0);
  row("unit_square", Integrand::gaussian_bump({0.3, 0.6}, 0.2), square, 0.0, 1.0);
  row("unit_square", Integrand::monomial(2, 1), square, 0.0, 1.0);
  row("unit_square_rotated", Integrand::constant(), square, std::numbers::pi / 4, 1.0);
  row("unit_disk", Integrand::constant(), disk, 0.0, 0.5);
  row("translated_disk", Integrand::constant(), far, 0.0, 1.0);
}

void bound_checks(Suite& s) {
  const Window disk = Window::disk({0.0, 0.0}, 1.0);
  const auto q = chord_square_integral(disk);
  s.eq("chord_square:unit_disk", q.value, 16.0 / 3.0, q.error, 1e-8);
  const Window offset = Window::disk({0.5, -1.5}, 2.0);
  const auto q2 = chord_square_integral(offset);
  s.eq("chord_square:offset_disk_r2", q2.value, 16.0 * 8.0 / 3.0, q2.error, 1e-8);

  for (double lambda : {5.0, 80.0}) {
    const auto b = cox_bound(ModelParams::planar(1.0, lambda), disk);
    s.eq("cox_bound_closed_form[lambda=" + num(lambda) + "]",
         b.bound_value, *b.closed_form, b.quadrature_error, std::max(b.quadrature_error, 1e-10));
  }
  for (std::size_t n : {10, 160}) {
    const auto b = satellite_bound(ModelParams::spherical(2.0, n));
    s.eq("satellite_bound[n=" + std::to_string(n) + "]", b.bound_value,
         8.0 / static_cast<double>(n), 0.0, 1e-15);
  }
}

} // namespace

std::vector<ValidationRow> run_validation_suite(CheckGroup group, const SuiteOptions& opts) {
  Suite s{opts.seed, {}};
  const auto want = [group](CheckGroup g) { return group == CheckGroup::All || group == g; };
  if (want(CheckGroup::Mecke)) mecke_checks(s, opts.reps.value_or(100000));
  if (want(CheckGroup::Invariance)) invariance_checks(s, opts.reps.value_or(100000));
  if (want(CheckGroup::Glauber)) glauber_checks(s, opts.reps.value_or(10000));
  if (want(CheckGroup::Coarea)) coarea_checks(s);
  if (want(CheckGroup::Bound)) bound_checks(s);
  return s.rows;
}

} // namespace coxpp
