#include "coxpp/steinbound.hpp"

#include <cmath>
#include <stdexcept>

namespace coxpp {

std::string to_string(ModelKind m) {
  return m == ModelKind::CoxLine ? "cox-line" : "satellites";
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "cox-line") return ModelKind::CoxLine;
  if (s == "satellites") return ModelKind::Satellites;
  throw std::invalid_argument("unknown model '" + s + "' (expected cox-line or satellites)");
}

QuadratureResult chord_square_integral(const Window& K, const QuadratureSpec& q) {
  const LineFunction square = [](const LineParams&, const Interval& chord) {
    return chord.length() * chord.length();
  };
  return refine(q, [&](const Nodes& radial, const Nodes& angular) {
    return line_space_integral(K, square, radial, angular) / std::numbers::pi;
  });
}

std::optional<double> chord_square_closed_form(const Window& K) {
  if (const auto* d = std::get_if<Disk>(&K.shape())) {
    return 16.0 * d->radius * d->radius * d->radius / 3.0;
  }
  return std::nullopt;
}

BoundReport cox_bound(const ModelParams& params, const Window& K, const QuadratureSpec& q) {
  if (!params.has_planar_coupling()) {
    throw std::invalid_argument("cox_bound: parameters must satisfy mu_n = c / lambda_n");
  }
  const auto integral = chord_square_integral(K, q);
  const double factor = params.c * params.c / params.lambda_n;
  BoundReport report;
  report.model = ModelKind::CoxLine;
  report.params = params;
  report.window = K;
  report.bound_value = factor * integral.value;
  report.quadrature_error = factor * integral.error;
  if (const auto closed = chord_square_closed_form(K)) report.closed_form = factor * *closed;
  return report;
}

BoundReport satellite_bound(const ModelParams& params) {
  if (!params.has_spherical_coupling()) {
    throw std::invalid_argument("satellite_bound: parameters must satisfy mu_n = c / n");
  }
  BoundReport report;
  report.model = ModelKind::Satellites;
  report.params = params;
  report.bound_value = 2.0 * params.c * params.c / static_cast<double>(params.n);
  report.closed_form = report.bound_value;
  return report;
}

double Integrand::operator()(const Point2& p) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::GaussianBump: {
      const double dx = p.x - center.x;
      const double dy = p.y - center.y;
      return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
    case Kind::Monomial:
      return std::pow(p.x, px) * std::pow(p.y, py);
  }
  return 0.0;
}

std::string Integrand::name() const {
  switch (kind) {
    case Kind::Constant:
      return "constant";
    case Kind::GaussianBump:
      return "gaussian_bump";
    case Kind::Monomial:
      return "monomial_" + std::to_string(px) + "_" + std::to_string(py);
  }
  return "?";
}

namespace {

double area_integral(const Integrand& f, const Window& A, const Nodes& radial,
                     const Nodes& angular) {
  if (const auto* d = std::get_if<Disk>(&A.shape())) {
    // Polar coordinates about the centre.
    double total = 0.0;
    for (std::size_t i = 0; i < radial.x.size(); ++i) {
      const double rho = 0.5 * d->radius * (radial.x[i] + 1.0);
      double ring = 0.0;
      for (std::size_t j = 0; j < angular.x.size(); ++j) {
        const double phi = std::numbers::pi * (angular.x[j] + 1.0);
        ring += angular.w[j] * f({d->center.x + rho * std::cos(phi), d->center.y + rho * std::sin(phi)});
      }
      total += radial.w[i] * rho * ring * std::numbers::pi;
    }
    return total * 0.5 * d->radius;
  }
  const auto& r = std::get<Rect>(A.shape());
  const double hx = 0.5 * (r.x1 - r.x0);
  const double hy = 0.5 * (r.y1 - r.y0);
  double total = 0.0;
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    const double x = r.x0 + hx * (radial.x[i] + 1.0);
    for (std::size_t j = 0; j < angular.x.size(); ++j) {
      const double y = r.y0 + hy * (angular.x[j] + 1.0);
      total += radial.w[i] * angular.w[j] * f({x, y});
    }
  }
  return total * hx * hy;
}

} // namespace

CoareaReport coarea_check(const Integrand& f, const Window& A, double theta,
                          const QuadratureSpec& q) {
  const auto lhs = refine(q, [&](const Nodes& radial, const Nodes& angular) {
    return area_integral(f, A, radial, angular);
  });
  const double t = make_line(0.0, theta).theta;
  const auto rhs = refine(q, [&](const Nodes& radial, const Nodes& inner) {
    const LineFunction along = [&](const LineParams& line, const Interval& chord) {
      const double half = 0.5 * chord.length();
      const double mid = 0.5 * (chord.lo + chord.hi);
      double sum = 0.0;
      for (std::size_t k = 0; k < inner.x.size(); ++k) {
        sum += inner.w[k] * f(line_point(line, mid + half * inner.x[k]));
      }
      return sum * half;
    };
    return radial_integral(A, t, along, radial);
  });
  CoareaReport report;
  report.lhs = lhs.value;
  report.rhs = rhs.value;
  report.lhs_error = lhs.error;
  report.rhs_error = rhs.error;
  report.ratio = lhs.value != 0.0 ? rhs.value / lhs.value : 0.0;
  return report;
}

} // namespace coxpp
