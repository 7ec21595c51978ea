#pragma once

#include <optional>
#include <string>

#include "coxpp/geometry.hpp"
#include "coxpp/pointprocess.hpp"
#include "coxpp/quadrature.hpp"

namespace coxpp {

enum class ModelKind { CoxLine, Satellites };

std::string to_string(ModelKind m);
ModelKind parse_model_kind(const std::string& s);

struct BoundReport {
  ModelKind model = ModelKind::CoxLine;
  ModelParams params;
  std::optional<Window> window; ///< empty for the sphere
  double bound_value = 0.0;
  double quadrature_error = 0.0;
  std::optional<double> closed_form;
};

/// int_0^{2pi} int_0^{r_max} chord_length(K, (r, theta))^2 dr dtheta / pi.
QuadratureResult chord_square_integral(const Window& K, const QuadratureSpec& q = {});

/// Closed form of chord_square_integral where one is known: 16 R^3 / 3 for
/// any disk (the line measure dr dtheta is invariant under translations).
std::optional<double> chord_square_closed_form(const Window& K);

/// (c^2 / lambda_n) * chord_square_integral(K). Requires the planar coupling.
BoundReport cox_bound(const ModelParams& params, const Window& K, const QuadratureSpec& q = {});

/// 2 c^2 / n. Requires the spherical coupling.
BoundReport satellite_bound(const ModelParams& params);

/// Integrand registry for the coarea check.
struct Integrand {
  enum class Kind { Constant, GaussianBump, Monomial };
  Kind kind = Kind::Constant;
  double value = 1.0;     ///< Constant
  Point2 center{};        ///< GaussianBump
  double sigma = 1.0;     ///< GaussianBump
  int px = 0, py = 0;     ///< Monomial x^px y^py

  static Integrand constant(double v = 1.0) { return {Kind::Constant, v}; }
  static Integrand gaussian_bump(Point2 c, double sigma) {
    return {Kind::GaussianBump, 1.0, c, sigma};
  }
  static Integrand monomial(int px, int py) { return {Kind::Monomial, 1.0, {}, 1.0, px, py}; }

  double operator()(const Point2& p) const;
  std::string name() const;
};

struct CoareaReport {
  double lhs = 0.0; ///< int_A f by 2-D quadrature
  double rhs = 0.0; ///< int_{r >= 0} int_{A cap D(r, theta)} f dH^1 dr
  double ratio = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
};

/// Compares the area integral of f over A with the iterated integral over
/// the lines D(r, theta), r >= 0, at a fixed theta. The two agree only when
/// A lies in the half-plane { p : p . u_theta >= 0 }; otherwise only the
/// part of A in that half-plane is swept.
CoareaReport coarea_check(const Integrand& f, const Window& A, double theta,
                          const QuadratureSpec& q = {});

} // namespace coxpp
