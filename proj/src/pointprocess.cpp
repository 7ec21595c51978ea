#include "coxpp/pointprocess.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace coxpp {

ModelParams ModelParams::planar(double c, double lambda_n) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("model: c must be >= 0");
  if (!(lambda_n > 0.0) || !std::isfinite(lambda_n)) {
    throw std::invalid_argument("model: lambda_n must be > 0");
  }
  return {lambda_n, c / lambda_n, c, 0};
}

ModelParams ModelParams::spherical(double c, std::size_t n) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("model: c must be >= 0");
  if (n == 0) throw std::invalid_argument("model: orbit count n must be >= 1");
  return {0.0, c / static_cast<double>(n), c, n};
}

bool ModelParams::has_planar_coupling() const {
  return lambda_n > 0.0 && std::fabs(mu_n * lambda_n - c) <= 1e-12 * std::max(1.0, c);
}

bool ModelParams::has_spherical_coupling() const {
  return n > 0 &&
         std::fabs(mu_n * static_cast<double>(n) - c) <= 1e-12 * std::max(1.0, c);
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": probability must lie in [0, 1]");
  }
}

Point2 sample_uniform(const Window& K, RngStream& rng) {
  if (const auto* d = std::get_if<Disk>(&K.shape())) {
    const double rho = d->radius * std::sqrt(rng.uniform());
    const double phi = kTwoPi * rng.uniform();
    return {d->center.x + rho * std::cos(phi), d->center.y + rho * std::sin(phi)};
  }
  const auto& r = std::get<Rect>(K.shape());
  const double x = rng.uniform(r.x0, r.x1);
  const double y = rng.uniform(r.y0, r.y1);
  return {x, y};
}

PlanarConfig sample_ppp_window(const Window& K, double lambda, RngStream& rng) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("sample_ppp_window: intensity must be >= 0");
  }
  const std::uint64_t count = sample_poisson(rng, lambda * K.area());
  PlanarConfig cfg;
  cfg.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) cfg.push(sample_uniform(K, rng));
  return cfg;
}

std::vector<double> sample_ppp_interval(double lo, double hi, double mu, RngStream& rng) {
  if (!(lo <= hi) || !(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("sample_ppp_interval: need lo <= hi and mu >= 0");
  }
  const std::uint64_t count = sample_poisson(rng, mu * (hi - lo));
  std::vector<double> out(count);
  for (auto& s : out) s = rng.uniform(lo, hi);
  return out;
}

PointS2 sample_uniform_sphere(RngStream& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double phi = kTwoPi * rng.uniform();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  PointS2 p{rho * std::cos(phi), rho * std::sin(phi), z};
  const double len = norm(p);
  return {p.x / len, p.y / len, p.z / len};
}

SphereConfig sample_ppp_sphere(double mean_total, RngStream& rng) {
  const std::uint64_t count = sample_poisson(rng, mean_total);
  SphereConfig cfg;
  cfg.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) cfg.push(sample_uniform_sphere(rng));
  return cfg;
}

namespace {

void write_number(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected, std::size_t row) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::runtime_error("configuration csv: bad number '" + item + "' on row " +
                               std::to_string(row));
    }
  }
  if (values.size() != expected) {
    throw std::runtime_error("configuration csv: row " + std::to_string(row) + " has " +
                             std::to_string(values.size()) + " fields, expected " +
                             std::to_string(expected));
  }
  return values;
}

template <class P, class Make>
Configuration<P> read_csv(std::istream& is, std::size_t fields, Make make) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("configuration csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != AmbientTraits<P>::csv_header) {
    throw std::runtime_error("configuration csv: header '" + line + "' does not match '" +
                             std::string(AmbientTraits<P>::csv_header) + "' (" +
                             std::string(AmbientTraits<P>::name) + ")");
  }
  Configuration<P> cfg;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    cfg.push(make(parse_row(line, fields, row)));
  }
  return cfg;
}

} // namespace

void write_csv(std::ostream& os, const PlanarConfig& cfg) {
  os << AmbientTraits<Point2>::csv_header << '\n';
  for (const auto& p : cfg) {
    write_number(os, p.x);
    os << ',';
    write_number(os, p.y);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const SphereConfig& cfg) {
  os << AmbientTraits<PointS2>::csv_header << '\n';
  for (const auto& p : cfg) {
    write_number(os, p.x);
    os << ',';
    write_number(os, p.y);
    os << ',';
    write_number(os, p.z);
    os << '\n';
  }
}

PlanarConfig read_planar_csv(std::istream& is) {
  return read_csv<Point2>(is, 2, [](const std::vector<double>& v) { return Point2{v[0], v[1]}; });
}

SphereConfig read_sphere_csv(std::istream& is) {
  return read_csv<PointS2>(is, 3, [](const std::vector<double>& v) {
    return PointS2{v[0], v[1], v[2]};
  });
}

} // namespace coxpp
