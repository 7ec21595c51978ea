#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "coxpp/harness.hpp"

namespace coxpp {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Quotes a field when it contains a separator or quote.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void schema(std::ostream& os) { os << "# schema_version=" << kSchemaVersion << '\n'; }

} // namespace

void write_results_header(std::ostream& os) {
  schema(os);
  os << "model,parameter,c,lambda_n,mu_n,n,reps,seed,window,target_convention,target_intensity,"
        "effective_intensity,effective_intensity_se,estimator,distance,distance_se,distance_raw,"
        "distance_functional,count_tv,count_tv_se,count_tv_raw,count_tv_region,bound,"
        "bound_quadrature_error,within_bound\n";
}

void write_result_row(std::ostream& os, const ExperimentConfig& cfg, const ExperimentRow& r) {
  const bool planar = cfg.model == ModelKind::CoxLine;
  os << to_string(cfg.model) << ',' << num(r.parameter) << ',' << num(cfg.c) << ','
     << num(r.params.lambda_n) << ',' << num(r.params.mu_n) << ',' << r.params.n << ','
     << cfg.reps << ',' << cfg.seed << ',' << field(planar ? cfg.window.describe() : "sphere")
     << ',' << r.convention << ',' << num(r.target_intensity) << ','
     << num(r.effective_intensity.mean) << ',' << num(r.effective_intensity.se) << ','
     << (r.coupled ? "coupled" : "independent") << ',' << num(r.distance.value) << ','
     << num(r.distance.se) << ',' << num(r.distance.raw) << ',' << field(r.distance.functional)
     << ',' << num(r.count_tv.value) << ',' << num(r.count_tv.se) << ',' << num(r.count_tv.raw)
     << ',' << field(r.count_tv.regions) << ',' << num(r.bound.bound_value) << ','
     << num(r.bound.quadrature_error) << ',' << (r.within_bound ? "true" : "false") << '\n';
}

void write_fit_csv(std::ostream& os, const ExperimentResult& result) {
  schema(os);
  os << "model,points,slope,intercept,r_squared\n";
  os << to_string(result.config.model) << ',' << result.rows.size() << ',';
  if (result.fit) {
    os << num(result.fit->slope) << ',' << num(result.fit->intercept) << ','
       << num(result.fit->r_squared) << '\n';
  } else {
    os << "nan,nan,nan\n";
  }
}

void write_validation_csv(std::ostream& os, const std::vector<ValidationRow>& rows) {
  schema(os);
  os << "check_name,relation,lhs,rhs,stderr,tolerance,pass,seed\n";
  for (const auto& r : rows) {
    os << field(r.check) << ',' << r.relation << ',' << num(r.lhs) << ',' << num(r.rhs) << ','
       << num(r.se) << ',' << num(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
       << r.seed << '\n';
  }
}

void write_bound_csv(std::ostream& os, const BoundReport& b) {
  schema(os);
  os << "model,c,lambda_n,mu_n,n,window,bound,quadrature_error,closed_form\n";
  os << to_string(b.model) << ',' << num(b.params.c) << ',' << num(b.params.lambda_n) << ','
     << num(b.params.mu_n) << ',' << b.params.n << ','
     << field(b.window ? b.window->describe() : "sphere") << ',' << num(b.bound_value) << ','
     << num(b.quadrature_error) << ',' << (b.closed_form ? num(*b.closed_form) : "") << '\n';
}

void write_rate_svg(std::ostream& os, const ExperimentResult& result) {
  const double W = 640, H = 440, left = 70, right = 20, top = 30, bottom = 50;
  std::vector<double> xs, ys;
  for (const auto& r : result.rows) {
    xs.push_back(r.parameter);
    if (r.distance.value > 0) ys.push_back(r.distance.value);
    ys.push_back(r.bound.bound_value);
  }
  if (xs.empty() || ys.empty()) return;
  const double x0 = std::log10(*std::min_element(xs.begin(), xs.end())) - 0.1;
  const double x1 = std::log10(*std::max_element(xs.begin(), xs.end())) + 0.1;
  const double y0 = std::floor(std::log10(*std::min_element(ys.begin(), ys.end())));
  const double y1 = std::ceil(std::log10(*std::max_element(ys.begin(), ys.end())));
  auto px = [&](double x) { return left + (std::log10(x) - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double y) { return H - bottom - (std::log10(y) - y0) / (y1 - y0) * (H - top - bottom); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\""
     << H - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
     << H - bottom << "\" stroke=\"black\"/>\n";
  for (double e = y0; e <= y1; e += 1.0) {
    const double y = py(std::pow(10.0, e));
    os << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e
       << "</text>\n";
  }
  for (double x : xs) {
    os << "<text x=\"" << px(x) << "\" y=\"" << H - bottom + 18 << "\" text-anchor=\"middle\">"
       << x << "</text>\n";
  }
  const bool planar = result.config.model == ModelKind::CoxLine;
  os << "<text x=\"" << (W + left) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">"
     << (planar ? "lambda_n" : "n") << "</text>\n";

  auto polyline = [&](auto value, const char* colour, const char* dash) {
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-dasharray=\"" << dash
       << "\" points=\"";
    for (const auto& r : result.rows) {
      const double v = value(r);
      if (v > 0) os << px(r.parameter) << ',' << py(v) << ' ';
    }
    os << "\"/>\n";
  };
  polyline([](const ExperimentRow& r) { return r.bound.bound_value; }, "firebrick", "6,4");
  polyline([](const ExperimentRow& r) { return r.distance.value; }, "steelblue", "none");
  for (const auto& r : result.rows) {
    if (r.distance.value > 0) {
      os << "<circle cx=\"" << px(r.parameter) << "\" cy=\"" << py(r.distance.value)
         << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
  }
  os << "<text x=\"" << W - right - 4 << "\" y=\"" << top << "\" text-anchor=\"end\" "
     << "fill=\"firebrick\">bound</text>\n";
  os << "<text x=\"" << W - right - 4 << "\" y=\"" << top + 16 << "\" text-anchor=\"end\" "
     << "fill=\"steelblue\">distance lower bound";
  if (result.fit) os << " (slope " << std::round(result.fit->slope * 100) / 100 << ")";
  os << "</text>\n</svg>\n";
}

} // namespace coxpp
