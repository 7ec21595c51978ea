#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace coxpp {

/// Monte Carlo estimate with the standard error of the mean.
struct Estimate {
  double mean = 0.0;
  double se = 0.0; ///< standard error
};

/// Sample mean and standard error, folded in index order.
inline Estimate mean_stderr(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return {};
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xs[i] - mean;
    mean += d / static_cast<double>(i + 1);
    m2 += d * (xs[i] - mean);
  }
  const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

inline double combined_stderr(double a, double b) { return std::sqrt(a * a + b * b); }

} // namespace coxpp
