#pragma once

#include <cstddef>
#include <span>

#include "heaps/growth.hpp"

namespace heaps {

/// Two-sided confidence level of the reported parameter bounds.
inline constexpr double kConfidenceLevel = 0.90;

/// Ordinary least squares y = slope * x + intercept with standard errors.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double intercept_se = 0.0;
  double r = 0.0;
  std::size_t n = 0;
};

/// Requires equal lengths >= 3 and nonzero variance in both xs and ys.
LinearFit ols(std::span<const double> xs, std::span<const double> ys);

/// Sample correlation coefficient. Requires equal lengths >= 2 and nonzero
/// variance in both arguments.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Quantile of Student's t distribution with `dof` degrees of freedom.
double student_t_quantile(double p, double dof);

/// Heaps' law parameters from OLS on (log10 N, log10 V).
/// alpha_ci90 comes from the delta method: alpha * ln(10) * intercept half-width.
struct HeapsFit {
  double beta = 0.0;
  double alpha = 0.0;
  double beta_ci90 = 0.0;
  double alpha_ci90 = 0.0;
  double r = 0.0;
  std::size_t n_points = 0;

  friend bool operator==(const HeapsFit&, const HeapsFit&) = default;
};

struct FitOptions {
  /// Leading curve points excluded from the regression.
  std::size_t skip_first = 0;
};

HeapsFit fit_heaps(std::span<const GrowthPoint> points, const FitOptions& opts = {});
HeapsFit fit_heaps(const GrowthCurve& curve, const FitOptions& opts = {});

/// alpha * N^beta, unrounded.
double predict(const HeapsFit& fit, double collection);

}  // namespace heaps
