#include "heaps/powerfit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "heaps/error.hpp"

namespace heaps {

namespace {

struct Moments {
  double mean_x = 0, mean_y = 0, sxx = 0, syy = 0, sxy = 0;
};

Moments moments(std::span<const double> xs, std::span<const double> ys) {
  Moments m;
  const auto n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    m.mean_x += xs[i];
    m.mean_y += ys[i];
  }
  m.mean_x /= n;
  m.mean_y /= n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - m.mean_x;
    const double dy = ys[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

void check_pair(std::span<const double> xs, std::span<const double> ys, std::size_t min_n) {
  if (xs.size() != ys.size())
    throw FitError("length mismatch: " + std::to_string(xs.size()) + " x values, " +
                   std::to_string(ys.size()) + " y values");
  if (xs.size() < min_n)
    throw FitError("need at least " + std::to_string(min_n) + " points, got " +
                   std::to_string(xs.size()));
}

double correlation(const Moments& m) {
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys, 2);
  const Moments m = moments(xs, ys);
  if (m.sxx == 0.0) throw FitError("zero variance in x");
  if (m.syy == 0.0) throw FitError("zero variance in y");
  return correlation(m);
}

double student_t_quantile(double p, double dof) {
  return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

LinearFit ols(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys, 3);
  const Moments m = moments(xs, ys);
  if (m.sxx == 0.0) throw FitError("zero variance in x (all collection sizes equal)");
  if (m.syy == 0.0) throw FitError("zero variance in y (vocabulary never grows)");

  LinearFit fit;
  fit.n = xs.size();
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.mean_y - fit.slope * m.mean_x;
  fit.r = correlation(m);

  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += e * e;
  }
  const auto n = static_cast<double>(fit.n);
  const double s2 = rss / (n - 2.0);
  fit.slope_se = std::sqrt(s2 / m.sxx);
  fit.intercept_se = std::sqrt(s2 * (1.0 / n + m.mean_x * m.mean_x / m.sxx));
  return fit;
}

HeapsFit fit_heaps(std::span<const GrowthPoint> points, const FitOptions& opts) {
  if (opts.skip_first >= points.size() && !points.empty())
    throw FitError("skip_first=" + std::to_string(opts.skip_first) + " leaves no points");
  const auto used = points.subspan(std::min(opts.skip_first, points.size()));
  if (used.size() < 3)
    throw FitError("need at least 3 curve points, got " + std::to_string(used.size()));

  std::vector<double> xs(used.size()), ys(used.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    const auto& p = used[i];
    if (p.collection == 0 || p.vocab == 0)
      throw FitError("point " + std::to_string(i + opts.skip_first) + " has N=" +
                     std::to_string(p.collection) + ", V=" + std::to_string(p.vocab) +
                     "; both must be >= 1");
    xs[i] = std::log10(static_cast<double>(p.collection));
    ys[i] = std::log10(static_cast<double>(p.vocab));
  }

  const LinearFit lf = ols(xs, ys);
  const double t = student_t_quantile(0.5 + kConfidenceLevel / 2.0,
                                      static_cast<double>(lf.n) - 2.0);
  HeapsFit fit;
  fit.beta = lf.slope;
  fit.alpha = std::pow(10.0, lf.intercept);
  fit.beta_ci90 = t * lf.slope_se;
  fit.alpha_ci90 = fit.alpha * std::numbers::ln10 * t * lf.intercept_se;
  fit.r = lf.r;
  fit.n_points = lf.n;
  return fit;
}

HeapsFit fit_heaps(const GrowthCurve& curve, const FitOptions& opts) {
  return fit_heaps(std::span<const GrowthPoint>(curve.points), opts);
}

double predict(const HeapsFit& fit, double collection) {
  return fit.alpha * std::pow(collection, fit.beta);
}

}  // namespace heaps
