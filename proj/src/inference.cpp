#include "dd/inference.hpp"

#include <algorithm>
#include <cmath>

#include "dd/errors.hpp"
#include "dd/special.hpp"

namespace dd {
namespace {

void require_finite(std::span<const double> v, const char* who) {
  for (double x : v)
    if (!std::isfinite(x))
      throw invalid_input(std::string(who) + ": non-finite value in input");
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample variance, n-1 denominator.
double variance_of(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

double two_sided_p(double t, double df) {
  return 2.0 * (1.0 - t_cdf(std::fabs(t), df));
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw invalid_input("quantile: empty input");
  if (!(p >= 0.0 && p <= 1.0))
    throw invalid_input("quantile: p outside [0,1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw invalid_input("summarize: empty input");
  require_finite(values, "summarize");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  SummaryStats s;
  s.n = values.size();
  s.mean = mean_of(values);
  s.sd = values.size() > 1 ? std::sqrt(variance_of(values, s.mean)) : 0.0;
  s.min = sorted.front();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.max = sorted.back();
  return s;
}

double pearson_cor(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw invalid_input("pearson_cor: length mismatch");
  if (x.size() < 2) throw invalid_input("pearson_cor: need n >= 2");
  require_finite(x, "pearson_cor");
  require_finite(y, "pearson_cor");
  const double mx = mean_of(x), my = mean_of(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw invalid_input("pearson_cor: correlation undefined for a constant vector");
  return sxy / std::sqrt(sxx * syy);
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double confidence,
                         std::array<std::string, 2> group_labels) {
  if (a.size() < 2 || b.size() < 2)
    throw invalid_input("welch_t_test: each group needs n >= 2 (got " +
                        std::to_string(a.size()) + " and " +
                        std::to_string(b.size()) + ")");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw invalid_input("welch_t_test: confidence outside (0,1)");
  require_finite(a, "welch_t_test");
  require_finite(b, "welch_t_test");

  TTestResult r;
  r.group_labels = std::move(group_labels);
  r.confidence = confidence;
  r.mean_a = mean_of(a);
  r.mean_b = mean_of(b);
  const double va = variance_of(a, r.mean_a);
  const double vb = variance_of(b, r.mean_b);
  if (va == 0.0 && vb == 0.0)
    throw invalid_input("welch_t_test: both groups have zero variance");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;
  const double se = std::sqrt(se2);
  r.t = (r.mean_a - r.mean_b) / se;
  r.df = se2 * se2 /
         ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
  r.p = two_sided_p(r.t, r.df);
  const double half = t_quantile(0.5 + confidence / 2.0, r.df) * se;
  const double diff = r.mean_a - r.mean_b;
  r.ci_low = diff - half;
  r.ci_high = diff + half;
  return r;
}

RegressionResult simple_linear_regression(std::span<const double> x,
                                          std::span<const double> y,
                                          double confidence) {
  if (x.size() != y.size())
    throw invalid_input("regression: length mismatch");
  if (x.size() < 3) throw invalid_input("regression: need n >= 3");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw invalid_input("regression: confidence outside (0,1)");
  require_finite(x, "regression");
  require_finite(y, "regression");

  const double n = static_cast<double>(x.size());
  const double mx = mean_of(x), my = mean_of(y);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw invalid_input("regression: x is constant");

  RegressionResult r;
  r.confidence = confidence;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.fitted.reserve(x.size());
  r.residuals.reserve(x.size());
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fit = r.intercept + r.slope * x[i];
    r.fitted.push_back(fit);
    r.residuals.push_back(y[i] - fit);
    rss += r.residuals.back() * r.residuals.back();
  }
  r.df_residual = x.size() - 2;
  const double s2 = rss / static_cast<double>(r.df_residual);
  r.residual_se = std::sqrt(s2);
  r.se_slope = std::sqrt(s2 / sxx);
  r.se_intercept = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  r.t_slope = r.slope / r.se_slope;
  r.t_intercept = r.intercept / r.se_intercept;
  const double dfr = static_cast<double>(r.df_residual);
  r.p_slope = two_sided_p(r.t_slope, dfr);
  r.p_intercept = two_sided_p(r.t_intercept, dfr);
  r.r_squared = (syy == 0.0) ? 1.0 : 1.0 - rss / syy;
  r.adj_r_squared = 1.0 - (1.0 - r.r_squared) * (n - 1.0) / dfr;
  r.f_statistic = r.t_slope * r.t_slope;
  const double tq = t_quantile(0.5 + confidence / 2.0, dfr);
  r.ci_slope_low = r.slope - tq * r.se_slope;
  r.ci_slope_high = r.slope + tq * r.se_slope;
  r.ci_intercept_low = r.intercept - tq * r.se_intercept;
  r.ci_intercept_high = r.intercept + tq * r.se_intercept;
  return r;
}

ResidualDiagnostics residual_diagnostics(const RegressionResult& result) {
  ResidualDiagnostics d;
  d.fitted = result.fitted;
  d.residuals = result.residuals;
  d.residual_bins = bin_values(result.residuals);
  d.fitted_vs_residual.reserve(result.fitted.size());
  for (std::size_t i = 0; i < result.fitted.size(); ++i)
    d.fitted_vs_residual.emplace_back(result.fitted[i], result.residuals[i]);
  return d;
}

}  // namespace dd
