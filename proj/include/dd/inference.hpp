#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dd/binning.hpp"

namespace dd {

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0, sd = 0, min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Mean, sample sd (n-1 denominator) and quartiles by linear interpolation
// between order statistics (the convention used toolkit-wide).
SummaryStats summarize(std::span<const double> values);

// Interpolated quantile of already-sorted data, p in [0,1].
double quantile_sorted(std::span<const double> sorted, double p);

double pearson_cor(std::span<const double> x, std::span<const double> y);

struct TTestResult {
  double t = 0, df = 0, p = 0;
  double ci_low = 0, ci_high = 0;
  double mean_a = 0, mean_b = 0;
  std::array<std::string, 2> group_labels;
  double confidence = 0.95;
};

// Unequal-variance two-sample t-test with Welch-Satterthwaite df and a
// two-sided p-value; CI is for mean_a - mean_b.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double confidence = 0.95,
                         std::array<std::string, 2> group_labels = {"a", "b"});

struct RegressionResult {
  double intercept = 0, slope = 0;
  double se_intercept = 0, se_slope = 0;
  double t_intercept = 0, t_slope = 0;
  double p_intercept = 0, p_slope = 0;
  double r_squared = 0, adj_r_squared = 0;
  double residual_se = 0;
  std::size_t df_residual = 0;
  double f_statistic = 0;
  double ci_intercept_low = 0, ci_intercept_high = 0;
  double ci_slope_low = 0, ci_slope_high = 0;
  std::vector<double> fitted;
  std::vector<double> residuals;
  double confidence = 0.95;
};

RegressionResult simple_linear_regression(std::span<const double> x,
                                          std::span<const double> y,
                                          double confidence = 0.95);

struct ResidualDiagnostics {
  std::vector<double> fitted;
  std::vector<double> residuals;
  HistogramBins residual_bins;
  std::vector<std::pair<double, double>> fitted_vs_residual;
};

ResidualDiagnostics residual_diagnostics(const RegressionResult& result);

}  // namespace dd
