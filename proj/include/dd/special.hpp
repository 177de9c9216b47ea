#pragma once

namespace dd {

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
// Domain: x in [0,1], a > 0, b > 0.
double reg_incomplete_beta(double x, double a, double b);

// Student-t CDF, any df > 0 (non-integer df supported for Welch tests).
double t_cdf(double x, double df);

// Inverse of t_cdf in x for fixed df; p in (0,1).
double t_quantile(double p, double df);

// Standard normal CDF via the complementary error function.
double normal_cdf(double x);

// Normal density with given mean and sd (> 0).
double normal_pdf(double x, double mean, double sd);

}  // namespace dd
