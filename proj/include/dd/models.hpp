#pragma once

namespace dd {

// One-parameter hyperbolic discounting curve y = 1/(1 + k*D).
// The larger-later amount is fixed at 1; inputs must be pre-normalized.
struct MazurParams {
  double k = 0.0;  // per-day discount rate, finite and >= 0

  MazurParams() = default;
  explicit MazurParams(double k);
};

// Two-parameter hyperboloid y = 1/(1 + k*D^s).
struct RachlinParams {
  double k = 0.0;  // finite, >= 0
  double s = 1.0;  // sensitivity exponent, finite, > 0

  RachlinParams() = default;
  RachlinParams(double k, double s);
};

// Model value at a delay (days). Both return exactly 1 at delay 0.
double predict_mazur(const MazurParams& params, double delay);
double predict_rachlin(const RachlinParams& params, double delay);

// Delay at which the curve reaches half the larger-later reward.
// k = 0 never reaches half: returns +infinity.
double ed50_mazur(const MazurParams& params);
double ed50_rachlin(const RachlinParams& params);

}  // namespace dd
