#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dd/models.hpp"
#include "dd/series.hpp"

namespace dd {

// Solver settings shared by both model fits.
struct FitConfig {
  double start_mazur = 0.1;                     // initial k
  std::array<double, 2> start_rachlin{0.1, 0.1};  // initial (k, s)
  double rel_tolerance = 1e-10;
  int max_iterations = 500;
};

// Outcome of fitting one model to one series.
template <class Params>
struct Fit {
  Params params;
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
  long objective_evaluations = 0;
};

using MazurFit = Fit<MazurParams>;
using RachlinFit = Fit<RachlinParams>;

// Residual sum of squares of a model against a series.
double rss(const IndifferenceSeries& series, const MazurParams& params);
double rss(const IndifferenceSeries& series, const RachlinParams& params);

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
  long evaluations = 0;
};

// Brent-style bounded minimization: golden section with parabolic refinement.
// Ties on flat stretches resolve toward the left end of the bracket.
// Throws invalid_input if the objective goes non-finite, naming the point.
MinimizeResult minimize_1d(const std::function<double(double)>& objective,
                           double lo, double hi, double tol,
                           int max_iterations = 500);

struct SimplexResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
  long evaluations = 0;
};

// Nelder-Mead descent. Converged when both the simplex diameter and the
// objective spread fall below rel_tolerance; hitting the iteration cap
// reports converged=false with the best point found.
SimplexResult minimize_simplex(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, const FitConfig& config);

// Least-squares fits. The search runs over ln(k) (and ln(s) for Rachlin) on a
// wide bracket; a boundary solution with ln(k) below -40 is reported as k = 0.
MazurFit fit_mazur(const IndifferenceSeries& series, const FitConfig& config = {});
RachlinFit fit_rachlin(const IndifferenceSeries& series,
                       const FitConfig& config = {});

// Objective samples for the RSS-curve demonstration plot.
struct ObjectiveTrace {
  std::vector<std::pair<std::vector<double>, double>> points;
};

ObjectiveTrace trace_rss_mazur(const IndifferenceSeries& series, double k_lo,
                               double k_hi, int n_points);

}  // namespace dd
