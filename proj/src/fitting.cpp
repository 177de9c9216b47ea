#include "dd/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dd/errors.hpp"

namespace dd {
namespace {

// Search bracket for ln(k). Wide enough that any plausible discounting rate
// is interior; the lower end only matters for non-discounting series.
constexpr double kLnKLo = -46.051701859880914;  // ln(1e-20)
constexpr double kLnKHi = 4.605170185988092;    // ln(100)
constexpr double kLnKZeroBoundary = -40.0;      // below this, report k = 0
constexpr int kPresearchPoints = 512;

double checked(const std::function<double(double)>& f, double x, long& evals) {
  ++evals;
  const double v = f(x);
  if (!std::isfinite(v))
    throw invalid_input("minimize_1d: objective not finite at x=" +
                        std::to_string(x));
  return v;
}

void validate_config(const FitConfig& config) {
  if (!(config.rel_tolerance > 0.0))
    throw invalid_input("FitConfig: rel_tolerance must be > 0");
  if (config.max_iterations < 1)
    throw invalid_input("FitConfig: max_iterations must be >= 1");
  if (!(config.start_mazur > 0.0) || !(config.start_rachlin[0] > 0.0) ||
      !(config.start_rachlin[1] > 0.0))
    throw invalid_input("FitConfig: start values must be > 0");
}

}  // namespace

double rss(const IndifferenceSeries& series, const MazurParams& params) {
  const auto& d = series.delays();
  const auto& y = series.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = y[i] - 1.0 / (1.0 + params.k * d[i]);
    acc += r * r;
  }
  return acc;
}

double rss(const IndifferenceSeries& series, const RachlinParams& params) {
  const auto& d = series.delays();
  const auto& y = series.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = y[i] - predict_rachlin(params, d[i]);
    acc += r * r;
  }
  return acc;
}

MinimizeResult minimize_1d(const std::function<double(double)>& objective,
                           double lo, double hi, double tol,
                           int max_iterations) {
  if (!(lo < hi))
    throw invalid_input("minimize_1d: bracket lo=" + std::to_string(lo) +
                        " must be < hi=" + std::to_string(hi));
  if (!(tol > 0.0)) throw invalid_input("minimize_1d: tol must be > 0");

  constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5)/2
  constexpr double kTinyStep = 1e-18;

  MinimizeResult out;
  double a = lo, b = hi;
  double x = a + kGolden * (b - a);
  double w = x, v = x;
  double fx = checked(objective, x, out.evaluations);
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < max_iterations; ++iter) {
    out.iterations = iter + 1;
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::fabs(x) + kTinyStep;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - xm) <= tol2 - 0.5 * (b - a)) {
      out.converged = true;
      break;
    }
    bool take_golden = true;
    if (std::fabs(e) > tol1) {
      // Trial parabola through x, v, w.
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double e_prev = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (xm > x) ? tol1 : -tol1;
        take_golden = false;
      }
    }
    if (take_golden) {
      e = (x >= xm) ? a - x : b - x;
      d = kGolden * e;
    }
    const double u =
        (std::fabs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
    const double fu = checked(objective, u, out.evaluations);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  out.x = x;
  out.fx = fx;
  return out;
}

SimplexResult minimize_simplex(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> start, const FitConfig& config) {
  const std::size_t n = start.size();
  if (n == 0) throw invalid_input("minimize_simplex: empty start point");

  SimplexResult out;
  auto eval = [&](const std::vector<double>& p) {
    ++out.evaluations;
    const double v = objective(p);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(n + 1,
                                           std::vector<double>(start.begin(),
                                                               start.end()));
  for (std::size_t i = 0; i < n; ++i) {
    double& c = simplex[i + 1][i];
    c = (c != 0.0) ? c * 1.05 : 0.00025;
  }
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f[i] = eval(simplex[i]);
  if (!std::isfinite(f[0]))
    throw invalid_input("minimize_simplex: objective not finite at start");

  std::vector<std::size_t> order(n + 1);
  const double tol = config.rel_tolerance;

  auto sort_simplex = [&] {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  };

  std::vector<double> centroid(n), trial(n), trial2(n);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    out.iterations = iter + 1;
    sort_simplex();
    const auto& best = simplex[order[0]];
    const auto& worst = simplex[order[n]];

    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        diameter = std::max(diameter,
                            std::fabs(simplex[order[i]][j] - best[j]));
    const double spread = f[order[n]] - f[order[0]];
    double scale = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      scale = std::max(scale, std::fabs(best[j]));
    if (diameter <= tol * scale && spread <= tol * (1.0 + std::fabs(f[order[0]]))) {
      out.converged = true;
      break;
    }

    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += simplex[order[i]][j];
      centroid[j] = s / static_cast<double>(n);
    }

    // Reflection.
    for (std::size_t j = 0; j < n; ++j)
      trial[j] = centroid[j] + (centroid[j] - worst[j]);
    const double f_refl = eval(trial);

    if (f_refl < f[order[0]]) {
      // Expansion.
      for (std::size_t j = 0; j < n; ++j)
        trial2[j] = centroid[j] + 2.0 * (centroid[j] - worst[j]);
      const double f_exp = eval(trial2);
      if (f_exp < f_refl) {
        simplex[order[n]] = trial2;
        f[order[n]] = f_exp;
      } else {
        simplex[order[n]] = trial;
        f[order[n]] = f_refl;
      }
      continue;
    }
    if (f_refl < f[order[n - 1]]) {
      simplex[order[n]] = trial;
      f[order[n]] = f_refl;
      continue;
    }
    // Contraction, outside or inside.
    if (f_refl < f[order[n]]) {
      for (std::size_t j = 0; j < n; ++j)
        trial2[j] = centroid[j] + 0.5 * (trial[j] - centroid[j]);
    } else {
      for (std::size_t j = 0; j < n; ++j)
        trial2[j] = centroid[j] - 0.5 * (centroid[j] - worst[j]);
    }
    const double f_con = eval(trial2);
    if (f_con < std::min(f_refl, f[order[n]])) {
      simplex[order[n]] = trial2;
      f[order[n]] = f_con;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t i = 1; i <= n; ++i) {
      auto& vtx = simplex[order[i]];
      for (std::size_t j = 0; j < n; ++j)
        vtx[j] = best[j] + 0.5 * (vtx[j] - best[j]);
      f[order[i]] = eval(vtx);
    }
  }

  sort_simplex();
  out.x = simplex[order[0]];
  out.fx = f[order[0]];
  return out;
}

MazurFit fit_mazur(const IndifferenceSeries& series, const FitConfig& config) {
  validate_config(config);
  long presearch_evals = 0;
  auto obj = [&](double ln_k) {
    ++presearch_evals;
    return rss(series, MazurParams(std::exp(ln_k)));
  };

  // Coarse scan keeps the refinement inside the global basin even when the
  // residual surface has shallow secondary dips.
  int best = 0;
  double best_f = std::numeric_limits<double>::infinity();
  const double step = (kLnKHi - kLnKLo) / (kPresearchPoints - 1);
  for (int i = 0; i < kPresearchPoints; ++i) {
    const double f = obj(kLnKLo + i * step);
    if (f < best_f) {
      best_f = f;
      best = i;
    }
  }
  {  // the configured start joins the candidate set
    const double f = obj(std::log(config.start_mazur));
    if (f < best_f) {
      best = static_cast<int>(
          std::clamp((std::log(config.start_mazur) - kLnKLo) / step, 1.0,
                     kPresearchPoints - 2.0));
    }
  }
  const double lo = kLnKLo + std::max(best - 1, 0) * step;
  const double hi = kLnKLo + std::min(best + 1, kPresearchPoints - 1) * step;

  MinimizeResult m = minimize_1d([&](double g) { return rss(series, MazurParams(std::exp(g))); },
                                 lo, hi, config.rel_tolerance,
                                 config.max_iterations);

  MazurFit fit{MazurParams(std::exp(m.x)), m.fx, m.iterations, m.converged,
               m.evaluations + presearch_evals};

  // Boundary: no devaluation at all fits at least as well as any tiny k.
  const double rss_zero = rss(series, MazurParams(0.0));
  ++fit.objective_evaluations;
  if (m.x < kLnKZeroBoundary || rss_zero <= fit.rss) {
    fit.params = MazurParams(0.0);
    fit.rss = rss_zero;
    fit.converged = true;
  }
  return fit;
}

RachlinFit fit_rachlin(const IndifferenceSeries& series,
                       const FitConfig& config) {
  validate_config(config);
  auto obj = [&](std::span<const double> p) {
    return rss(series, RachlinParams(std::exp(p[0]), std::exp(p[1])));
  };

  // Two deterministic starts: the configured one and the nested Mazur
  // solution (s = 1), which pins the fitted RSS at or below the Mazur RSS.
  const MazurFit mazur = fit_mazur(series, config);
  const double mazur_k = std::max(mazur.params.k, 1e-12);
  const std::array<std::array<double, 2>, 2> starts{
      {{std::log(config.start_rachlin[0]), std::log(config.start_rachlin[1])},
       {std::log(mazur_k), 0.0}}};

  SimplexResult best;
  best.fx = std::numeric_limits<double>::infinity();
  long evals = mazur.objective_evaluations;
  int iterations = 0;
  bool converged = false;
  for (const auto& start : starts) {
    SimplexResult r = minimize_simplex(obj, start, config);
    // restart once from the found vertex with a fresh simplex
    SimplexResult r2 = minimize_simplex(obj, r.x, config);
    evals += r.evaluations + r2.evaluations;
    iterations += r.iterations + r2.iterations;
    const bool run_converged = (r2.fx < r.fx) ? r2.converged : r.converged;
    if (r2.fx < r.fx) r = r2;
    if (r.fx < best.fx) {
      converged = run_converged;
      best = r;
    }
  }

  RachlinFit fit{RachlinParams(std::exp(best.x[0]), std::exp(best.x[1])),
                 best.fx, iterations, converged, evals};
  if (best.x[0] < kLnKZeroBoundary) {
    fit.params = RachlinParams(0.0, fit.params.s);
    fit.rss = rss(series, fit.params);
    ++fit.objective_evaluations;
    fit.converged = true;
  }
  return fit;
}

ObjectiveTrace trace_rss_mazur(const IndifferenceSeries& series, double k_lo,
                               double k_hi, int n_points) {
  if (!(k_lo >= 0.0 && k_hi > k_lo))
    throw invalid_input("trace_rss_mazur: need 0 <= k_lo < k_hi");
  if (n_points < 2) throw invalid_input("trace_rss_mazur: need >= 2 points");
  ObjectiveTrace trace;
  trace.points.reserve(n_points);
  const double step = (k_hi - k_lo) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double k = k_lo + i * step;
    trace.points.push_back({{k}, rss(series, MazurParams(k))});
  }
  return trace;
}

}  // namespace dd
