#include "dd/metrics.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "dd/errors.hpp"
#include "dd/models.hpp"
#include "dd/screening.hpp"

namespace dd {

double trapezoid_area(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw invalid_input("trapezoid_area: " + std::to_string(xs.size()) +
                        " xs vs " + std::to_string(ys.size()) + " ys");
  if (xs.size() < 2)
    throw invalid_input("trapezoid_area: need at least 2 points");
  double area = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1]))
      throw invalid_input("trapezoid_area: xs not strictly increasing at index " +
                          std::to_string(i));
    area += (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]) * 0.5;
  }
  return area;
}

double auc_raw(const IndifferenceSeries& series, bool normalized) {
  const double area = trapezoid_area(series.delays(), series.values());
  if (!normalized) return area;
  return area / (series.delays().back() - series.delays().front());
}

double auc_log(const IndifferenceSeries& series, bool normalized) {
  std::vector<double> lnx;
  lnx.reserve(series.size());
  for (double d : series.delays()) lnx.push_back(std::log(d));
  const double area = trapezoid_area(lnx, series.values());
  if (!normalized) return area;
  return area / (lnx.back() - lnx.front());
}

std::optional<double> ln_k(const MazurFit& fit) {
  if (fit.params.k == 0.0) return std::nullopt;
  return std::log(fit.params.k);
}

ParticipantMetrics stage1_for_participant(const ParticipantRecord& record,
                                          const FitConfig& config,
                                          ModelSelection models,
                                          bool normalized_auc) {
  ParticipantMetrics m;
  m.id = record.id;
  m.mazur = fit_mazur(record.series, config);
  m.ln_k = ln_k(m.mazur);
  m.ed50_mazur = ed50_mazur(m.mazur.params);
  if (models != ModelSelection::mazur) {
    m.rachlin = fit_rachlin(record.series, config);
    m.ed50_rachlin = ed50_rachlin(m.rachlin->params);
  }
  m.auc = auc_raw(record.series, normalized_auc);
  m.auc_log = auc_log(record.series, normalized_auc);
  m.jb_violation = jb_screen(record.series).jb_violated;
  if (record.ddattend) m.attention_fail = attention_failed(*record.ddattend);
  return m;
}

std::vector<ParticipantMetrics> run_stage1(const Dataset& dataset,
                                           const FitConfig& config,
                                           ModelSelection models,
                                           Execution execution,
                                           bool normalized_auc) {
  const auto n = static_cast<long>(dataset.rows.size());
  std::vector<ParticipantMetrics> out(dataset.rows.size());
  if (execution == Execution::parallel) {
    // Exceptions may not unwind across the omp region; park them per row and
    // rethrow the first one afterwards, matching the serial error behavior.
    std::vector<std::exception_ptr> errors(dataset.rows.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        out[i] = stage1_for_participant(dataset.rows[i], config, models,
                                        normalized_auc);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (long i = 0; i < n; ++i)
      out[i] = stage1_for_participant(dataset.rows[i], config, models,
                                      normalized_auc);
  }
  return out;
}

}  // namespace dd
