#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dd/dataio.hpp"
#include "dd/fitting.hpp"
#include "dd/series.hpp"

namespace dd {

// Connect-the-dots area by the trapezoidal rule. xs strictly increasing.
double trapezoid_area(std::span<const double> xs, std::span<const double> ys);

// Area under the indifference curve over raw delays. The normalized variant
// divides by the delay span so a flat series at 1 scores 1.
double auc_raw(const IndifferenceSeries& series, bool normalized = false);

// Same, over ln(delay). Follows the plain trapezoid on logged x; no
// left-extension to delay zero and no Borges-style rescaling.
double auc_log(const IndifferenceSeries& series, bool normalized = false);

// ln of the fitted Mazur rate; undefined (nullopt) when k = 0. Stage-2
// consumers must reject undefined values explicitly.
std::optional<double> ln_k(const MazurFit& fit);

// Everything Stage 2 needs about one participant.
struct ParticipantMetrics {
  std::string id;
  MazurFit mazur;
  std::optional<RachlinFit> rachlin;
  std::optional<double> ln_k;           // nullopt iff mazur k = 0
  double ed50_mazur = 0.0;              // +inf when k = 0
  std::optional<double> ed50_rachlin;
  double auc = 0.0;
  double auc_log = 0.0;
  bool jb_violation = false;            // recomputed from the series
  std::optional<bool> attention_fail;   // absent without a ddattend column
};

enum class ModelSelection { mazur, rachlin, both };

enum class Execution { serial, parallel };

// One metrics row per dataset row, in input order. Participants are
// independent, so the parallel path splits rows across OpenMP threads and
// produces bit-identical output to the serial reference.
std::vector<ParticipantMetrics> run_stage1(const Dataset& dataset,
                                           const FitConfig& config = {},
                                           ModelSelection models = ModelSelection::both,
                                           Execution execution = Execution::parallel,
                                           bool normalized_auc = false);

ParticipantMetrics stage1_for_participant(const ParticipantRecord& record,
                                          const FitConfig& config,
                                          ModelSelection models,
                                          bool normalized_auc = false);

}  // namespace dd
