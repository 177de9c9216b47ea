#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dd/dataio.hpp"
#include "dd/inference.hpp"
#include "dd/metrics.hpp"
#include "dd/screening.hpp"

namespace dd {

// Data-quality tabulations for a dataset. The univariate and two-way JB
// tables use the stored flag column when the file has one (the recomputed
// flag otherwise); disagreements between the two are listed by id.
struct ScreeningTables {
  std::map<std::string, long> jb;
  bool jb_from_stored = false;
  std::optional<std::map<std::string, long>> attention;
  std::optional<CrossTab> jb_by_attention;
  std::vector<std::string> jb_mismatch_ids;
  std::map<std::string, long> gender;
  std::map<std::string, long> smoking;
};

ScreeningTables screening_tables(const Dataset& dataset);

// Group comparisons on ln(k): gender and smoking Welch tests, the age
// regression and correlation. Undefined ln(k) rows are dropped and counted;
// comparisons that cannot run are skipped with a notice, not an error.
struct Stage2Results {
  std::optional<TTestResult> gender_test;
  std::optional<TTestResult> smoking_test;
  std::optional<RegressionResult> age_regression;
  std::optional<double> age_correlation;
  std::optional<SummaryStats> age_summary;
  std::optional<SummaryStats> lnk_summary;
  std::size_t excluded_undefined_lnk = 0;
  std::size_t rows_used = 0;
  std::vector<std::string> notices;
};

Stage2Results run_stage2(const Dataset& dataset,
                         std::span<const ParticipantMetrics> metrics);

// Console-style table renderings shared by the report and the screen command.
std::string format_tabulation(const std::map<std::string, long>& counts);
std::string format_crosstab(const CrossTab& table);

std::string format_ttest(const TTestResult& t, const std::string& heading);
std::string format_regression(const RegressionResult& r,
                              const std::string& response,
                              const std::string& predictor);

// The full plain-text analysis report; config_echo lands in the header so a
// run can be reproduced from its own output.
std::string text_report(const Dataset& dataset,
                        std::span<const ParticipantMetrics> metrics,
                        const ScreeningTables& screening,
                        const Stage2Results& stage2,
                        const std::string& config_echo);

}  // namespace dd
