#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dd/dataio.hpp"
#include "dd/series.hpp"

namespace dd {

// Johnson & Bickel nonsystematic-data flags plus the attention check.
struct ScreeningResult {
  bool criterion1_violated = false;  // a rise > threshold1 between adjacent delays
  bool criterion2_violated = false;  // last point not >= threshold2 below first
  bool jb_violated = false;          // OR of the two
  bool attention_failed = false;
  std::optional<std::size_t> first_violation_index;  // of the first criterion-1 jump
};

// Criterion 1 uses a strict ">": a jump of exactly threshold1 passes.
// Criterion 2 requires a drop of at least threshold2: a drop of exactly
// threshold2 passes. Thresholds are fractions of the larger-later reward.
ScreeningResult jb_screen(const IndifferenceSeries& series,
                          double threshold1 = 0.20, double threshold2 = 0.10);

// Dataset level strings for the attention item.
inline constexpr std::string_view kAttentionFailLevel = "$0.00  now";
inline constexpr std::string_view kAttentionPassLevel = "$100.00 in 1 day";

// True iff the response picks the zero-now option. Comparison collapses
// whitespace runs, so "$0.00 now" and "$0.00  now" are the same level.
// Unrecognized levels raise invalid_input naming the string.
bool attention_failed(std::string_view response);

// jb_screen plus the attention flag when the record carries one.
ScreeningResult screen_participant(const ParticipantRecord& record,
                                   double threshold1 = 0.20,
                                   double threshold2 = 0.10);

struct CrossTab {
  std::vector<std::string> row_labels;  // sorted, distinct
  std::vector<std::string> col_labels;
  std::vector<std::vector<long>> counts;  // [row][col]
  long total = 0;

  std::vector<long> row_totals() const;
  std::vector<long> col_totals() const;
};

CrossTab crosstab(std::span<const std::string> a, std::span<const std::string> b);

// Univariate counts, sorted by label.
std::map<std::string, long> tabulate(std::span<const std::string> values);

// Rows matching `keep` survive, order and columns untouched.
Dataset subset_dataset(const Dataset& dataset,
                       const std::function<bool(const ParticipantRecord&)>& keep);

}  // namespace dd
