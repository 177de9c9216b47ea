#include "dd/screening.hpp"

#include <algorithm>

#include "dd/errors.hpp"

namespace dd {
namespace {

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_space = true;  // also trims leading whitespace
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (!in_space) out += ' ';
      in_space = true;
    } else {
      out += c;
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace

ScreeningResult jb_screen(const IndifferenceSeries& series, double threshold1,
                          double threshold2) {
  // Indifference data carry a few decimals; the slack keeps differences that
  // are exactly at a threshold on the non-violating side despite rounding
  // (0.50 - 0.40 evaluates below 0.10 in binary).
  constexpr double kBoundarySlack = 1e-9;
  const auto& y = series.values();
  ScreeningResult r;
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] - y[i - 1] > threshold1 + kBoundarySlack) {
      r.criterion1_violated = true;
      r.first_violation_index = i;
      break;
    }
  }
  r.criterion2_violated = !(y.front() - y.back() >= threshold2 - kBoundarySlack);
  r.jb_violated = r.criterion1_violated || r.criterion2_violated;
  return r;
}

bool attention_failed(std::string_view response) {
  const std::string normalized = collapse_whitespace(response);
  if (normalized == collapse_whitespace(kAttentionFailLevel)) return true;
  if (normalized == collapse_whitespace(kAttentionPassLevel)) return false;
  throw invalid_input("attention_failed: unrecognized level '" +
                      std::string(response) + "'");
}

ScreeningResult screen_participant(const ParticipantRecord& record,
                                   double threshold1, double threshold2) {
  ScreeningResult r = jb_screen(record.series, threshold1, threshold2);
  if (record.ddattend) r.attention_failed = attention_failed(*record.ddattend);
  return r;
}

std::vector<long> CrossTab::row_totals() const {
  std::vector<long> t(row_labels.size(), 0);
  for (std::size_t i = 0; i < counts.size(); ++i)
    for (long c : counts[i]) t[i] += c;
  return t;
}

std::vector<long> CrossTab::col_totals() const {
  std::vector<long> t(col_labels.size(), 0);
  for (const auto& row : counts)
    for (std::size_t j = 0; j < row.size(); ++j) t[j] += row[j];
  return t;
}

CrossTab crosstab(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size())
    throw invalid_input("crosstab: length mismatch, " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
  CrossTab tab;
  tab.row_labels.assign(a.begin(), a.end());
  tab.col_labels.assign(b.begin(), b.end());
  for (auto* labels : {&tab.row_labels, &tab.col_labels}) {
    std::sort(labels->begin(), labels->end());
    labels->erase(std::unique(labels->begin(), labels->end()), labels->end());
  }
  tab.counts.assign(tab.row_labels.size(),
                    std::vector<long>(tab.col_labels.size(), 0));
  auto index_of = [](const std::vector<std::string>& labels,
                     const std::string& v) {
    return static_cast<std::size_t>(
        std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++tab.counts[index_of(tab.row_labels, a[i])][index_of(tab.col_labels, b[i])];
    ++tab.total;
  }
  return tab;
}

std::map<std::string, long> tabulate(std::span<const std::string> values) {
  std::map<std::string, long> counts;
  for (const std::string& v : values) ++counts[v];
  return counts;
}

Dataset subset_dataset(const Dataset& dataset,
                       const std::function<bool(const ParticipantRecord&)>& keep) {
  Dataset out;
  out.delay_schedule = dataset.delay_schedule;
  for (const ParticipantRecord& row : dataset.rows)
    if (keep(row)) out.rows.push_back(row);
  return out;
}

}  // namespace dd
