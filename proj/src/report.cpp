#include "dd/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "dd/errors.hpp"
#include "dd/format.hpp"

namespace dd {
namespace {

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string summary_line(const SummaryStats& s) {
  std::ostringstream out;
  out << "   Min. 1st Qu.  Median    Mean 3rd Qu.    Max.\n";
  for (double v : {s.min, s.q1, s.median, s.mean, s.q3, s.max})
    out << pad_left(format_fixed(v, 2), 8);
  out << '\n';
  return out.str();
}

}  // namespace

ScreeningTables screening_tables(const Dataset& dataset) {
  ScreeningTables t;
  const bool any_stored =
      std::any_of(dataset.rows.begin(), dataset.rows.end(),
                  [](const ParticipantRecord& r) { return r.jb_viol_stored.has_value(); });
  t.jb_from_stored = any_stored;

  std::vector<std::string> jb_labels, attention_labels;
  bool any_attention = false;
  for (const ParticipantRecord& row : dataset.rows) {
    const bool recomputed = jb_screen(row.series).jb_violated;
    const int stored = row.jb_viol_stored.value_or(recomputed ? 1 : 0);
    if (any_stored && row.jb_viol_stored &&
        (*row.jb_viol_stored != 0) != recomputed)
      t.jb_mismatch_ids.push_back(row.id);
    const int flag = any_stored ? stored : (recomputed ? 1 : 0);
    jb_labels.push_back(flag ? "1" : "0");
    if (row.ddattend) {
      any_attention = true;
      attention_labels.push_back(*row.ddattend);
    } else {
      attention_labels.push_back("");
    }
    ++t.gender[row.gender];
    ++t.smoking[row.smoke_cigs];
  }
  t.jb = tabulate(jb_labels);
  if (any_attention) {
    // Two-way table only over rows that carry the attention answer.
    std::vector<std::string> jb_sub, att_sub;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
      if (attention_labels[i].empty()) continue;
      jb_sub.push_back(jb_labels[i]);
      att_sub.push_back(attention_labels[i]);
    }
    t.attention = tabulate(att_sub);
    t.jb_by_attention = crosstab(jb_sub, att_sub);
  }
  return t;
}

Stage2Results run_stage2(const Dataset& dataset,
                         std::span<const ParticipantMetrics> metrics) {
  Stage2Results out;
  std::unordered_map<std::string, const ParticipantMetrics*> by_id;
  for (const ParticipantMetrics& m : metrics) by_id.emplace(m.id, &m);

  std::vector<double> lnk, ages;
  std::map<std::string, std::vector<double>> by_gender, by_smoke;
  std::size_t missing_metrics = 0;
  for (const ParticipantRecord& row : dataset.rows) {
    auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      ++missing_metrics;
      continue;
    }
    const ParticipantMetrics& m = *it->second;
    if (!m.ln_k) {
      ++out.excluded_undefined_lnk;
      continue;
    }
    ++out.rows_used;
    lnk.push_back(*m.ln_k);
    ages.push_back(row.age);
    by_gender[row.gender].push_back(*m.ln_k);
    by_smoke[row.smoke_cigs].push_back(*m.ln_k);
  }
  if (missing_metrics > 0)
    out.notices.push_back(std::to_string(missing_metrics) +
                          " dataset row(s) had no matching metrics row");
  if (out.excluded_undefined_lnk > 0)
    out.notices.push_back(std::to_string(out.excluded_undefined_lnk) +
                          " participant(s) excluded from ln(k) analyses: k = 0");

  auto two_group_test = [&](const std::map<std::string, std::vector<double>>& groups,
                            const std::string& what) -> std::optional<TTestResult> {
    if (groups.size() != 2) {
      out.notices.push_back("skipped ln(k) by " + what + ": need exactly 2 groups, have " +
                            std::to_string(groups.size()));
      return std::nullopt;
    }
    auto it = groups.begin();
    const auto& [label_a, a] = *it++;
    const auto& [label_b, b] = *it;
    if (a.size() < 2 || b.size() < 2) {
      out.notices.push_back("skipped ln(k) by " + what + ": a group has fewer than 2 rows");
      return std::nullopt;
    }
    try {
      return welch_t_test(a, b, 0.95, {label_a, label_b});
    } catch (const invalid_input& e) {
      out.notices.push_back("skipped ln(k) by " + what + ": " + e.what());
      return std::nullopt;
    }
  };

  if (!lnk.empty()) out.lnk_summary = summarize(lnk);
  if (!ages.empty()) out.age_summary = summarize(ages);
  out.gender_test = two_group_test(by_gender, "gender");
  out.smoking_test = two_group_test(by_smoke, "smoking status");

  if (ages.size() >= 3) {
    try {
      out.age_regression = simple_linear_regression(ages, lnk, 0.95);
      out.age_correlation = pearson_cor(ages, lnk);
    } catch (const invalid_input& e) {
      out.notices.push_back(std::string("skipped ln(k) ~ age: ") + e.what());
    }
  } else {
    out.notices.push_back("skipped ln(k) ~ age: fewer than 3 usable rows");
  }
  return out;
}

std::string format_tabulation(const std::map<std::string, long>& counts) {
  std::ostringstream head, body;
  for (const auto& [label, count] : counts) {
    const std::string c = std::to_string(count);
    const std::size_t w = std::max(label.size(), c.size()) + 2;
    head << pad_left(label, w);
    body << pad_left(c, w);
  }
  return head.str() + "\n" + body.str() + "\n";
}

std::string format_crosstab(const CrossTab& table) {
  std::size_t row_w = 0;
  for (const std::string& r : table.row_labels) row_w = std::max(row_w, r.size());
  std::vector<std::size_t> col_w;
  for (const std::string& c : table.col_labels) col_w.push_back(c.size() + 2);

  std::ostringstream out;
  out << std::string(row_w, ' ');
  for (std::size_t j = 0; j < table.col_labels.size(); ++j)
    out << pad_left(table.col_labels[j], col_w[j]);
  out << '\n';
  for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
    out << pad_left(table.row_labels[i], row_w);
    for (std::size_t j = 0; j < table.col_labels.size(); ++j)
      out << pad_left(std::to_string(table.counts[i][j]), col_w[j]);
    out << '\n';
  }
  return out.str();
}

std::string format_ttest(const TTestResult& t, const std::string& heading) {
  std::ostringstream out;
  out << "Welch two-sample t-test: " << heading << '\n'
      << "t = " << format_double(t.t, 5) << ", df = " << format_double(t.df, 5)
      << ", p-value = " << format_double(t.p, 4) << '\n'
      << format_double(t.confidence * 100, 4)
      << " percent confidence interval: " << format_fixed(t.ci_low, 7) << ' '
      << format_fixed(t.ci_high, 7) << '\n'
      << "mean in group " << t.group_labels[0] << ": "
      << format_fixed(t.mean_a, 6) << "   mean in group " << t.group_labels[1]
      << ": " << format_fixed(t.mean_b, 6) << '\n';
  return out.str();
}

std::string format_regression(const RegressionResult& r,
                              const std::string& response,
                              const std::string& predictor) {
  std::vector<double> sorted = r.residuals;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  out << "Linear regression: " << response << " ~ " << predictor << '\n'
      << "residuals:\n    Min      1Q  Median      3Q     Max\n";
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0})
    out << pad_left(format_fixed(quantile_sorted(sorted, q), 4), 8);
  out << "\ncoefficients:\n"
      << "              estimate std.error t value p value\n"
      << "(intercept)" << pad_left(format_fixed(r.intercept, 5), 11)
      << pad_left(format_fixed(r.se_intercept, 5), 10)
      << pad_left(format_fixed(r.t_intercept, 3), 8)
      << ' ' << format_double(r.p_intercept, 4) << '\n'
      << pad_left(predictor, 11) << pad_left(format_fixed(r.slope, 5), 11)
      << pad_left(format_fixed(r.se_slope, 5), 10)
      << pad_left(format_fixed(r.t_slope, 3), 8)
      << ' ' << format_double(r.p_slope, 4) << '\n'
      << "residual standard error: " << format_double(r.residual_se, 4)
      << " on " << r.df_residual << " degrees of freedom\n"
      << "multiple R-squared: " << format_double(r.r_squared, 4)
      << ", adjusted R-squared: " << format_double(r.adj_r_squared, 4) << '\n'
      << "F-statistic: " << format_double(r.f_statistic, 4) << " on 1 and "
      << r.df_residual << " DF\n"
      << format_double(r.confidence * 100, 4)
      << " percent confidence intervals:\n"
      << "(intercept) " << format_fixed(r.ci_intercept_low, 8) << ' '
      << format_fixed(r.ci_intercept_high, 8) << '\n'
      << pad_left(predictor, 11) << ' ' << format_fixed(r.ci_slope_low, 8)
      << ' ' << format_fixed(r.ci_slope_high, 8) << '\n';
  return out.str();
}

std::string text_report(const Dataset& dataset,
                        std::span<const ParticipantMetrics> metrics,
                        const ScreeningTables& screening,
                        const Stage2Results& stage2,
                        const std::string& config_echo) {
  std::ostringstream out;
  out << "=== Delay discounting analysis report ===\n";
  if (!config_echo.empty()) out << "configuration: " << config_echo << '\n';
  out << '\n';

  out << "--- Dataset ---\n";
  if (dataset.rows.empty()) {
    out << "no rows\n\n";
  } else {
    out << "participants: " << dataset.rows.size() << '\n' << "delays (days):";
    for (double d : dataset.delay_schedule) out << ' ' << format_double(d, 6);
    out << "\n\n";
  }

  out << "--- Screening ---\n";
  if (dataset.rows.empty()) {
    out << "no rows\n\n";
  } else {
    out << "Johnson & Bickel violations ("
        << (screening.jb_from_stored ? "stored" : "recomputed") << "):\n"
        << format_tabulation(screening.jb);
    if (screening.attention)
      out << "attention check:\n" << format_tabulation(*screening.attention);
    else
      out << "attention check: column absent\n";
    if (screening.jb_by_attention)
      out << "JB violation x attention:\n"
          << format_crosstab(*screening.jb_by_attention);
    if (screening.jb_from_stored) {
      out << "stored vs recomputed JB flags: ";
      if (screening.jb_mismatch_ids.empty()) {
        out << "no mismatches\n";
      } else {
        out << screening.jb_mismatch_ids.size() << " mismatch(es), ids:";
        for (const std::string& id : screening.jb_mismatch_ids) out << ' ' << id;
        out << '\n';
      }
    }
    out << '\n';
  }

  out << "--- Stage 1 ---\n";
  if (metrics.empty()) {
    out << "no metrics\n\n";
  } else {
    std::size_t converged = 0;
    for (const ParticipantMetrics& m : metrics)
      if (m.mazur.converged && (!m.rachlin || m.rachlin->converged)) ++converged;
    out << "metrics rows: " << metrics.size() << " (" << converged
        << " converged fits)\n";
    if (stage2.lnk_summary)
      out << "ln(k), defined for " << stage2.lnk_summary->n << " participants:\n"
          << summary_line(*stage2.lnk_summary);
    out << '\n';
  }

  out << "--- Stage 2 ---\n";
  if (!screening.gender.empty())
    out << "gender:\n" << format_tabulation(screening.gender);
  if (!screening.smoking.empty())
    out << "smoking:\n" << format_tabulation(screening.smoking);
  if (stage2.age_summary)
    out << "age:\n" << summary_line(*stage2.age_summary);
  out << '\n';
  for (const std::string& n : stage2.notices) out << "note: " << n << '\n';
  if (!stage2.notices.empty()) out << '\n';
  if (stage2.gender_test)
    out << format_ttest(*stage2.gender_test, "ln(k) by gender") << '\n';
  if (stage2.smoking_test)
    out << format_ttest(*stage2.smoking_test, "ln(k) by smoking status") << '\n';
  if (stage2.age_correlation)
    out << "correlation(age, ln(k)): " << format_double(*stage2.age_correlation, 7)
        << "\n\n";
  if (stage2.age_regression)
    out << format_regression(*stage2.age_regression, "ln(k)", "age");
  if (dataset.rows.empty()) out << "no rows\n";
  return out.str();
}

}  // namespace dd
