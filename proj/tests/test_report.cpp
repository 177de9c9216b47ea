#include <doctest.h>

#include "dd/metrics.hpp"
#include "dd/report.hpp"
#include "fixtures.hpp"

using namespace dd;

TEST_CASE("screening tables split stored flags and spot mismatches") {
  auto ds = fixtures::synthetic_dataset(30, 63);
  // force one stored/recomputed disagreement
  ds.rows[4].jb_viol_stored = jb_screen(ds.rows[4].series).jb_violated ? 0 : 1;
  const auto tables = screening_tables(ds);
  CHECK(tables.jb_from_stored);
  long total = 0;
  for (const auto& [label, count] : tables.jb) total += count;
  CHECK(total == 30);
  REQUIRE(tables.jb_mismatch_ids.size() == 1);
  CHECK(tables.jb_mismatch_ids[0] == ds.rows[4].id);
  REQUIRE(tables.attention.has_value());
  REQUIRE(tables.jb_by_attention.has_value());
  CHECK(tables.jb_by_attention->total == 30);

  // without stored flags the recomputed ones drive the table
  for (auto& row : ds.rows) row.jb_viol_stored.reset();
  const auto recomputed = screening_tables(ds);
  CHECK_FALSE(recomputed.jb_from_stored);
  CHECK(recomputed.jb_mismatch_ids.empty());
}

TEST_CASE("stage 2 reproduces direct statistic calls") {
  const auto ds = fixtures::synthetic_dataset(60, 11);
  const auto metrics = run_stage1(ds);
  const auto stage2 = run_stage2(ds, metrics);

  std::vector<double> female, male, ages, lnk;
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    REQUIRE(metrics[i].ln_k.has_value());
    (ds.rows[i].gender == "Female" ? female : male).push_back(*metrics[i].ln_k);
    ages.push_back(ds.rows[i].age);
    lnk.push_back(*metrics[i].ln_k);
  }
  REQUIRE(stage2.gender_test.has_value());
  const auto direct = welch_t_test(female, male, 0.95, {"Female", "Male"});
  CHECK(stage2.gender_test->t == direct.t);
  CHECK(stage2.gender_test->df == direct.df);
  CHECK(stage2.gender_test->p == direct.p);
  CHECK(stage2.gender_test->group_labels[0] == "Female");

  REQUIRE(stage2.age_regression.has_value());
  const auto reg = simple_linear_regression(ages, lnk);
  CHECK(stage2.age_regression->slope == reg.slope);
  CHECK(stage2.age_regression->intercept == reg.intercept);
  REQUIRE(stage2.age_correlation.has_value());
  CHECK(*stage2.age_correlation == pearson_cor(ages, lnk));
  CHECK(stage2.excluded_undefined_lnk == 0);
}

TEST_CASE("stage 2 skips degenerate comparisons with a notice") {
  auto ds = fixtures::synthetic_dataset(20, 19);
  for (auto& row : ds.rows) row.gender = "Male";  // one level only
  const auto metrics = run_stage1(ds);
  const auto stage2 = run_stage2(ds, metrics);
  CHECK_FALSE(stage2.gender_test.has_value());
  CHECK(stage2.smoking_test.has_value());
  bool noted = false;
  for (const auto& n : stage2.notices)
    if (n.find("gender") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("stage 2 counts undefined ln k exclusions") {
  auto ds = fixtures::synthetic_dataset(12, 29);
  const auto& d = default_delay_schedule();
  ds.rows[3].series = IndifferenceSeries(d, std::vector<double>(d.size(), 1.0));
  const auto metrics = run_stage1(ds);
  REQUIRE_FALSE(metrics[3].ln_k.has_value());
  const auto stage2 = run_stage2(ds, metrics);
  CHECK(stage2.excluded_undefined_lnk == 1);
  CHECK(stage2.rows_used == 11);
  bool noted = false;
  for (const auto& n : stage2.notices)
    if (n.find("k = 0") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("stage 2 turns degenerate statistics into notices") {
  // every participant identical: constant ln(k), constant age
  Dataset ds{default_delay_schedule(), {}};
  for (int i = 0; i < 6; ++i)
    ds.rows.push_back({std::to_string(i + 1), 30.0,
                       i % 2 ? "Male" : "Female", i % 2 ? "Yes" : "No",
                       fixtures::mazur_series(0.01), std::nullopt, std::nullopt});
  const auto metrics = run_stage1(ds);
  const auto stage2 = run_stage2(ds, metrics);
  CHECK_FALSE(stage2.age_regression.has_value());
  CHECK_FALSE(stage2.gender_test.has_value());  // zero variance in both groups
  CHECK(stage2.notices.size() >= 2);
}

TEST_CASE("stage 2 notices dataset rows without metrics") {
  const auto ds = fixtures::synthetic_dataset(10, 31);
  auto metrics = run_stage1(ds);
  metrics.erase(metrics.begin() + 2);
  const auto stage2 = run_stage2(ds, metrics);
  CHECK(stage2.rows_used == 9);
  bool noted = false;
  for (const auto& n : stage2.notices)
    if (n.find("no matching metrics") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("text report carries every section") {
  const auto ds = fixtures::synthetic_dataset(25, 83);
  const auto metrics = run_stage1(ds);
  const auto report = text_report(ds, metrics, screening_tables(ds),
                                  run_stage2(ds, metrics), "model=both");
  CHECK(report.find("configuration: model=both") != std::string::npos);
  CHECK(report.find("--- Dataset ---") != std::string::npos);
  CHECK(report.find("--- Screening ---") != std::string::npos);
  CHECK(report.find("--- Stage 1 ---") != std::string::npos);
  CHECK(report.find("--- Stage 2 ---") != std::string::npos);
  CHECK(report.find("Welch two-sample t-test: ln(k) by gender") != std::string::npos);
  CHECK(report.find("Welch two-sample t-test: ln(k) by smoking status") !=
        std::string::npos);
  CHECK(report.find("Linear regression: ln(k) ~ age") != std::string::npos);
  CHECK(report.find("correlation(age, ln(k))") != std::string::npos);

  // identical inputs, identical bytes
  CHECK(report == text_report(ds, metrics, screening_tables(ds),
                              run_stage2(ds, metrics), "model=both"));
}

TEST_CASE("empty dataset reports no rows") {
  const Dataset empty{default_delay_schedule(), {}};
  const std::vector<ParticipantMetrics> none;
  const auto report = text_report(empty, none, screening_tables(empty),
                                  run_stage2(empty, none), "");
  CHECK(report.find("no rows") != std::string::npos);
  CHECK(report.find("no metrics") != std::string::npos);
}

TEST_CASE("console table formats") {
  const std::map<std::string, long> counts{{"0", 82}, {"1", 24}};
  const std::string table = format_tabulation(counts);
  CHECK(table.find("0") != std::string::npos);
  CHECK(table.find("82") != std::string::npos);

  const std::vector<std::string> a{"0", "0", "1"}, b{"p", "q", "p"};
  const std::string cross = format_crosstab(crosstab(a, b));
  CHECK(cross.find('p') != std::string::npos);
  CHECK(cross.find('1') != std::string::npos);
}
