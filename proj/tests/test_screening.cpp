#include <random>

#include <doctest.h>

#include "dd/errors.hpp"
#include "dd/screening.hpp"
#include "fixtures.hpp"

using namespace dd;

namespace {

// Literal restatement of the two published criteria, used as the oracle.
// Shares the boundary convention: exact-threshold differences do not violate.
bool criterion1_direct(const std::vector<double>& y, double t1) {
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] - y[i - 1] > t1 + 1e-9) return true;
  return false;
}

bool criterion2_direct(const std::vector<double>& y, double t2) {
  return !(y.front() - y.back() >= t2 - 1e-9);
}

}  // namespace

TEST_CASE("subject 1 violates criterion 1 at the first jump") {
  const auto r = jb_screen(fixtures::subject1());
  CHECK(r.criterion1_violated);
  REQUIRE(r.first_violation_index.has_value());
  CHECK(*r.first_violation_index == 1);  // the y1 -> y7 rise of 0.5
  CHECK_FALSE(r.criterion2_violated);    // 0.4922 - 0.1016 >= 0.10
  CHECK(r.jb_violated);
}

TEST_CASE("clean decreasing series passes both criteria") {
  const IndifferenceSeries clean({1, 7, 30, 90, 365, 1825, 9125},
                                 {1.0, 0.8, 0.6, 0.4, 0.2, 0.1, 0.05});
  const auto r = jb_screen(clean);
  CHECK_FALSE(r.criterion1_violated);
  CHECK_FALSE(r.criterion2_violated);
  CHECK_FALSE(r.jb_violated);
  CHECK_FALSE(r.first_violation_index.has_value());
}

TEST_CASE("constant series trips only criterion 2") {
  const auto& d = default_delay_schedule();
  const IndifferenceSeries flat(d, std::vector<double>(d.size(), 0.9));
  const auto r = jb_screen(flat);
  CHECK_FALSE(r.criterion1_violated);
  CHECK(r.criterion2_violated);
  CHECK(r.jb_violated);
}

TEST_CASE("boundary jumps and drops are non-violating") {
  // A rise of exactly 0.20 is not "greater than 20%".
  const IndifferenceSeries rise({1, 7, 30}, {0.50, 0.70, 0.30});
  CHECK_FALSE(jb_screen(rise).criterion1_violated);
  const IndifferenceSeries rise_more({1, 7, 30}, {0.50, 0.701, 0.30});
  CHECK(jb_screen(rise_more).criterion1_violated);

  // A first-to-last drop of exactly 0.10 satisfies "at least 10%".
  const IndifferenceSeries drop({1, 7, 30}, {0.50, 0.45, 0.40});
  CHECK_FALSE(jb_screen(drop).criterion2_violated);
  const IndifferenceSeries drop_short({1, 7, 30}, {0.50, 0.45, 0.41});
  CHECK(jb_screen(drop_short).criterion2_violated);
}

TEST_CASE("randomized series agree with the direct restatement") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> yd(0.0, 1.0);
  const auto& d = default_delay_schedule();
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> y;
    for (std::size_t i = 0; i < d.size(); ++i) y.push_back(yd(rng));
    const IndifferenceSeries series(d, y);
    const auto r = jb_screen(series);
    CHECK(r.criterion1_violated == criterion1_direct(y, 0.20));
    CHECK(r.criterion2_violated == criterion2_direct(y, 0.10));
    CHECK(r.jb_violated == (r.criterion1_violated || r.criterion2_violated));
  }
}

TEST_CASE("attention check levels") {
  CHECK(attention_failed("$0.00  now"));
  CHECK_FALSE(attention_failed("$100.00 in 1 day"));
  // single-space variant collapses to the same level
  CHECK(attention_failed("$0.00 now"));
  CHECK(attention_failed("  $0.00   now  "));
  CHECK_THROWS_AS(attention_failed("maybe later"), invalid_input);
  CHECK_THROWS_WITH(attention_failed("maybe later"),
                    doctest::Contains("maybe later"));
}

TEST_CASE("crosstab counts and marginals") {
  const std::vector<std::string> jb{"0", "1", "0", "1", "0", "0"};
  const std::vector<std::string> att{"pass", "fail", "pass", "pass", "pass", "fail"};
  const auto tab = crosstab(jb, att);
  REQUIRE(tab.row_labels == std::vector<std::string>{"0", "1"});
  REQUIRE(tab.col_labels == std::vector<std::string>{"fail", "pass"});
  CHECK(tab.counts[0][0] == 1);  // 0/fail
  CHECK(tab.counts[0][1] == 3);
  CHECK(tab.counts[1][0] == 1);
  CHECK(tab.counts[1][1] == 1);
  CHECK(tab.total == 6);

  // marginals equal univariate tabulations
  const auto rows = tab.row_totals();
  const auto jb_tab = tabulate(jb);
  CHECK(rows[0] == jb_tab.at("0"));
  CHECK(rows[1] == jb_tab.at("1"));
  const auto cols = tab.col_totals();
  const auto att_tab = tabulate(att);
  CHECK(cols[0] == att_tab.at("fail"));
  CHECK(cols[1] == att_tab.at("pass"));

  const std::vector<std::string> empty;
  const auto none = crosstab(empty, empty);
  CHECK(none.total == 0);
  CHECK(none.row_labels.empty());

  const std::vector<std::string> one{"a"};
  CHECK_THROWS_AS(crosstab(one, empty), invalid_input);
}

TEST_CASE("subset keeps matching rows in order with all columns") {
  const auto ds = fixtures::synthetic_dataset(40, 101);
  const auto no_jb = subset_dataset(ds, [](const ParticipantRecord& r) {
    return r.jb_viol_stored.value_or(0) == 0;
  });
  std::size_t expected = 0;
  for (const auto& r : ds.rows)
    if (r.jb_viol_stored.value_or(0) == 0) ++expected;
  CHECK(no_jb.rows.size() == expected);
  CHECK(no_jb.delay_schedule == ds.delay_schedule);

  // order preserved
  std::size_t j = 0;
  for (const auto& r : ds.rows) {
    if (r.jb_viol_stored.value_or(0) != 0) continue;
    CHECK(no_jb.rows[j].id == r.id);
    CHECK(no_jb.rows[j].gender == r.gender);
    CHECK(no_jb.rows[j].age == r.age);
    ++j;
  }

  const auto all = subset_dataset(ds, [](const ParticipantRecord&) { return true; });
  CHECK(all.rows.size() == ds.rows.size());
}

TEST_CASE("screening commutes with subsetting") {
  const auto ds = fixtures::synthetic_dataset(30, 55);
  auto keep = [](const ParticipantRecord& r) { return r.age < 45; };
  const auto sub = subset_dataset(ds, keep);
  std::size_t j = 0;
  for (const auto& r : ds.rows) {
    if (!keep(r)) continue;
    const auto a = jb_screen(r.series);
    const auto b = jb_screen(sub.rows[j].series);
    CHECK(a.jb_violated == b.jb_violated);
    CHECK(a.criterion1_violated == b.criterion1_violated);
    ++j;
  }
}
