#include <cmath>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "dd/dataio.hpp"
#include "dd/errors.hpp"
#include "dd/metrics.hpp"
#include "dd/metrics_io.hpp"
#include "fixtures.hpp"

using namespace dd;

namespace {

const char* kToyCsv =
    "id,age,gender,smoke_cigs,y1,y7,y30,y90,y365,y1825,y9125,ddattend,JBviol\n"
    "1,34,Male,No,0.4922,0.9922,0.9454,0.8984,0.8984,0.3984,0.1016,\"$100.00 in 1 day\",1\n"
    "2,22,Female,Yes,0.99,0.95,0.9,0.7,0.5,0.3,0.1,\"$0.00  now\",0\n";

}  // namespace

TEST_CASE("wide csv parses rows, schedule, and levels verbatim") {
  const auto outcome = parse_wide_csv(kToyCsv);
  const Dataset& ds = outcome.dataset;
  REQUIRE(ds.rows.size() == 2);
  CHECK(ds.delay_schedule == std::vector<double>{1, 7, 30, 90, 365, 1825, 9125});
  CHECK(ds.rows[0].id == "1");
  CHECK(ds.rows[0].age == 34.0);
  CHECK(ds.rows[0].gender == "Male");
  CHECK(ds.rows[0].series.values()[1] == 0.9922);
  REQUIRE(ds.rows[1].ddattend.has_value());
  CHECK(*ds.rows[1].ddattend == "$0.00  now");  // double space kept
  CHECK(ds.rows[0].jb_viol_stored == 1);
  CHECK(ds.rows[1].jb_viol_stored == 0);
  CHECK(outcome.warnings.empty());
}

TEST_CASE("header-only input gives an empty dataset") {
  const auto outcome = parse_wide_csv(
      "id,age,gender,smoke_cigs,y1,y7,ddattend,JBviol\n");
  CHECK(outcome.dataset.rows.empty());
  CHECK(outcome.dataset.delay_schedule == std::vector<double>{1, 7});
}

TEST_CASE("shuffled indifference columns parse to the same dataset") {
  const char* shuffled =
      "id,age,gender,smoke_cigs,y9125,y30,y1,y365,y90,y1825,y7,ddattend,JBviol\n"
      "1,34,Male,No,0.1016,0.9454,0.4922,0.8984,0.8984,0.3984,0.9922,\"$100.00 in 1 day\",1\n"
      "2,22,Female,Yes,0.1,0.9,0.99,0.5,0.7,0.3,0.95,\"$0.00  now\",0\n";
  const auto a = parse_wide_csv(kToyCsv).dataset;
  const auto b = parse_wide_csv(shuffled).dataset;
  REQUIRE(a.rows.size() == b.rows.size());
  CHECK(a.delay_schedule == b.delay_schedule);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].series.values() == b.rows[i].series.values());
    CHECK(a.rows[i].id == b.rows[i].id);
  }
}

TEST_CASE("schema errors name the offender") {
  CHECK_THROWS_WITH(parse_wide_csv("id,gender,smoke_cigs,y1,y7\n"),
                    doctest::Contains("age"));
  CHECK_THROWS_WITH(
      parse_wide_csv("id,age,gender,smoke_cigs,y1\n"),
      doctest::Contains("indifference columns"));

  const char* non_numeric =
      "id,age,gender,smoke_cigs,y1,y7\n"
      "1,30,Male,No,0.5,oops\n";
  CHECK_THROWS_WITH(parse_wide_csv(non_numeric), doctest::Contains("y7"));

  const char* out_of_range =
      "id,age,gender,smoke_cigs,y1,y7\n"
      "1,30,Male,No,0.5,1.4\n"
      "2,31,Male,No,-0.2,0.4\n";
  try {
    parse_wide_csv(out_of_range);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("1.4") != std::string::npos);
    CHECK(msg.find("-0.2") != std::string::npos);  // all offenders listed
  }
}

TEST_CASE("duplicate ids warn, missing cells reject unless allowed") {
  const char* dup =
      "id,age,gender,smoke_cigs,y1,y7\n"
      "1,30,Male,No,0.5,0.4\n"
      "1,31,Male,No,0.5,0.4\n";
  const auto outcome = parse_wide_csv(dup);
  REQUIRE(outcome.warnings.size() == 1);
  CHECK(outcome.warnings[0].find("duplicate id") != std::string::npos);
  CHECK(outcome.dataset.rows.size() == 2);

  const char* missing =
      "id,age,gender,smoke_cigs,y1,y7\n"
      "1,30,Male,No,0.5,\n"
      "2,31,Male,No,0.5,0.3\n";
  CHECK_THROWS_AS(parse_wide_csv(missing), validation_error);
  ParseOptions allow;
  allow.allow_missing = true;
  const auto dropped = parse_wide_csv(missing, Schema{}, allow);
  CHECK(dropped.dataset.rows.size() == 1);
  CHECK(dropped.dataset.rows[0].id == "2");
  REQUIRE(dropped.warnings.size() == 1);
  CHECK(dropped.warnings[0].find("dropped row") != std::string::npos);
}

TEST_CASE("remapped schema names") {
  Schema schema;
  schema.id = "subject";
  schema.smoke = "smoker";
  const char* csv =
      "subject,age,gender,smoker,y1,y7\n"
      "a,30,Male,Yes,0.9,0.5\n";
  const auto ds = parse_wide_csv(csv, schema).dataset;
  REQUIRE(ds.rows.size() == 1);
  CHECK(ds.rows[0].id == "a");
  CHECK(ds.rows[0].smoke_cigs == "Yes");
  CHECK_FALSE(ds.rows[0].ddattend.has_value());  // optional columns absent
  CHECK_FALSE(ds.rows[0].jb_viol_stored.has_value());
}

TEST_CASE("metrics csv round trip") {
  const auto ds = fixtures::synthetic_dataset(8, 3);
  auto metrics = run_stage1(ds);
  // one undefined ln k row via a flat participant
  Dataset flat{default_delay_schedule(), {}};
  const auto& d = default_delay_schedule();
  flat.rows.push_back({"flat", 50, "Male", "No",
                       IndifferenceSeries(d, std::vector<double>(d.size(), 1.0)),
                       std::nullopt, std::nullopt});
  const auto flat_metrics = run_stage1(flat);
  metrics.push_back(flat_metrics[0]);

  const std::string csv = metrics_to_csv(metrics);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(metrics.size()) + 1);  // header + rows

  // 9 significant digits round-trip within half a unit in the last digit,
  // i.e. 5e-9 relative.
  const auto back = parse_metrics_csv(csv);
  REQUIRE(back.size() == metrics.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    CHECK(back[i].id == metrics[i].id);
    CHECK(back[i].mazur.params.k ==
          doctest::Approx(metrics[i].mazur.params.k).epsilon(5e-9));
    CHECK(back[i].auc == doctest::Approx(metrics[i].auc).epsilon(5e-9));
    CHECK(back[i].auc_log == doctest::Approx(metrics[i].auc_log).epsilon(5e-9));
    CHECK(back[i].jb_violation == metrics[i].jb_violation);
    CHECK(back[i].attention_fail == metrics[i].attention_fail);
    CHECK(back[i].ln_k.has_value() == metrics[i].ln_k.has_value());
    if (metrics[i].ln_k)
      CHECK(*back[i].ln_k == doctest::Approx(*metrics[i].ln_k).epsilon(5e-9));
    REQUIRE(back[i].rachlin.has_value() == metrics[i].rachlin.has_value());
    if (metrics[i].rachlin) {
      CHECK(back[i].rachlin->params.k ==
            doctest::Approx(metrics[i].rachlin->params.k).epsilon(5e-9));
      CHECK(back[i].rachlin->params.s ==
            doctest::Approx(metrics[i].rachlin->params.s).epsilon(5e-9));
    }
  }

  // the flat participant round-trips its infinity and undefined markers
  const auto& last = back.back();
  CHECK(last.mazur.params.k == 0.0);
  CHECK_FALSE(last.ln_k.has_value());
  CHECK(std::isinf(last.ed50_mazur));

  // empty input stays a header-only file
  const std::vector<ParticipantMetrics> none;
  const std::string empty_csv = metrics_to_csv(none);
  CHECK(std::count(empty_csv.begin(), empty_csv.end(), '\n') == 1);
  CHECK(parse_metrics_csv(empty_csv).empty());
}

TEST_CASE("metrics json mirrors the csv fields") {
  const auto ds = fixtures::synthetic_dataset(3, 9);
  const auto metrics = run_stage1(ds);
  std::ostringstream out;
  write_metrics_json(metrics, out);
  const auto parsed = nlohmann::json::parse(out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == metrics.size());
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    CHECK(parsed[i]["id"] == metrics[i].id);
    CHECK(parsed[i]["k_mazur"].get<double>() ==
          doctest::Approx(metrics[i].mazur.params.k));
    CHECK(parsed[i].contains("jb_violation"));
    CHECK(parsed[i].contains("fit_converged"));
  }
}

TEST_CASE("row order is preserved through parse and write") {
  const auto ds = fixtures::synthetic_dataset(10, 77);
  const auto metrics = run_stage1(ds);
  const auto back = parse_metrics_csv(metrics_to_csv(metrics));
  for (std::size_t i = 0; i < metrics.size(); ++i)
    CHECK(back[i].id == metrics[i].id);
}
