// Command-line front end for the two-stage discounting analysis pipeline:
// ingest a wide-format CSV, screen it, fit per-participant models, run the
// group-level statistics, and emit metrics/report/plot artifacts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dd/dataio.hpp"
#include "dd/errors.hpp"
#include "dd/format.hpp"
#include "dd/metrics.hpp"
#include "dd/metrics_io.hpp"
#include "dd/plot.hpp"
#include "dd/report.hpp"
#include "dd/screening.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct RunConfig {
  std::string input;
  std::vector<std::string> schema_overrides;  // field=column
  std::string model = "both";
  bool exclude_jb = false;
  bool exclude_attention = false;
  bool allow_missing = false;
  bool normalized_auc = false;
  bool log_x = false;
  bool serial = false;
  bool rss_plots = false;
  double tolerance = 1e-10;
  int plot_width = 800;
  int plot_height = 600;
  std::string metrics_in;
  std::string out_metrics;
  std::string out_json;
  std::string out_report;
  std::string plots_dir;
  unsigned seed = 1;
  int simulate_n = 50;
  std::string out;  // simulate target
};

void require_distinct_outputs(const RunConfig& cfg) {
  std::vector<std::string> paths{cfg.out_metrics, cfg.out_json, cfg.out_report};
  paths.erase(std::remove(paths.begin(), paths.end(), std::string()), paths.end());
  std::sort(paths.begin(), paths.end());
  if (std::adjacent_find(paths.begin(), paths.end()) != paths.end())
    throw dd::invalid_input("output paths must be distinct");
  for (const std::string& p : paths)
    if (p == cfg.input)
      throw dd::invalid_input("output path '" + p + "' equals the input path");
}

dd::Schema schema_from(const RunConfig& cfg) {
  dd::Schema schema;
  for (const std::string& kv : cfg.schema_overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw dd::invalid_input("--schema expects field=column, got '" + kv + "'");
    const std::string field = kv.substr(0, eq), column = kv.substr(eq + 1);
    if (field == "id") schema.id = column;
    else if (field == "age") schema.age = column;
    else if (field == "gender") schema.gender = column;
    else if (field == "smoke_cigs") schema.smoke = column;
    else if (field == "ddattend") schema.attention = column;
    else if (field == "JBviol") schema.jb = column;
    else if (field == "y_prefix") schema.y_prefix = column;
    else
      throw dd::invalid_input("--schema: unknown field '" + field + "'");
  }
  return schema;
}

dd::ModelSelection model_from(const std::string& name) {
  if (name == "mazur") return dd::ModelSelection::mazur;
  if (name == "rachlin") return dd::ModelSelection::rachlin;
  if (name == "both") return dd::ModelSelection::both;
  throw dd::invalid_input("--model must be mazur, rachlin, or both");
}

std::string config_echo(const RunConfig& cfg) {
  std::ostringstream out;
  out << "input=" << cfg.input << " model=" << cfg.model
      << " exclude_jb=" << cfg.exclude_jb
      << " exclude_attention=" << cfg.exclude_attention
      << " allow_missing=" << cfg.allow_missing
      << " normalized_auc=" << cfg.normalized_auc
      << " tolerance=" << dd::format_double(cfg.tolerance, 6);
  return out.str();
}

dd::Dataset load_dataset(const RunConfig& cfg) {
  if (cfg.input.empty()) throw dd::invalid_input("--input is required");
  require_distinct_outputs(cfg);
  dd::ParseOptions options;
  options.allow_missing = cfg.allow_missing;
  dd::ParseOutcome outcome =
      dd::read_wide_csv_file(cfg.input, schema_from(cfg), options);
  for (const std::string& w : outcome.warnings)
    std::cerr << "warning: " << w << '\n';

  dd::Dataset ds = std::move(outcome.dataset);
  if (cfg.exclude_jb) {
    // The stored flag drives exclusion when the file ships one.
    ds = dd::subset_dataset(ds, [](const dd::ParticipantRecord& r) {
      if (r.jb_viol_stored) return *r.jb_viol_stored == 0;
      return !dd::jb_screen(r.series).jb_violated;
    });
  }
  if (cfg.exclude_attention) {
    ds = dd::subset_dataset(ds, [](const dd::ParticipantRecord& r) {
      return !r.ddattend || !dd::attention_failed(*r.ddattend);
    });
  }
  return ds;
}

std::vector<dd::ParticipantMetrics> compute_metrics(const RunConfig& cfg,
                                                    const dd::Dataset& ds) {
  dd::FitConfig fit_config;
  fit_config.rel_tolerance = cfg.tolerance;
  return dd::run_stage1(ds, fit_config, model_from(cfg.model),
                        cfg.serial ? dd::Execution::serial
                                   : dd::Execution::parallel,
                        cfg.normalized_auc);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dd::io_error("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw dd::io_error("write failed for '" + path + "'");
}

std::string render_sized(const RunConfig& cfg, dd::PlotSpec spec) {
  spec.width = cfg.plot_width;
  spec.height = cfg.plot_height;
  return dd::render_svg(spec);
}

void emit_text(const std::string& path, const std::string& content) {
  if (path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

void write_fit_plots(const RunConfig& cfg, const dd::Dataset& ds,
                     const std::vector<dd::ParticipantMetrics>& metrics) {
  if (cfg.plots_dir.empty()) return;
  std::filesystem::create_directories(cfg.plots_dir);
  for (std::size_t i = 0; i < ds.rows.size(); ++i) {
    const auto spec = dd::plot_fit(ds.rows[i].series, metrics[i].mazur,
                                   metrics[i].rachlin, cfg.log_x, true);
    write_file(cfg.plots_dir + "/fit_" + ds.rows[i].id + ".svg",
               render_sized(cfg, spec));
    if (cfg.rss_plots) {
      const double k = metrics[i].mazur.params.k;
      const double hi = k > 0 ? k * 10 : 0.01;
      const auto trace = dd::trace_rss_mazur(ds.rows[i].series, 0.0, hi, 201);
      std::vector<double> xs, ys;
      for (const auto& [p, v] : trace.points) {
        xs.push_back(p[0]);
        ys.push_back(v);
      }
      auto rss_spec = dd::plot_line(std::move(xs), std::move(ys),
                                    "Lowest RSS occurs at estimated k value",
                                    "k", "RSS");
      rss_spec.guides.push_back({k, 0.0, k, ys.empty() ? 1.0 : ys.front(), true});
      write_file(cfg.plots_dir + "/rss_" + ds.rows[i].id + ".svg",
                 render_sized(cfg, rss_spec));
    }
  }
}

void write_stage2_plots(const RunConfig& cfg, const dd::Dataset& ds,
                        const std::vector<dd::ParticipantMetrics>& metrics,
                        const dd::Stage2Results& stage2) {
  if (cfg.plots_dir.empty()) return;
  std::filesystem::create_directories(cfg.plots_dir);

  std::vector<double> ks, lnk, ages;
  std::vector<std::pair<std::string, std::vector<double>>> by_gender, by_smoke;
  auto group_push = [](auto& groups, const std::string& label, double v) {
    for (auto& [name, values] : groups)
      if (name == label) {
        values.push_back(v);
        return;
      }
    groups.push_back({label, {v}});
  };
  for (std::size_t i = 0; i < ds.rows.size() && i < metrics.size(); ++i) {
    ks.push_back(metrics[i].mazur.params.k);
    if (!metrics[i].ln_k) continue;
    lnk.push_back(*metrics[i].ln_k);
    ages.push_back(ds.rows[i].age);
    group_push(by_gender, ds.rows[i].gender, *metrics[i].ln_k);
    group_push(by_smoke, ds.rows[i].smoke_cigs, *metrics[i].ln_k);
  }
  if (!ks.empty())
    write_file(cfg.plots_dir + "/hist_k.svg",
               render_sized(cfg, dd::plot_histogram(
                   ks, 20, false, "Estimated k values", "k")));
  if (!lnk.empty())
    write_file(cfg.plots_dir + "/hist_lnk.svg",
               render_sized(cfg, dd::plot_histogram(
                   lnk, 20, true, "Estimated ln(k) values", "ln(k)")));
  std::sort(by_gender.begin(), by_gender.end());
  std::sort(by_smoke.begin(), by_smoke.end());
  if (by_gender.size() > 1)
    write_file(cfg.plots_dir + "/box_lnk_gender.svg",
               render_sized(cfg, dd::plot_box(by_gender, "ln(k) by gender",
                                              "Gender", "ln(k)")));
  if (by_smoke.size() > 1)
    write_file(cfg.plots_dir + "/box_lnk_smoke.svg",
               render_sized(cfg, dd::plot_box(by_smoke, "ln(k) by smoking status",
                                              "Smoker", "ln(k)")));
  if (!ds.rows.empty()) {
    std::vector<std::string> gender, smoke;
    for (const auto& row : ds.rows) {
      gender.push_back(row.gender);
      smoke.push_back(row.smoke_cigs);
    }
    write_file(cfg.plots_dir + "/mosaic_gender_smoke.svg",
               render_sized(cfg, dd::plot_mosaic(dd::crosstab(gender, smoke),
                                                 "Mosaic plot", "Gender", "Smoker")));
  }
  if (ages.size() >= 2)
    write_file(cfg.plots_dir + "/scatter_age_lnk.svg",
               render_sized(cfg, dd::plot_scatter(ages, lnk, "", "Age", "ln(k)")));
  if (stage2.age_regression) {
    const auto diag = dd::residual_diagnostics(*stage2.age_regression);
    write_file(cfg.plots_dir + "/resid_hist.svg",
               render_sized(cfg, dd::plot_histogram(diag.residuals, 0, false,
                                                    "Histogram of residuals",
                                                    "Residual")));
    std::vector<double> fx, fy;
    for (const auto& [f, e] : diag.fitted_vs_residual) {
      fx.push_back(f);
      fy.push_back(e);
    }
    write_file(cfg.plots_dir + "/resid_vs_fitted.svg",
               render_sized(cfg, dd::plot_scatter(fx, fy, "", "Fitted value",
                                                  "Residual")));
  }
}

std::string screen_text(const dd::Dataset& ds) {
  const dd::ScreeningTables tables = dd::screening_tables(ds);
  std::ostringstream out;
  out << "Johnson & Bickel violations ("
      << (tables.jb_from_stored ? "stored" : "recomputed") << "):\n"
      << dd::format_tabulation(tables.jb);
  if (tables.attention)
    out << "attention check:\n" << dd::format_tabulation(*tables.attention);
  else
    out << "attention check: column absent, recomputed flags only\n";
  if (tables.jb_by_attention)
    out << "JB violation x attention:\n"
        << dd::format_crosstab(*tables.jb_by_attention);
  if (tables.jb_from_stored) {
    if (tables.jb_mismatch_ids.empty()) {
      out << "stored vs recomputed JB flags: no mismatches\n";
    } else {
      out << "stored vs recomputed JB flags: " << tables.jb_mismatch_ids.size()
          << " mismatch(es), ids:";
      for (const std::string& id : tables.jb_mismatch_ids) out << ' ' << id;
      out << '\n';
    }
  } else {
    out << "stored JB flags absent\n";
  }
  return out.str();
}

// Metrics feeding Stage 2 always pass through the CSV representation, so a
// split fit-then-stage2 run and a fused run see identical inputs.
std::vector<dd::ParticipantMetrics> stage2_metrics(const RunConfig& cfg,
                                                   const dd::Dataset& ds) {
  if (!cfg.metrics_in.empty()) {
    std::ifstream in(cfg.metrics_in, std::ios::binary);
    if (!in)
      throw dd::io_error("cannot open metrics file '" + cfg.metrics_in + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return dd::parse_metrics_csv(buf.str());
  }
  return dd::parse_metrics_csv(dd::metrics_to_csv(compute_metrics(cfg, ds)));
}

int cmd_fit(const RunConfig& cfg) {
  const dd::Dataset ds = load_dataset(cfg);
  const auto metrics = compute_metrics(cfg, ds);
  const std::string csv = dd::metrics_to_csv(metrics);
  if (cfg.out_metrics.empty())
    std::cout << csv;
  else
    write_file(cfg.out_metrics, csv);
  if (!cfg.out_json.empty()) {
    std::ostringstream json;
    dd::write_metrics_json(metrics, json);
    write_file(cfg.out_json, json.str());
  }
  write_fit_plots(cfg, ds, metrics);
  return kExitOk;
}

int cmd_screen(const RunConfig& cfg) {
  const dd::Dataset ds = load_dataset(cfg);
  const std::string text = screen_text(ds);
  emit_text(cfg.out_report, text);
  return kExitOk;
}

int cmd_stage2(const RunConfig& cfg) {
  const dd::Dataset ds = load_dataset(cfg);
  const auto metrics = stage2_metrics(cfg, ds);
  const dd::Stage2Results stage2 = dd::run_stage2(ds, metrics);
  for (const std::string& n : stage2.notices) std::cerr << "note: " << n << '\n';

  std::ostringstream out;
  for (const std::string& n : stage2.notices) out << "note: " << n << '\n';
  if (stage2.gender_test)
    out << dd::format_ttest(*stage2.gender_test, "ln(k) by gender") << '\n';
  if (stage2.smoking_test)
    out << dd::format_ttest(*stage2.smoking_test, "ln(k) by smoking status")
        << '\n';
  if (stage2.age_correlation)
    out << "correlation(age, ln(k)): "
        << dd::format_double(*stage2.age_correlation, 7) << "\n\n";
  if (stage2.age_regression)
    out << dd::format_regression(*stage2.age_regression, "ln(k)", "age");
  emit_text(cfg.out_report, out.str());
  write_stage2_plots(cfg, ds, metrics, stage2);
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, bool with_fit_artifacts) {
  const dd::Dataset ds = load_dataset(cfg);
  const auto metrics = compute_metrics(cfg, ds);
  if (with_fit_artifacts) {
    if (!cfg.out_metrics.empty())
      write_file(cfg.out_metrics, dd::metrics_to_csv(metrics));
    if (!cfg.out_json.empty()) {
      std::ostringstream json;
      dd::write_metrics_json(metrics, json);
      write_file(cfg.out_json, json.str());
    }
    write_fit_plots(cfg, ds, metrics);
  }
  const auto stage2_input = dd::parse_metrics_csv(dd::metrics_to_csv(metrics));
  const dd::Stage2Results stage2 = dd::run_stage2(ds, stage2_input);
  for (const std::string& n : stage2.notices) std::cerr << "note: " << n << '\n';
  const std::string report = dd::text_report(
      ds, stage2_input, dd::screening_tables(ds), stage2, config_echo(cfg));
  emit_text(cfg.out_report, report);
  write_stage2_plots(cfg, ds, stage2_input, stage2);
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> lnk_dist(-9.0, -1.0);
  std::uniform_int_distribution<int> age_dist(21, 67);
  std::bernoulli_distribution male(0.6), smoker(0.5), inattentive(0.06);
  std::normal_distribution<double> noise(0.0, 0.04);

  const auto& delays = dd::default_delay_schedule();
  std::ostringstream out;
  out << "id,age,gender,smoke_cigs";
  for (double d : delays) out << ",y" << dd::format_double(d, 6);
  out << ",ddattend,JBviol\n";
  for (int i = 0; i < cfg.simulate_n; ++i) {
    const double k = std::exp(lnk_dist(rng));
    std::vector<double> values;
    for (double d : delays) {
      double v = 1.0 / (1.0 + k * d) + noise(rng);
      values.push_back(std::min(1.0, std::max(0.0, v)));
    }
    const dd::IndifferenceSeries series(delays, values);
    const bool jb = dd::jb_screen(series).jb_violated;
    out << (i + 1) << ',' << age_dist(rng) << ','
        << (male(rng) ? "Male" : "Female") << ',' << (smoker(rng) ? "Yes" : "No");
    for (double v : values) out << ',' << dd::format_double(v, 9);
    out << ',' << '"'
        << (inattentive(rng) ? dd::kAttentionFailLevel : dd::kAttentionPassLevel)
        << '"' << ',' << (jb ? 1 : 0) << '\n';
  }
  emit_text(cfg.out, out.str());
  return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_input) {
  auto* input = cmd->add_option("--input", cfg.input, "wide-format CSV file");
  if (needs_input) input->required();
  cmd->add_option("--schema", cfg.schema_overrides,
                  "column remapping field=column (fields: id age gender "
                  "smoke_cigs ddattend JBviol y_prefix)");
  cmd->add_option("--model", cfg.model, "mazur|rachlin|both")
      ->check(CLI::IsMember({"mazur", "rachlin", "both"}));
  cmd->add_flag("--exclude-jb", cfg.exclude_jb,
                "drop Johnson & Bickel violators before analysis");
  cmd->add_flag("--exclude-attention", cfg.exclude_attention,
                "drop attention-check failures before analysis");
  cmd->add_flag("--allow-missing", cfg.allow_missing,
                "drop rows with missing indifference values instead of failing");
  cmd->add_flag("--normalized-auc", cfg.normalized_auc,
                "divide AUC by the delay span");
  cmd->add_option("--tolerance", cfg.tolerance, "relative fit tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--log-x", cfg.log_x, "fit plots on the ln(delay) axis");
  cmd->add_option("--plot-width", cfg.plot_width, "SVG viewport width")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--plot-height", cfg.plot_height, "SVG viewport height")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--serial", cfg.serial, "disable the parallel stage-1 path");
  cmd->add_option("--plots-dir", cfg.plots_dir, "directory for SVG plots");
  cmd->fallthrough();  // lets --config reach the top-level app
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage delay-discounting analysis"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "config file with option defaults, one [subcommand] section each");
  RunConfig cfg;

  CLI::App* fit = app.add_subcommand("fit", "stage 1: fit models per participant");
  add_common(fit, cfg, true);
  fit->add_option("--out-metrics", cfg.out_metrics, "metrics CSV path (default stdout)");
  fit->add_option("--out-json", cfg.out_json, "metrics JSON path");
  fit->add_flag("--rss-plots", cfg.rss_plots, "also plot the RSS curve per participant");

  CLI::App* screen = app.add_subcommand("screen", "data-quality tables");
  add_common(screen, cfg, true);
  screen->add_option("--out-report", cfg.out_report, "write tables here instead of stdout");

  CLI::App* stage2 = app.add_subcommand("stage2", "group-level inference");
  add_common(stage2, cfg, true);
  stage2->add_option("--metrics", cfg.metrics_in,
                     "metrics CSV from a previous fit run (skips refitting)");
  stage2->add_option("--out-report", cfg.out_report, "report path (default stdout)");

  CLI::App* report = app.add_subcommand("report", "full text report");
  add_common(report, cfg, true);
  report->add_option("--out-report", cfg.out_report, "report path (default stdout)");

  CLI::App* all = app.add_subcommand("all", "fit + screen + stage 2 + report");
  add_common(all, cfg, true);
  all->add_option("--out-metrics", cfg.out_metrics, "metrics CSV path");
  all->add_option("--out-json", cfg.out_json, "metrics JSON path");
  all->add_option("--out-report", cfg.out_report, "report path (default stdout)");
  all->add_flag("--rss-plots", cfg.rss_plots, "also plot the RSS curve per participant");

  CLI::App* simulate = app.add_subcommand("simulate", "write a synthetic dataset");
  simulate->add_option("--n", cfg.simulate_n, "participants")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "RNG seed");
  simulate->add_option("--out", cfg.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(fit)) return cmd_fit(cfg);
    if (app.got_subcommand(screen)) return cmd_screen(cfg);
    if (app.got_subcommand(stage2)) return cmd_stage2(cfg);
    if (app.got_subcommand(report)) return cmd_report(cfg, false);
    if (app.got_subcommand(all)) return cmd_report(cfg, true);
    if (app.got_subcommand(simulate)) return cmd_simulate(cfg);
  } catch (const dd::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const dd::invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
