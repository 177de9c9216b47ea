#include "dd/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dd/errors.hpp"
#include "dd/format.hpp"
#include "dd/inference.hpp"
#include "dd/models.hpp"
#include "dd/special.hpp"

namespace dd {
namespace {

std::vector<double> curve_grid(double lo, double hi, int n) {
  std::vector<double> g;
  g.reserve(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g.push_back(lo + i * step);
  return g;
}

}  // namespace

PlotSpec plot_fit(const IndifferenceSeries& series,
                  const std::optional<MazurFit>& mazur,
                  const std::optional<RachlinFit>& rachlin, bool log_x,
                  bool annotate_ed50) {
  PlotSpec spec;
  spec.kind = (mazur || rachlin) ? PlotKind::scatter_with_curve : PlotKind::scatter;
  spec.title = "Indifference points, model fit, and ED50";
  spec.x_label = log_x ? "ln(Delay)" : "Delay (days)";
  spec.y_label = "Indifference point";

  DataSeries pts;
  pts.label = "Indifference point";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double d = series.delays()[i];
    pts.xs.push_back(log_x ? std::log(d) : d);
    pts.ys.push_back(series.values()[i]);
  }
  spec.points.push_back(std::move(pts));

  const double d_max = series.delays().back() * 1.04;
  // Fine grid across delays; log plots sample evenly in ln-space instead.
  std::vector<double> grid =
      log_x ? curve_grid(std::log(series.delays().front()), std::log(d_max), 1201)
            : curve_grid(0.0, d_max, 1901);

  auto add_curve = [&](const std::string& label, auto&& predict) {
    DataSeries c;
    c.label = label;
    for (double g : grid) {
      c.xs.push_back(g);
      c.ys.push_back(predict(log_x ? std::exp(g) : g));
    }
    spec.curves.push_back(std::move(c));
  };
  if (mazur)
    add_curve("Mazur",
              [&](double d) { return predict_mazur(mazur->params, d); });
  if (rachlin)
    add_curve("Rachlin",
              [&](double d) { return predict_rachlin(rachlin->params, d); });

  if (annotate_ed50 && (mazur || rachlin)) {
    const double ed50 = mazur ? ed50_mazur(mazur->params)
                              : ed50_rachlin(rachlin->params);
    if (std::isfinite(ed50) && ed50 <= d_max && (!log_x || ed50 >= series.delays().front())) {
      const double gx = log_x ? std::log(ed50) : ed50;
      const double x_left = log_x ? std::log(series.delays().front()) : 0.0;
      spec.guides.push_back({gx, 0.0, gx, 0.5, true});
      spec.guides.push_back({x_left, 0.5, gx, 0.5, true});
      spec.notes.push_back(
          {gx, 0.54,
           "ED50 = " + std::to_string(std::llround(ed50)) + " days"});
    }
  }
  return spec;
}

PlotSpec plot_histogram(std::span<const double> values, int suggested_bins,
                        bool overlay_normal, std::string title,
                        std::string x_label) {
  PlotSpec spec;
  spec.kind = PlotKind::histogram;
  spec.title = std::move(title);
  spec.x_label = std::move(x_label);
  spec.y_label = overlay_normal ? "Density" : "Frequency";
  spec.bins = bin_values(values, suggested_bins);
  spec.density = overlay_normal;
  if (overlay_normal) {
    const SummaryStats s = summarize(values);
    if (s.sd > 0.0) {
      DataSeries c;
      c.label = "normal";
      for (double x : curve_grid(spec.bins.edges.front(), spec.bins.edges.back(), 201)) {
        c.xs.push_back(x);
        c.ys.push_back(normal_pdf(x, s.mean, s.sd));
      }
      spec.curves.push_back(std::move(c));
    }
  }
  return spec;
}

PlotSpec plot_box(const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                  std::string title, std::string x_label, std::string y_label) {
  PlotSpec spec;
  spec.kind = PlotKind::boxplot;
  spec.title = std::move(title);
  spec.x_label = std::move(x_label);
  spec.y_label = std::move(y_label);
  for (const auto& [label, values] : groups) {
    if (values.empty())
      throw invalid_input("plot_box: empty group '" + label + "'");
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    BoxStats box;
    box.label = label;
    box.median = quantile_sorted(sorted, 0.5);
    box.hinge_low = quantile_sorted(sorted, 0.25);
    box.hinge_high = quantile_sorted(sorted, 0.75);
    const double reach = 1.5 * (box.hinge_high - box.hinge_low);
    box.whisker_low = box.hinge_low;
    box.whisker_high = box.hinge_high;
    for (double v : sorted) {
      if (v >= box.hinge_low - reach)
        box.whisker_low = std::min(box.whisker_low, v);
      if (v <= box.hinge_high + reach)
        box.whisker_high = std::max(box.whisker_high, v);
      if (v < box.hinge_low - reach || v > box.hinge_high + reach)
        box.outliers.push_back(v);
    }
    spec.boxes.push_back(std::move(box));
  }
  return spec;
}

PlotSpec plot_mosaic(const CrossTab& table, std::string title,
                     std::string x_label, std::string y_label) {
  if (table.total <= 0)
    throw invalid_input("plot_mosaic: table has zero grand total");
  PlotSpec spec;
  spec.kind = PlotKind::mosaic;
  spec.title = std::move(title);
  spec.x_label = std::move(x_label);
  spec.y_label = std::move(y_label);

  const std::vector<long> row_totals = table.row_totals();
  double x = 0.0;
  for (std::size_t i = 0; i < table.row_labels.size(); ++i) {
    if (row_totals[i] == 0) continue;
    const double width =
        static_cast<double>(row_totals[i]) / static_cast<double>(table.total);
    double y = 0.0;
    for (std::size_t j = 0; j < table.col_labels.size(); ++j) {
      const long count = table.counts[i][j];
      if (count == 0) continue;  // empty cells collapse
      const double height =
          static_cast<double>(count) / static_cast<double>(row_totals[i]);
      spec.cells.push_back({table.row_labels[i], table.col_labels[j], x, y,
                            width, height, count});
      y += height;
    }
    x += width;
  }
  return spec;
}

PlotSpec plot_line(std::vector<double> xs, std::vector<double> ys,
                   std::string title, std::string x_label, std::string y_label) {
  PlotSpec spec;
  spec.kind = PlotKind::line;
  spec.title = std::move(title);
  spec.x_label = std::move(x_label);
  spec.y_label = std::move(y_label);
  spec.curves.push_back({"", std::move(xs), std::move(ys)});
  return spec;
}

PlotSpec plot_scatter(std::vector<double> xs, std::vector<double> ys,
                      std::string title, std::string x_label,
                      std::string y_label) {
  PlotSpec spec;
  spec.kind = PlotKind::scatter;
  spec.title = std::move(title);
  spec.x_label = std::move(x_label);
  spec.y_label = std::move(y_label);
  spec.points.push_back({"", std::move(xs), std::move(ys)});
  return spec;
}

}  // namespace dd
