#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dd/binning.hpp"
#include "dd/fitting.hpp"
#include "dd/screening.hpp"
#include "dd/series.hpp"

namespace dd {

enum class PlotKind { scatter, scatter_with_curve, histogram, boxplot, mosaic, line };

struct DataSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct GuideLine {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool dashed = true;
};

struct TextNote {
  double x = 0, y = 0;
  std::string text;
};

struct BoxStats {
  std::string label;
  double median = 0, hinge_low = 0, hinge_high = 0;
  double whisker_low = 0, whisker_high = 0;
  std::vector<double> outliers;
};

// Normalized [0,1]x[0,1] geometry; cell area / 1 == count / grand total.
struct MosaicCell {
  std::string row_label, col_label;
  double x = 0, y = 0, width = 0, height = 0;
  long count = 0;
};

struct PlotSpec {
  PlotKind kind = PlotKind::scatter;
  std::string title, x_label, y_label;
  std::vector<DataSeries> points;
  std::vector<DataSeries> curves;
  HistogramBins bins;
  bool density = false;  // histogram bar heights are densities, not counts
  std::vector<BoxStats> boxes;
  std::vector<MosaicCell> cells;
  std::vector<GuideLine> guides;
  std::vector<TextNote> notes;
  int width = 800, height = 600;
};

// Indifference points with zero, one or two fitted curves sampled on a dense
// delay grid; optionally dotted ED50 guide lines meeting the curve at 0.5
// with a rounded "ED50 = N days" label. log_x plots against ln(delay).
PlotSpec plot_fit(const IndifferenceSeries& series,
                  const std::optional<MazurFit>& mazur,
                  const std::optional<RachlinFit>& rachlin, bool log_x = false,
                  bool annotate_ed50 = false);

PlotSpec plot_histogram(std::span<const double> values, int suggested_bins = 0,
                        bool overlay_normal = false, std::string title = {},
                        std::string x_label = {});

PlotSpec plot_box(const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                  std::string title = {}, std::string x_label = {},
                  std::string y_label = {});

PlotSpec plot_mosaic(const CrossTab& table, std::string title = {},
                     std::string x_label = {}, std::string y_label = {});

PlotSpec plot_line(std::vector<double> xs, std::vector<double> ys,
                   std::string title = {}, std::string x_label = {},
                   std::string y_label = {});

PlotSpec plot_scatter(std::vector<double> xs, std::vector<double> ys,
                      std::string title = {}, std::string x_label = {},
                      std::string y_label = {});

// Standalone SVG 1.1 document. Equal specs produce byte-equal output.
void render_svg(const PlotSpec& spec, std::ostream& out);
std::string render_svg(const PlotSpec& spec);

}  // namespace dd
