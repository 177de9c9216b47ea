#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dd/errors.hpp"
#include "dd/format.hpp"
#include "dd/plot.hpp"

namespace dd {
namespace {

constexpr int kMarginLeft = 62;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 44;
constexpr int kMarginBottom = 52;

const char* kSeriesColors[] = {"red", "blue", "darkgreen", "purple"};

std::string esc(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) { return format_fixed(v, 2); }

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad(double fraction) {
    if (lo > hi) {  // nothing included
      lo = 0.0;
      hi = 1.0;
      return;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
      return;
    }
    const double p = (hi - lo) * fraction;
    lo -= p;
    hi += p;
  }
};

struct Mapper {
  Range x, y;
  double px0, px1, py0, py1;

  double mx(double v) const {
    return px0 + (v - x.lo) / (x.hi - x.lo) * (px1 - px0);
  }
  double my(double v) const {
    return py1 - (v - y.lo) / (y.hi - y.lo) * (py1 - py0);
  }
};

void emit_axes(std::ostream& out, const Mapper& m, bool numeric_x) {
  out << "<line x1=\"" << px(m.px0) << "\" y1=\"" << px(m.py1) << "\" x2=\""
      << px(m.px1) << "\" y2=\"" << px(m.py1)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << px(m.px0) << "\" y1=\"" << px(m.py0) << "\" x2=\""
      << px(m.px0) << "\" y2=\"" << px(m.py1)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  auto ticks = [](const Range& r) {
    std::vector<double> t;
    const double step = nice_step((r.hi - r.lo) / 6.0);
    const double first = std::ceil(r.lo / step) * step;
    for (double v = first; v <= r.hi + step * 1e-9; v += step)
      t.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
    return t;
  };
  if (numeric_x) {
    for (double t : ticks(m.x)) {
      const double xx = m.mx(t);
      out << "<line x1=\"" << px(xx) << "\" y1=\"" << px(m.py1) << "\" x2=\""
          << px(xx) << "\" y2=\"" << px(m.py1 + 5)
          << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << px(xx) << "\" y=\"" << px(m.py1 + 18)
          << "\" font-size=\"11\" text-anchor=\"middle\">"
          << esc(format_double(t, 6)) << "</text>\n";
    }
  }
  for (double t : ticks(m.y)) {
    const double yy = m.my(t);
    out << "<line x1=\"" << px(m.px0 - 5) << "\" y1=\"" << px(yy) << "\" x2=\""
        << px(m.px0) << "\" y2=\"" << px(yy)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << px(m.px0 - 8) << "\" y=\"" << px(yy + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">"
        << esc(format_double(t, 6)) << "</text>\n";
  }
}

void emit_labels(std::ostream& out, const Mapper& m, const PlotSpec& spec) {
  if (!spec.title.empty())
    out << "<text x=\"" << px((m.px0 + m.px1) / 2) << "\" y=\"22\""
        << " font-size=\"15\" text-anchor=\"middle\">" << esc(spec.title)
        << "</text>\n";
  if (!spec.x_label.empty())
    out << "<text x=\"" << px((m.px0 + m.px1) / 2) << "\" y=\""
        << px(m.py1 + 38) << "\" font-size=\"12\" text-anchor=\"middle\">"
        << esc(spec.x_label) << "</text>\n";
  if (!spec.y_label.empty())
    out << "<text x=\"16\" y=\"" << px((m.py0 + m.py1) / 2)
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << px((m.py0 + m.py1) / 2) << ")\">" << esc(spec.y_label) << "</text>\n";
}

void emit_legend(std::ostream& out, const Mapper& m, const PlotSpec& spec) {
  std::vector<std::pair<std::string, std::string>> entries;  // label, color
  for (std::size_t i = 0; i < spec.curves.size(); ++i)
    if (!spec.curves[i].label.empty())
      entries.emplace_back(spec.curves[i].label,
                           kSeriesColors[i % 4]);
  if (entries.empty()) return;
  double yy = m.py0 + 14;
  for (const auto& [label, color] : entries) {
    out << "<line x1=\"" << px(m.px1 - 150) << "\" y1=\"" << px(yy - 4)
        << "\" x2=\"" << px(m.px1 - 126) << "\" y2=\"" << px(yy - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << px(m.px1 - 120) << "\" y=\"" << px(yy)
        << "\" font-size=\"11\">" << esc(label) << "</text>\n";
    yy += 16;
  }
}

void emit_points(std::ostream& out, const Mapper& m, const DataSeries& s) {
  for (std::size_t i = 0; i < s.xs.size(); ++i)
    out << "<circle cx=\"" << px(m.mx(s.xs[i])) << "\" cy=\""
        << px(m.my(s.ys[i]))
        << "\" r=\"3\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

void emit_curve(std::ostream& out, const Mapper& m, const DataSeries& s,
                const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    if (i) out << ' ';
    out << px(m.mx(s.xs[i])) << ',' << px(m.my(s.ys[i]));
  }
  out << "\"/>\n";
}

}  // namespace

void render_svg(const PlotSpec& spec, std::ostream& out) {
  if (spec.width <= 0 || spec.height <= 0)
    throw invalid_input("render_svg: non-positive viewport");

  Mapper m;
  m.px0 = kMarginLeft;
  m.px1 = spec.width - kMarginRight;
  m.py0 = kMarginTop;
  m.py1 = spec.height - kMarginBottom;

  const bool numeric_x =
      spec.kind != PlotKind::boxplot && spec.kind != PlotKind::mosaic;

  switch (spec.kind) {
    case PlotKind::scatter:
    case PlotKind::scatter_with_curve:
    case PlotKind::line:
      for (const std::vector<DataSeries>* group : {&spec.points, &spec.curves})
        for (const DataSeries& s : *group)
          for (std::size_t i = 0; i < s.xs.size(); ++i) {
            m.x.include(s.xs[i]);
            m.y.include(s.ys[i]);
          }
      for (const GuideLine& g : spec.guides) {
        m.x.include(g.x0);
        m.x.include(g.x1);
        m.y.include(g.y0);
        m.y.include(g.y1);
      }
      m.x.pad(0.04);
      m.y.pad(0.06);
      break;
    case PlotKind::histogram: {
      if (spec.bins.counts.empty())
        throw invalid_input("render_svg: histogram without bins");
      m.x.include(spec.bins.edges.front());
      m.x.include(spec.bins.edges.back());
      const double n = [&] {
        double total = 0;
        for (long c : spec.bins.counts) total += static_cast<double>(c);
        return total;
      }();
      for (std::size_t i = 0; i < spec.bins.counts.size(); ++i) {
        const double w = spec.bins.edges[i + 1] - spec.bins.edges[i];
        const double h = spec.density
                             ? static_cast<double>(spec.bins.counts[i]) / (n * w)
                             : static_cast<double>(spec.bins.counts[i]);
        m.y.include(h);
      }
      for (const DataSeries& s : spec.curves)
        for (double v : s.ys) m.y.include(v);
      m.y.include(0.0);
      m.x.pad(0.02);
      m.y.pad(0.05);
      break;
    }
    case PlotKind::boxplot: {
      if (spec.boxes.empty()) throw invalid_input("render_svg: no boxes");
      m.x.include(0.0);
      m.x.include(static_cast<double>(spec.boxes.size()));
      for (const BoxStats& b : spec.boxes) {
        m.y.include(b.whisker_low);
        m.y.include(b.whisker_high);
        for (double o : b.outliers) m.y.include(o);
      }
      m.y.pad(0.06);
      break;
    }
    case PlotKind::mosaic:
      if (spec.cells.empty()) throw invalid_input("render_svg: no cells");
      m.x.include(0.0);
      m.x.include(1.0);
      m.y.include(0.0);
      m.y.include(1.0);
      break;
  }

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
      << ' ' << spec.height << "\">\n"
      << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"white\"/>\n";

  emit_axes(out, m, numeric_x);
  emit_labels(out, m, spec);

  switch (spec.kind) {
    case PlotKind::scatter:
    case PlotKind::scatter_with_curve:
    case PlotKind::line:
      for (std::size_t i = 0; i < spec.curves.size(); ++i)
        emit_curve(out, m, spec.curves[i], kSeriesColors[i % 4]);
      for (const DataSeries& s : spec.points) emit_points(out, m, s);
      break;
    case PlotKind::histogram: {
      double n = 0;
      for (long c : spec.bins.counts) n += static_cast<double>(c);
      for (std::size_t i = 0; i < spec.bins.counts.size(); ++i) {
        const double w = spec.bins.edges[i + 1] - spec.bins.edges[i];
        const double h = spec.density
                             ? static_cast<double>(spec.bins.counts[i]) / (n * w)
                             : static_cast<double>(spec.bins.counts[i]);
        out << "<rect x=\"" << px(m.mx(spec.bins.edges[i])) << "\" y=\""
            << px(m.my(h)) << "\" width=\""
            << px(m.mx(spec.bins.edges[i + 1]) - m.mx(spec.bins.edges[i]))
            << "\" height=\"" << px(m.my(0) - m.my(h))
            << "\" fill=\"lightgray\" stroke=\"black\" stroke-width=\"1\"/>\n";
      }
      for (std::size_t i = 0; i < spec.curves.size(); ++i)
        emit_curve(out, m, spec.curves[i], kSeriesColors[i % 4]);
      break;
    }
    case PlotKind::boxplot: {
      for (std::size_t i = 0; i < spec.boxes.size(); ++i) {
        const BoxStats& b = spec.boxes[i];
        const double cx = m.mx(static_cast<double>(i) + 0.5);
        const double half = (m.mx(0.3) - m.mx(0.0));
        // whiskers
        for (auto [from, to] : {std::pair{b.whisker_low, b.hinge_low},
                                std::pair{b.hinge_high, b.whisker_high}})
          out << "<line x1=\"" << px(cx) << "\" y1=\"" << px(m.my(from))
              << "\" x2=\"" << px(cx) << "\" y2=\"" << px(m.my(to))
              << "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>\n";
        out << "<rect x=\"" << px(cx - half) << "\" y=\"" << px(m.my(b.hinge_high))
            << "\" width=\"" << px(2 * half) << "\" height=\""
            << px(m.my(b.hinge_low) - m.my(b.hinge_high))
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << px(cx - half) << "\" y1=\"" << px(m.my(b.median))
            << "\" x2=\"" << px(cx + half) << "\" y2=\"" << px(m.my(b.median))
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        for (double o : b.outliers)
          out << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(m.my(o))
              << "\" r=\"3\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(cx) << "\" y=\"" << px(m.py1 + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << esc(b.label)
            << "</text>\n";
      }
      break;
    }
    case PlotKind::mosaic: {
      std::string last_col_label;
      for (const MosaicCell& c : spec.cells) {
        out << "<rect x=\"" << px(m.mx(c.x)) << "\" y=\""
            << px(m.my(c.y + c.height)) << "\" width=\""
            << px(m.mx(c.x + c.width) - m.mx(c.x)) << "\" height=\""
            << px(m.my(c.y) - m.my(c.y + c.height))
            << "\" fill=\"lightgray\" stroke=\"black\" stroke-width=\"1\"/>\n";
      }
      // column labels under each first-variable block
      double seen_x = -1.0;
      for (const MosaicCell& c : spec.cells) {
        if (c.x == seen_x) continue;
        seen_x = c.x;
        out << "<text x=\"" << px(m.mx(c.x + c.width / 2)) << "\" y=\""
            << px(m.py1 + 18) << "\" font-size=\"11\" text-anchor=\"middle\">"
            << esc(c.row_label) << "</text>\n";
      }
      break;
    }
  }

  for (const GuideLine& g : spec.guides)
    out << "<line x1=\"" << px(m.mx(g.x0)) << "\" y1=\"" << px(m.my(g.y0))
        << "\" x2=\"" << px(m.mx(g.x1)) << "\" y2=\"" << px(m.my(g.y1))
        << "\" stroke=\"black\" stroke-width=\"1\""
        << (g.dashed ? " stroke-dasharray=\"2,4\"" : "") << "/>\n";
  for (const TextNote& n : spec.notes)
    out << "<text x=\"" << px(m.mx(n.x) + 6) << "\" y=\"" << px(m.my(n.y))
        << "\" font-size=\"12\">" << esc(n.text) << "</text>\n";

  emit_legend(out, m, spec);
  out << "</svg>\n";
  if (!out) throw io_error("render_svg: write failed");
}

std::string render_svg(const PlotSpec& spec) {
  std::ostringstream out;
  render_svg(spec, out);
  return out.str();
}

}  // namespace dd
