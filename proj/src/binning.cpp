#include "dd/binning.hpp"

#include <algorithm>
#include <cmath>

#include "dd/errors.hpp"

namespace dd {

double nice_step(double raw_step) {
  if (!(raw_step > 0.0)) throw invalid_input("nice_step: step must be > 0");
  const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
  const double frac = raw_step / mag;
  double nice;
  if (frac <= 1.0) nice = 1.0;
  else if (frac <= 2.0) nice = 2.0;
  else if (frac <= 2.5) nice = 2.5;
  else if (frac <= 5.0) nice = 5.0;
  else nice = 10.0;
  return nice * mag;
}

HistogramBins bin_values(std::span<const double> values, int suggested_bins) {
  if (values.empty()) throw invalid_input("bin_values: empty input");
  const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  double lo = *mn_it, hi = *mx_it;

  int n_bins = suggested_bins;
  if (n_bins <= 0)
    n_bins = static_cast<int>(std::ceil(std::log2(double(values.size())) + 1));
  n_bins = std::max(n_bins, 1);

  HistogramBins bins;
  if (lo == hi) {
    // Degenerate range: one unit-ish bin around the single value.
    const double pad = (lo == 0.0) ? 0.5 : std::fabs(lo) * 0.5;
    bins.edges = {lo - pad, hi + pad};
    bins.counts = {static_cast<long>(values.size())};
    return bins;
  }

  const double step = nice_step((hi - lo) / n_bins);
  const double start = std::floor(lo / step) * step;
  std::size_t total_bins =
      static_cast<std::size_t>(std::ceil((hi - start) / step - 1e-12));
  if (total_bins == 0) total_bins = 1;
  if (start + static_cast<double>(total_bins) * step < hi) ++total_bins;
  bins.edges.reserve(total_bins + 1);
  for (std::size_t i = 0; i <= total_bins; ++i)
    bins.edges.push_back(start + static_cast<double>(i) * step);
  bins.counts.assign(total_bins, 0);

  for (double v : values) {
    auto idx = static_cast<long>((v - start) / step);
    idx = std::clamp<long>(idx, 0, static_cast<long>(total_bins) - 1);
    ++bins.counts[static_cast<std::size_t>(idx)];
  }
  return bins;
}

}  // namespace dd
