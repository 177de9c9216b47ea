#pragma once

#include <span>
#include <vector>

namespace dd {

// Equal-width histogram bins over a "pretty" rounded range.
struct HistogramBins {
  std::vector<double> edges;   // size counts.size() + 1, strictly increasing
  std::vector<long> counts;    // edges[i] <= x < edges[i+1]; last bin closed
};

// Sturges' count when suggested_bins <= 0; boundaries snap to a round step,
// so the realized bin count is a suggestion, not a promise.
HistogramBins bin_values(std::span<const double> values, int suggested_bins = 0);

// Smallest round step (1, 2, 2.5, or 5 times a power of ten) covering
// raw_step; shared by axis ticks and bin widths.
double nice_step(double raw_step);

}  // namespace dd
