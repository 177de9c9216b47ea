#include "dd/series.hpp"

#include <cmath>
#include <string>

#include "dd/errors.hpp"

namespace dd {

IndifferenceSeries::IndifferenceSeries(std::vector<double> delays,
                                       std::vector<double> values)
    : delays_(std::move(delays)), values_(std::move(values)) {
  if (delays_.size() != values_.size())
    throw invalid_input("series: " + std::to_string(delays_.size()) +
                        " delays vs " + std::to_string(values_.size()) +
                        " values");
  if (delays_.size() < 2)
    throw invalid_input("series: need at least 2 points, got " +
                        std::to_string(delays_.size()));
  double prev = 0.0;
  for (std::size_t i = 0; i < delays_.size(); ++i) {
    const double d = delays_[i];
    if (!std::isfinite(d) || d <= prev)
      throw invalid_input("series: delays must be strictly increasing and > 0"
                          " (offending index " + std::to_string(i) + ")");
    prev = d;
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0))
      throw invalid_input("series: value " + std::to_string(v) + " at index " +
                          std::to_string(i) + " outside [0,1]");
  }
}

const std::vector<double>& default_delay_schedule() {
  static const std::vector<double> schedule{1, 7, 30, 90, 365, 1825, 9125};
  return schedule;
}

}  // namespace dd
