#pragma once

#include <cstddef>
#include <vector>

namespace dd {

// One participant's indifference points by delay. Values are fractions of the
// larger-later reward, so they live in [0,1]; delays are strictly increasing
// positive day counts. Invariants are checked once at construction and the
// object is immutable afterwards.
class IndifferenceSeries {
 public:
  IndifferenceSeries(std::vector<double> delays, std::vector<double> values);

  const std::vector<double>& delays() const { return delays_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return delays_.size(); }

  bool operator==(const IndifferenceSeries&) const = default;

 private:
  std::vector<double> delays_;
  std::vector<double> values_;
};

// The questionnaire schedule used throughout: 1 day to 25 years.
const std::vector<double>& default_delay_schedule();

}  // namespace dd
