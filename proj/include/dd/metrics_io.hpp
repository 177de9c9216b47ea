#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "dd/metrics.hpp"

namespace dd {

// Flat per-participant table. Undefined cells are written as NA, infinities
// as inf; floats carry 9 significant digits so a round trip reproduces values
// to within representation error.
void write_metrics_csv(std::span<const ParticipantMetrics> metrics,
                       std::ostream& out);
std::string metrics_to_csv(std::span<const ParticipantMetrics> metrics);

// Inverse of write_metrics_csv (fit diagnostics other than convergence are
// not serialized and come back zeroed).
std::vector<ParticipantMetrics> parse_metrics_csv(const std::string& content);

// JSON mirror of the CSV with identical field names. Non-finite values are
// encoded as strings ("inf"), undefined optionals as null.
void write_metrics_json(std::span<const ParticipantMetrics> metrics,
                        std::ostream& out);

}  // namespace dd
