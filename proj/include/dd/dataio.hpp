#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dd/series.hpp"

namespace dd {

// Column names of the wide-format CSV. Defaults match the study file;
// remap via CLI flags or a config file when a dataset differs.
struct Schema {
  std::string id = "id";
  std::string age = "age";
  std::string gender = "gender";
  std::string smoke = "smoke_cigs";
  std::string attention = "ddattend";
  std::string jb = "JBviol";
  std::string y_prefix = "y";  // indifference columns: y<delay in days>
};

struct ParticipantRecord {
  std::string id;
  double age = 0.0;
  std::string gender;
  std::string smoke_cigs;
  IndifferenceSeries series;
  std::optional<std::string> ddattend;   // verbatim level string
  std::optional<int> jb_viol_stored;     // 0/1 as shipped with the file
};

struct Dataset {
  std::vector<double> delay_schedule;  // ascending, parsed from headers
  std::vector<ParticipantRecord> rows;
};

struct ParseOptions {
  bool allow_missing = false;  // drop rows with empty indifference cells
};

struct ParseOutcome {
  Dataset dataset;
  std::vector<std::string> warnings;  // duplicate ids, dropped rows, ...
};

// Parses a wide-format CSV (header row, comma separation, optional quoting).
// Throws validation_error naming the column/row for schema and value errors.
ParseOutcome parse_wide_csv(const std::string& content, const Schema& schema = {},
                            const ParseOptions& options = {});

// Splits one CSV line honoring double-quote escaping.
std::vector<std::string> split_csv_line(const std::string& line);

ParseOutcome read_wide_csv_file(const std::string& path, const Schema& schema = {},
                                const ParseOptions& options = {});

}  // namespace dd
