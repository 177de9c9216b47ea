#include "dd/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dd/errors.hpp"

namespace dd {
namespace {

bool parse_double(const std::string& text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (last[-1] == ' ' || last[-1] == '\t')) --last;
  if (first == last) return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN";
}

struct YColumn {
  double delay;
  std::size_t index;
};

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

ParseOutcome parse_wide_csv(const std::string& content, const Schema& schema,
                            const ParseOptions& options) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line))
    throw validation_error("csv: empty input, expected a header row");
  const std::vector<std::string> header = split_csv_line(line);

  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column.emplace(header[i], i);

  auto find_required = [&](const std::string& name) {
    auto it = column.find(name);
    if (it == column.end())
      throw validation_error("csv: missing required column '" + name + "'");
    return it->second;
  };
  auto find_optional = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = column.find(name);
    if (it == column.end()) return std::nullopt;
    return it->second;
  };

  const std::size_t col_id = find_required(schema.id);
  const std::size_t col_age = find_required(schema.age);
  const std::size_t col_gender = find_required(schema.gender);
  const std::size_t col_smoke = find_required(schema.smoke);
  const auto col_attention = find_optional(schema.attention);
  const auto col_jb = find_optional(schema.jb);

  // Indifference columns carry the delay in their name (y1 ... y9125).
  std::vector<YColumn> ycols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& name = header[i];
    if (name.size() <= schema.y_prefix.size() ||
        name.compare(0, schema.y_prefix.size(), schema.y_prefix) != 0)
      continue;
    double delay = 0.0;
    if (!parse_double(name.substr(schema.y_prefix.size()), delay)) continue;
    if (delay <= 0.0)
      throw validation_error("csv: indifference column '" + name +
                             "' has non-positive delay");
    ycols.push_back({delay, i});
  }
  if (ycols.size() < 2)
    throw validation_error("csv: found " + std::to_string(ycols.size()) +
                           " indifference columns with prefix '" +
                           schema.y_prefix + "', need at least 2");
  std::sort(ycols.begin(), ycols.end(),
            [](const YColumn& a, const YColumn& b) { return a.delay < b.delay; });
  for (std::size_t i = 1; i < ycols.size(); ++i)
    if (ycols[i].delay == ycols[i - 1].delay)
      throw validation_error("csv: duplicate indifference delay " +
                             std::to_string(ycols[i].delay));

  ParseOutcome out;
  out.dataset.delay_schedule.reserve(ycols.size());
  for (const YColumn& yc : ycols) out.dataset.delay_schedule.push_back(yc.delay);

  std::set<std::string> seen_ids;
  std::vector<std::string> range_offenders;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw validation_error("csv: row " + std::to_string(line_no) + " has " +
                             std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(header.size()));

    const std::string& id = fields[col_id];
    if (!seen_ids.insert(id).second)
      out.warnings.push_back("duplicate id '" + id + "' at row " +
                             std::to_string(line_no));

    bool row_missing = false;
    std::vector<double> values;
    values.reserve(ycols.size());
    for (const YColumn& yc : ycols) {
      const std::string& cell = fields[yc.index];
      if (is_missing(cell)) {
        row_missing = true;
        break;
      }
      double v = 0.0;
      if (!parse_double(cell, v))
        throw validation_error("csv: row " + std::to_string(line_no) +
                               " column '" + header[yc.index] +
                               "': non-numeric value '" + cell + "'");
      if (!(v >= 0.0 && v <= 1.0))
        range_offenders.push_back("row " + std::to_string(line_no) + " column '" +
                                  header[yc.index] + "' value " + cell);
      values.push_back(v);
    }
    if (row_missing) {
      if (options.allow_missing) {
        out.warnings.push_back("dropped row " + std::to_string(line_no) +
                               " (id '" + id + "'): missing indifference value");
        continue;
      }
      throw validation_error("csv: row " + std::to_string(line_no) + " (id '" +
                             id + "') has a missing indifference value; "
                             "re-run with --allow-missing to drop such rows");
    }
    if (!range_offenders.empty()) continue;  // keep scanning to report them all

    double age = 0.0;
    if (!parse_double(fields[col_age], age))
      throw validation_error("csv: row " + std::to_string(line_no) +
                             " column '" + schema.age + "': non-numeric value '" +
                             fields[col_age] + "'");

    std::optional<std::string> attention;
    if (col_attention && !is_missing(fields[*col_attention]))
      attention = fields[*col_attention];
    std::optional<int> jb_stored;
    if (col_jb && !is_missing(fields[*col_jb])) {
      double flag = 0.0;
      if (!parse_double(fields[*col_jb], flag) || (flag != 0.0 && flag != 1.0))
        throw validation_error("csv: row " + std::to_string(line_no) +
                               " column '" + schema.jb + "': expected 0/1, got '" +
                               fields[*col_jb] + "'");
      jb_stored = static_cast<int>(flag);
    }

    out.dataset.rows.push_back(ParticipantRecord{
        id, age, fields[col_gender], fields[col_smoke],
        IndifferenceSeries(out.dataset.delay_schedule, std::move(values)),
        std::move(attention), jb_stored});
  }

  if (!range_offenders.empty()) {
    std::string msg = "csv: indifference values outside [0,1]:";
    for (const std::string& o : range_offenders) msg += "\n  " + o;
    throw validation_error(msg);
  }
  return out;
}

ParseOutcome read_wide_csv_file(const std::string& path, const Schema& schema,
                                const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_wide_csv(buf.str(), schema, options);
}

}  // namespace dd
