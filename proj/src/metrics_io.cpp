#include "dd/metrics_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dd/dataio.hpp"
#include "dd/errors.hpp"
#include "dd/format.hpp"

namespace dd {
namespace {

constexpr const char* kHeader =
    "id,k_mazur,ln_k,ed50_mazur,k_rachlin,s_rachlin,ed50_rachlin,auc,auc_log,"
    "jb_violation,attention_fail,fit_converged";

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : "NA";
}

bool combined_converged(const ParticipantMetrics& m) {
  return m.mazur.converged && (!m.rachlin || m.rachlin->converged);
}

double cell_to_double(const std::string& cell, const char* column) {
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  if (cell == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw validation_error("metrics csv: bad value '" + cell + "' in column " +
                           column);
  return v;
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void write_metrics_csv(std::span<const ParticipantMetrics> metrics,
                       std::ostream& out) {
  out << kHeader << '\n';
  for (const ParticipantMetrics& m : metrics) {
    out << csv_escape(m.id) << ',' << format_double(m.mazur.params.k) << ','
        << opt_cell(m.ln_k) << ',' << format_double(m.ed50_mazur) << ',';
    if (m.rachlin)
      out << format_double(m.rachlin->params.k) << ','
          << format_double(m.rachlin->params.s) << ','
          << opt_cell(m.ed50_rachlin) << ',';
    else
      out << "NA,NA,NA,";
    out << format_double(m.auc) << ',' << format_double(m.auc_log) << ','
        << (m.jb_violation ? 1 : 0) << ',';
    if (m.attention_fail)
      out << (*m.attention_fail ? 1 : 0);
    else
      out << "NA";
    out << ',' << (combined_converged(m) ? 1 : 0) << '\n';
  }
  if (!out) throw io_error("metrics csv: write failed");
}

std::string metrics_to_csv(std::span<const ParticipantMetrics> metrics) {
  std::ostringstream out;
  write_metrics_csv(metrics, out);
  return out.str();
}

std::vector<ParticipantMetrics> parse_metrics_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line))
    throw validation_error("metrics csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw validation_error("metrics csv: unexpected header '" + line + "'");

  std::vector<ParticipantMetrics> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 12)
      throw validation_error("metrics csv: expected 12 fields, got " +
                             std::to_string(f.size()));
    ParticipantMetrics m;
    m.id = f[0];
    m.mazur.params = MazurParams(cell_to_double(f[1], "k_mazur"));
    m.mazur.converged = cell_to_double(f[11], "fit_converged") != 0.0;
    if (f[2] != "NA") m.ln_k = cell_to_double(f[2], "ln_k");
    m.ed50_mazur = cell_to_double(f[3], "ed50_mazur");
    if (f[4] != "NA") {
      RachlinFit r;
      r.params = RachlinParams(cell_to_double(f[4], "k_rachlin"),
                               cell_to_double(f[5], "s_rachlin"));
      r.converged = m.mazur.converged;
      m.rachlin = r;
      if (f[6] != "NA") m.ed50_rachlin = cell_to_double(f[6], "ed50_rachlin");
    }
    m.auc = cell_to_double(f[7], "auc");
    m.auc_log = cell_to_double(f[8], "auc_log");
    m.jb_violation = cell_to_double(f[9], "jb_violation") != 0.0;
    if (f[10] != "NA") m.attention_fail = cell_to_double(f[10], "attention_fail") != 0.0;
    out.push_back(std::move(m));
  }
  return out;
}

void write_metrics_json(std::span<const ParticipantMetrics> metrics,
                        std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ParticipantMetrics& m : metrics) {
    nlohmann::json row;
    row["id"] = m.id;
    row["k_mazur"] = json_number(m.mazur.params.k);
    row["ln_k"] = m.ln_k ? nlohmann::json(*m.ln_k) : nlohmann::json(nullptr);
    row["ed50_mazur"] = json_number(m.ed50_mazur);
    row["k_rachlin"] =
        m.rachlin ? json_number(m.rachlin->params.k) : nlohmann::json(nullptr);
    row["s_rachlin"] =
        m.rachlin ? json_number(m.rachlin->params.s) : nlohmann::json(nullptr);
    row["ed50_rachlin"] = m.ed50_rachlin ? json_number(*m.ed50_rachlin)
                                         : nlohmann::json(nullptr);
    row["auc"] = m.auc;
    row["auc_log"] = m.auc_log;
    row["jb_violation"] = m.jb_violation;
    row["attention_fail"] = m.attention_fail
                                ? nlohmann::json(*m.attention_fail)
                                : nlohmann::json(nullptr);
    row["fit_converged"] = combined_converged(m);
    arr.push_back(std::move(row));
  }
  out << arr.dump(2) << '\n';
  if (!out) throw io_error("metrics json: write failed");
}

}  // namespace dd
