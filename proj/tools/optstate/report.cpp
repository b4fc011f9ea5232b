#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "cli.hpp"
#include "optstate/errors.hpp"

namespace optstate::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(row[i]);
  }
  out += '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot write " + path.string());
  f << text;
  if (!f) throw ParameterError("write failed: " + path.string());
}

}  // namespace

std::string csv_text(const Table& table) {
  std::string out;
  append_row(out, table.columns);
  for (const auto& row : table.rows) append_row(out, row);
  return out;
}

std::string summary_text(const std::vector<std::pair<std::string, std::string>>& summary) {
  std::string out;
  for (const auto& [k, v] : summary) out += k + " = " + v + "\n";
  return out;
}

std::string document_text(const Report& report) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.summary) summary[k] = v;
  doc["summary"] = summary;
  doc["columns"] = report.table.columns;
  doc["rows"] = report.table.rows;
  return doc.dump(2) + "\n";
}

Table scan_table(const BasinScanResult& scan) {
  Table t;
  const std::size_t dim = scan.centers.empty() ? 0 : scan.centers.front().dim();
  for (std::size_t i = 0; i < dim; ++i) t.columns.push_back("x" + std::to_string(i + 1));
  t.columns.push_back("verdict");
  t.columns.insert(t.columns.end(), scan.value_names.begin(), scan.value_names.end());
  for (std::size_t i = 0; i < scan.cells.size(); ++i) {
    std::vector<std::string> row;
    for (const double c : scan.centers[i].coords()) row.push_back(format_number(c));
    const CellOutcome& cell = scan.cells[i];
    row.push_back(to_string(cell.verdict));
    for (std::size_t k = 0; k < scan.value_names.size(); ++k) {
      row.push_back(k < cell.values.size() ? format_number(cell.values[k]) : "nan");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::filesystem::path> emit_report(const Report& report, const std::string& format,
                                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  if (format == "doc") {
    written.push_back(dir / (report.command + ".json"));
    write_file(written.back(), document_text(report));
    return written;
  }
  if (!report.table.columns.empty()) {
    written.push_back(dir / (report.command + ".csv"));
    write_file(written.back(), csv_text(report.table));
  }
  written.push_back(dir / (report.command + ".summary.txt"));
  write_file(written.back(), summary_text(report.summary));
  return written;
}

std::filesystem::path output_dir(const RunPlan& plan) {
  if (!plan.out.empty()) return plan.out;
  if (const char* env = std::getenv("OPTSTATE_OUT"); env != nullptr && *env != '\0') return env;
  return ".";
}

}  // namespace optstate::cli
