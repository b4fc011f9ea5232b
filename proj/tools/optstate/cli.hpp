#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "optstate/basins.hpp"

namespace optstate::cli {

/// Fully resolved command-line request.
struct RunPlan {
  std::string command;
  std::string scenario;
  std::map<std::string, std::string> scenario_params;
  std::string system;
  std::string potential;
  std::string mu;
  std::string nu;
  std::string x0;
  std::size_t n = 100'000;
  std::vector<double> epsilon{0.2, 0.1, 0.05};
  std::size_t grid = 0;     // 0: per-space default
  std::size_t workers = 0;  // 0: available parallelism
  std::uint64_t seed = 42;
  std::string out;          // empty: $OPTSTATE_OUT, else "."
  std::string format = "csv";
  std::vector<std::string> checks;
  std::string attractor;
  std::string mode = "weak";
  double cluster_tol = 0.0;
  double milnor_threshold = 0.95;

  friend bool operator==(const RunPlan&, const RunPlan&) = default;
};

const std::vector<std::string>& command_names();
const std::vector<std::string>& check_names();

/// Reads a configuration document. Unknown keys throw ParseError naming the
/// key path (e.g. "scenario.nmae").
RunPlan parse_config(const nlohmann::json& document);

/// The configuration document that parse_config maps back to `plan`.
nlohmann::ordered_json plan_to_json(const RunPlan& plan);

/// Parses argv (without the program name). `--config <file>` loads a
/// document first; flags given explicitly override its values.
RunPlan parse_args(const std::vector<std::string>& args);

/// Checks names and command-specific requirements.
void validate(const RunPlan& plan);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> summary;  // fixed order
  Table table;
  std::string console;  // text for stdout
  int exit_code = 0;    // 0 ok, 2 verification failure
};

Report run(const RunPlan& plan);

/// Shortest round-trip decimal form ("nan"/"inf" for non-finite values).
std::string format_number(double v);

std::string csv_text(const Table& table);
std::string summary_text(const std::vector<std::pair<std::string, std::string>>& summary);
std::string document_text(const Report& report);

/// Rows `x1[,x2[,x3]],verdict,<value names...>` for a scan.
Table scan_table(const BasinScanResult& scan);

/// Writes <command>.csv and <command>.summary.txt (format csv) or
/// <command>.json (format doc) into `dir`. Returns the written paths.
std::vector<std::filesystem::path> emit_report(const Report& report, const std::string& format,
                                               const std::filesystem::path& dir);

/// Output directory for a plan: --out, else $OPTSTATE_OUT, else ".".
std::filesystem::path output_dir(const RunPlan& plan);

/// Full driver: parse, run, emit. Returns the process exit code
/// (0 ok, 1 operational error, 2 verification failure).
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optstate::cli
