#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "optstate/errors.hpp"
#include "optstate/scenarios.hpp"

namespace optstate::cli {

namespace {

using nlohmann::json;

[[noreturn]] void key_error(const std::string& path, const std::string& what) {
  throw ParseError("config key '" + path + "': " + what, 0);
}

std::string as_text(const json& value, const std::string& path) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number()) return format_number(value.get<double>());
  key_error(path, "expected a string or number");
}

std::size_t as_count(const json& value, const std::string& path) {
  if (value.is_number_unsigned()) return value.get<std::size_t>();
  if (value.is_number_integer() && value.get<long long>() >= 0) {
    return static_cast<std::size_t>(value.get<long long>());
  }
  key_error(path, "expected a nonnegative integer");
}

double as_real(const json& value, const std::string& path) {
  if (value.is_number()) return value.get<double>();
  key_error(path, "expected a number");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : " ") + s;
  return out;
}

std::pair<std::string, std::string> split_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ParseError("--param expects key=value, got '" + text + "'", 0);
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

/// Every flag, bound to a local so that explicitly given ones can override
/// the configuration document.
struct Bindings {
  std::string command;
  std::string config;
  std::string scenario;
  std::vector<std::string> params;
  std::string system;
  std::string potential;
  std::string mu;
  std::string nu;
  std::string x0;
  std::size_t n = 0;
  std::vector<double> epsilon;
  std::size_t grid = 0;
  std::size_t workers = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::vector<std::string> checks;
  std::string attractor;
  std::string mode;
  double cluster_tol = 0.0;
  double milnor_threshold = 0.0;
  bool dump_config = false;
};

void configure(CLI::App& app, Bindings& b) {
  app.add_option("command", b.command, "orbit | growth | scan-growth | basin | milnor | "
                                       "observability | verify | distance | describe");
  app.add_option("--config", b.config, "JSON configuration document");
  app.add_option("--scenario", b.scenario, "named scenario");
  app.add_option("--param", b.params, "scenario parameter key=value (repeatable)");
  app.add_option("--system", b.system, "bare system name instead of a scenario");
  app.add_option("--potential", b.potential, "potential spec, e.g. cocycle:diag-cos");
  app.add_option("--mu", b.mu, "measure spec or scenario measure name");
  app.add_option("--nu", b.nu, "second measure for distance");
  app.add_option("--x0", b.x0, "start point, comma-separated coordinates");
  app.add_option("-n,--n", b.n, "horizon (map steps)");
  app.add_option("--epsilon", b.epsilon, "epsilon list, comma-separated")->delimiter(',');
  app.add_option("--grid", b.grid, "grid resolution per dimension");
  app.add_option("--workers", b.workers, "worker threads (0: all cores)");
  app.add_option("--seed", b.seed, "seed for sampling in verify suites and jitter");
  app.add_option("--out", b.out, "output directory (default $OPTSTATE_OUT or .)");
  app.add_option("--format", b.format, "csv | doc");
  app.add_option("--checks", b.checks, "verify suites, comma-separated")->delimiter(',');
  app.add_option("--attractor", b.attractor, "scenario attractor label or points:<p>;<p>");
  app.add_option("--mode", b.mode, "basin mode: weak | strong");
  app.add_option("--cluster-tol", b.cluster_tol, "limit-set cluster tolerance");
  app.add_option("--milnor-threshold", b.milnor_threshold, "visit fraction counted as in");
  app.add_flag("--dump-config", b.dump_config, "print the resolved configuration and exit");
}

bool given(const CLI::App& app, const std::string& name) {
  return app.get_option(name)->count() > 0;
}

RunPlan parse_with(const std::vector<std::string>& args, bool* dump_config) {
  CLI::App app{"optstate"};
  Bindings b;
  configure(app, b);
  std::vector<const char*> argv{"optstate"};
  for (const auto& a : args) argv.push_back(a.c_str());
  app.parse(static_cast<int>(argv.size()), argv.data());

  RunPlan plan;
  if (!b.config.empty()) {
    std::ifstream in(b.config);
    if (!in) throw Error("cannot read config file '" + b.config + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ParseError("config file '" + b.config + "' is not valid JSON: " + e.what(), e.byte);
    }
    plan = parse_config(doc);
  }
  if (given(app, "command")) plan.command = b.command;
  if (given(app, "--scenario")) plan.scenario = b.scenario;
  for (const auto& p : b.params) {
    const auto [key, value] = split_param(p);
    plan.scenario_params[key] = value;
  }
  if (given(app, "--system")) plan.system = b.system;
  if (given(app, "--potential")) plan.potential = b.potential;
  if (given(app, "--mu")) plan.mu = b.mu;
  if (given(app, "--nu")) plan.nu = b.nu;
  if (given(app, "--x0")) plan.x0 = b.x0;
  if (given(app, "--n")) plan.n = b.n;
  if (given(app, "--epsilon")) plan.epsilon = b.epsilon;
  if (given(app, "--grid")) plan.grid = b.grid;
  if (given(app, "--workers")) plan.workers = b.workers;
  if (given(app, "--seed")) plan.seed = b.seed;
  if (given(app, "--out")) plan.out = b.out;
  if (given(app, "--format")) plan.format = b.format;
  if (given(app, "--checks")) plan.checks = b.checks;
  if (given(app, "--attractor")) plan.attractor = b.attractor;
  if (given(app, "--mode")) plan.mode = b.mode;
  if (given(app, "--cluster-tol")) plan.cluster_tol = b.cluster_tol;
  if (given(app, "--milnor-threshold")) plan.milnor_threshold = b.milnor_threshold;
  if (dump_config != nullptr) *dump_config = b.dump_config;
  return plan;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"orbit",         "growth", "scan-growth",
                                              "basin",         "milnor", "observability",
                                              "verify",        "distance", "describe"};
  return names;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"subadditivity", "lemma-sub", "metric-axioms",
                                              "empirical-recursion"};
  return names;
}

RunPlan parse_config(const json& doc) {
  if (!doc.is_object()) key_error("<root>", "expected an object");
  RunPlan plan;
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      plan.command = as_text(value, key);
    } else if (key == "scenario") {
      if (value.is_string()) {
        plan.scenario = value.get<std::string>();
        continue;
      }
      if (!value.is_object()) key_error(key, "expected a name or {name, params}");
      for (const auto& [sub, v] : value.items()) {
        if (sub == "name") {
          plan.scenario = as_text(v, "scenario.name");
        } else if (sub == "params") {
          if (!v.is_object()) key_error("scenario.params", "expected an object");
          for (const auto& [p, pv] : v.items()) {
            plan.scenario_params[p] = as_text(pv, "scenario.params." + p);
          }
        } else {
          key_error("scenario." + sub, "unknown key");
        }
      }
    } else if (key == "system") {
      plan.system = as_text(value, key);
    } else if (key == "potential") {
      plan.potential = as_text(value, key);
    } else if (key == "mu") {
      plan.mu = as_text(value, key);
    } else if (key == "nu") {
      plan.nu = as_text(value, key);
    } else if (key == "x0") {
      plan.x0 = as_text(value, key);
    } else if (key == "n") {
      plan.n = as_count(value, key);
    } else if (key == "epsilon") {
      plan.epsilon.clear();
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          plan.epsilon.push_back(as_real(value[i], "epsilon[" + std::to_string(i) + "]"));
        }
      } else {
        plan.epsilon.push_back(as_real(value, key));
      }
    } else if (key == "grid_resolution") {
      plan.grid = as_count(value, key);
    } else if (key == "workers") {
      plan.workers = as_count(value, key);
    } else if (key == "seed") {
      plan.seed = as_count(value, key);
    } else if (key == "out") {
      plan.out = as_text(value, key);
    } else if (key == "format") {
      plan.format = as_text(value, key);
    } else if (key == "checks") {
      plan.checks.clear();
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          plan.checks.push_back(as_text(value[i], "checks[" + std::to_string(i) + "]"));
        }
      } else {
        plan.checks = split_list(as_text(value, key));
      }
    } else if (key == "attractor") {
      plan.attractor = as_text(value, key);
    } else if (key == "mode") {
      plan.mode = as_text(value, key);
    } else if (key == "cluster_tol") {
      plan.cluster_tol = as_real(value, key);
    } else if (key == "milnor_threshold") {
      plan.milnor_threshold = as_real(value, key);
    } else {
      key_error(key, "unknown key");
    }
  }
  return plan;
}

nlohmann::ordered_json plan_to_json(const RunPlan& plan) {
  nlohmann::ordered_json doc;
  doc["command"] = plan.command;
  nlohmann::ordered_json scenario;
  scenario["name"] = plan.scenario;
  scenario["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : plan.scenario_params) scenario["params"][k] = v;
  doc["scenario"] = scenario;
  doc["system"] = plan.system;
  doc["potential"] = plan.potential;
  doc["mu"] = plan.mu;
  doc["nu"] = plan.nu;
  doc["x0"] = plan.x0;
  doc["n"] = plan.n;
  doc["epsilon"] = plan.epsilon;
  doc["grid_resolution"] = plan.grid;
  doc["workers"] = plan.workers;
  doc["seed"] = plan.seed;
  doc["out"] = plan.out;
  doc["format"] = plan.format;
  doc["checks"] = plan.checks;
  doc["attractor"] = plan.attractor;
  doc["mode"] = plan.mode;
  doc["cluster_tol"] = plan.cluster_tol;
  doc["milnor_threshold"] = plan.milnor_threshold;
  return doc;
}

RunPlan parse_args(const std::vector<std::string>& args) { return parse_with(args, nullptr); }

void validate(const RunPlan& plan) {
  const auto& commands = command_names();
  if (plan.command.empty()) {
    throw ParseError("missing command; available: " + join(commands), 0);
  }
  if (std::find(commands.begin(), commands.end(), plan.command) == commands.end()) {
    throw UnknownNameError("unknown command '" + plan.command + "'; available: " + join(commands));
  }
  if (!plan.scenario.empty()) {
    const auto names = scenario_names();
    if (std::find(names.begin(), names.end(), plan.scenario) == names.end()) {
      throw UnknownNameError("unknown scenario '" + plan.scenario + "'; available: " +
                             join(names));
    }
    if (!plan.system.empty()) throw ParameterError("give either --scenario or --system, not both");
  } else if (!plan.scenario_params.empty()) {
    throw ParameterError("--param needs --scenario");
  }
  if (plan.format != "csv" && plan.format != "doc") {
    throw UnknownNameError("unknown format '" + plan.format + "'; available: csv doc");
  }
  if (plan.mode != "weak" && plan.mode != "strong") {
    throw UnknownNameError("unknown basin mode '" + plan.mode + "'; available: weak strong");
  }
  for (const auto& c : plan.checks) {
    const auto& names = check_names();
    if (std::find(names.begin(), names.end(), c) == names.end()) {
      throw UnknownNameError("unknown check '" + c + "'; available: " + join(names));
    }
  }
  if (plan.epsilon.empty()) throw ParameterError("epsilon list is empty");
  for (const double e : plan.epsilon) {
    if (!(e > 0.0)) throw ParameterError("epsilon values must be > 0");
  }
  if (plan.n == 0) throw ParameterError("--n must be >= 1");
  if (!(plan.cluster_tol >= 0.0)) throw ParameterError("cluster tolerance must be >= 0");

  const std::string& c = plan.command;
  const bool needs_system = c != "describe" && c != "distance";
  if (needs_system && plan.scenario.empty() && plan.system.empty()) {
    throw ParameterError(c + " needs --scenario or --system");
  }
  const auto require = [&](bool ok, const std::string& flag) {
    if (!ok) throw ParameterError(c + " needs " + flag);
  };
  if (c == "orbit") require(!plan.x0.empty(), "--x0");
  if (c == "growth") {
    require(!plan.potential.empty(), "--potential");
    require(!plan.x0.empty(), "--x0");
  }
  if (c == "scan-growth") require(!plan.potential.empty(), "--potential");
  if (c == "basin" || c == "observability") require(!plan.mu.empty(), "--mu");
  if (c == "milnor") require(!plan.attractor.empty(), "--attractor");
  if (c == "distance") {
    require(!plan.mu.empty(), "--mu");
    require(!plan.nu.empty(), "--nu");
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    bool dump = false;
    const RunPlan plan = parse_with(args, &dump);
    if (dump) {
      out << plan_to_json(plan).dump(2) << "\n";
      return 0;
    }
    validate(plan);
    const auto start = std::chrono::steady_clock::now();
    const Report report = run(plan);
    const auto paths = emit_report(report, plan.format, output_dir(plan));
    out << report.console;
    for (const auto& p : paths) out << "wrote " << p.string() << "\n";
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << "runtime_seconds = " << format_number(seconds) << "\n";
    return report.exit_code;
  } catch (const CLI::CallForHelp&) {
    CLI::App app{"optstate: growth rates, basins of attraction and observability scans"};
    Bindings b;
    configure(app, b);
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace optstate::cli
