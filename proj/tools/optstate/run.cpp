#include <algorithm>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "optstate/errors.hpp"
#include "optstate/scenarios.hpp"

namespace optstate::cli {

namespace {

using Summary = std::vector<std::pair<std::string, std::string>>;

constexpr std::size_t kVerifySamples = 1000;
constexpr std::size_t kVerifyHorizon = 1000;
constexpr std::size_t kLemmaPoints = 100;
constexpr std::size_t kRecursionPoints = 10;
const std::vector<std::size_t> kLemmaBlocks{1, 2, 5, 10};

Scenario resolve_scenario(const RunPlan& plan) {
  if (!plan.scenario.empty()) return build_scenario(plan.scenario, plan.scenario_params);
  return bare_scenario(plan.system);
}

Measure resolve_measure(const Scenario& s, const std::string& spec) {
  for (const NamedMeasure& m : s.measures) {
    if (m.name == spec) return m.measure;
  }
  return measure_from_spec(spec, s.system);
}

AttractorSpec resolve_attractor(const Scenario& s, const std::string& spec) {
  if (spec.starts_with("points:")) {
    std::vector<Point> points;
    std::stringstream in(spec.substr(7));
    std::string item;
    while (std::getline(in, item, ';')) points.push_back(s.system.space().parse_point(item));
    return AttractorSpec(s.system.space(), std::move(points), spec);
  }
  return s.attractor(spec);
}

std::size_t default_resolution(const StateSpace& space) {
  switch (space.kind()) {
    case SpaceKind::circle:
    case SpaceKind::interval: return 10'000;
    case SpaceKind::torus2:
    case SpaceKind::planar_ball: return 100;
    case SpaceKind::simplex3: return 20;
  }
  return 100;
}

GridSpec grid_for(const Scenario& s, const RunPlan& plan) {
  GridSpec g;
  g.resolution = plan.grid > 0 ? plan.grid : default_resolution(s.system.space());
  g.excluded = s.scan_exclusions;
  g.exclusion_radius = s.scan_exclusion_radius;
  return g;
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (const double v : values) out += (out.empty() ? "" : ",") + format_number(v);
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

/// Header lines shared by every command: what ran, on what, with which seed.
Summary preamble(const RunPlan& plan, const Scenario& s) {
  Summary out{{"command", plan.command},
              {"scenario", plan.scenario.empty() ? "-" : plan.scenario},
              {"system", s.system.label()},
              {"space", s.system.space().name()}};
  for (const auto& [k, v] : s.params) out.emplace_back("param." + k, v);
  out.emplace_back("seed", std::to_string(plan.seed));
  return out;
}

void add_scan_counts(Summary& summary, const BasinScanResult& scan) {
  summary.emplace_back("cells", std::to_string(scan.cells.size()));
  summary.emplace_back("in", std::to_string(scan.in));
  summary.emplace_back("out", std::to_string(scan.out));
  summary.emplace_back("indeterminate", std::to_string(scan.indeterminate));
  summary.emplace_back("errors", std::to_string(scan.errors));
}

std::vector<std::string> coordinate_columns(std::size_t dim) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

std::string console_from(const Summary& summary) { return summary_text(summary); }

Report run_orbit(const RunPlan& plan, const Scenario& s) {
  const Point x = s.system.space().parse_point(plan.x0);
  const Orbit o = orbit(s.system, x, plan.n);
  Report r;
  r.table.columns = {"j"};
  const auto coords = coordinate_columns(s.system.space().dim());
  r.table.columns.insert(r.table.columns.end(), coords.begin(), coords.end());
  r.table.columns.push_back("weight");
  const std::string weight = format_number(1.0 / static_cast<double>(o.size()));
  for (std::size_t j = 0; j < o.size(); ++j) {
    std::vector<std::string> row{std::to_string(j)};
    for (const double c : o.points[j].coords()) row.push_back(format_number(c));
    row.push_back(weight);
    r.table.rows.push_back(std::move(row));
  }
  r.summary = preamble(plan, s);
  r.summary.emplace_back("x0", x.to_string());
  r.summary.emplace_back("n", std::to_string(plan.n));
  r.summary.emplace_back("last", o.points.back().to_string());
  return r;
}

Report run_growth(const RunPlan& plan, const Scenario& s) {
  const SubadditivePotential phi = s.potential(plan.potential);
  const Point x = s.system.space().parse_point(plan.x0);
  const GrowthRateReport g = growth_report(phi, s.system, x, plan.n);
  Report r;
  r.table.columns = {"n", "rate"};
  for (const auto& [n, rate] : g.series) {
    r.table.rows.push_back({std::to_string(n), format_number(rate)});
  }
  r.summary = preamble(plan, s);
  r.summary.emplace_back("potential", phi.label());
  r.summary.emplace_back("x0", x.to_string());
  r.summary.emplace_back("n", std::to_string(plan.n));
  r.summary.emplace_back("window_begin", std::to_string(g.window_begin));
  r.summary.emplace_back("largest_rate", format_number(g.largest_rate));
  r.summary.emplace_back("smallest_rate", format_number(g.smallest_rate));
  r.summary.emplace_back("optimal", bool_text(g.optimal));
  return r;
}

Report run_scan_growth(const RunPlan& plan, const Scenario& s) {
  const SubadditivePotential phi = s.potential(plan.potential);
  const GridSpec grid = grid_for(s, plan);
  const BasinScanResult scan = optimal_point_scan(s.system, phi, grid, plan.n, {}, plan.workers);
  Report r;
  r.table = scan_table(scan);
  r.summary = preamble(plan, s);
  r.summary.emplace_back("potential", phi.label());
  r.summary.emplace_back("n", std::to_string(plan.n));
  r.summary.emplace_back("grid", std::to_string(grid.resolution));
  r.summary.emplace_back("fraction_optimal", format_number(scan.statistic("fraction_optimal")));
  r.summary.emplace_back("fraction_smallest_negative",
                         format_number(scan.statistic("fraction_smallest_negative")));
  r.summary.emplace_back("mean_largest_rate", format_number(scan.statistic("mean_largest_rate")));
  r.summary.emplace_back("mean_smallest_rate",
                         format_number(scan.statistic("mean_smallest_rate")));
  r.summary.emplace_back("cells", std::to_string(scan.cells.size()));
  r.summary.emplace_back("errors", std::to_string(scan.errors));
  r.summary.emplace_back("indeterminate", std::to_string(scan.indeterminate));
  return r;
}

ClassifyParams classify_params(const RunPlan& plan) {
  ClassifyParams p;
  p.horizon = plan.n;
  p.cluster_tol = plan.cluster_tol;
  return p;
}

Report run_basin(const RunPlan& plan, const Scenario& s) {
  BasinQuery q;
  q.mode = plan.mode == "strong" ? BasinMode::strong : BasinMode::weak;
  q.mu = resolve_measure(s, plan.mu);
  q.epsilon = plan.epsilon.front();
  q.params = classify_params(plan);
  const GridSpec grid = grid_for(s, plan);
  const BasinScanResult scan = grid_scan(s.system, q, grid, plan.workers);
  Report r;
  r.table = scan_table(scan);
  r.summary = preamble(plan, s);
  r.summary.emplace_back("mu", plan.mu);
  r.summary.emplace_back("mode", plan.mode);
  r.summary.emplace_back("epsilon", format_number(q.epsilon));
  r.summary.emplace_back("cluster_tol",
                         format_number(plan.cluster_tol > 0 ? plan.cluster_tol : q.epsilon / 4));
  r.summary.emplace_back("n", std::to_string(plan.n));
  r.summary.emplace_back("grid", std::to_string(grid.resolution));
  r.summary.emplace_back("fraction", format_number(scan.fraction));
  add_scan_counts(r.summary, scan);
  return r;
}

Report run_milnor(const RunPlan& plan, const Scenario& s) {
  const AttractorSpec k = resolve_attractor(s, plan.attractor);
  Report r;
  r.summary = preamble(plan, s);
  r.summary.emplace_back("attractor", k.label);
  r.summary.emplace_back("n", std::to_string(plan.n));
  if (!plan.x0.empty()) {
    const Point x = s.system.space().parse_point(plan.x0);
    const std::vector<double> f = milnor_fractions(s.system, x, k, plan.epsilon, plan.n);
    r.table.columns = {"epsilon", "milnor_fraction"};
    for (std::size_t i = 0; i < f.size(); ++i) {
      r.table.rows.push_back({format_number(plan.epsilon[i]), format_number(f[i])});
    }
    r.summary.emplace_back("x0", x.to_string());
    r.summary.emplace_back("epsilon", join_numbers(plan.epsilon));
    r.summary.emplace_back("milnor_fraction", join_numbers(f));
    return r;
  }
  BasinQuery q;
  q.mode = BasinMode::milnor;
  q.attractor = k;
  q.epsilon = plan.epsilon.front();
  q.params = classify_params(plan);
  q.milnor_threshold = plan.milnor_threshold;
  const GridSpec grid = grid_for(s, plan);
  const BasinScanResult scan = grid_scan(s.system, q, grid, plan.workers);
  double sum = 0.0;
  for (const CellOutcome& c : scan.cells) {
    if (c.verdict != Verdict::error) sum += c.values[0];
  }
  r.table = scan_table(scan);
  r.summary.emplace_back("epsilon", format_number(q.epsilon));
  r.summary.emplace_back("milnor_threshold", format_number(q.milnor_threshold));
  r.summary.emplace_back("grid", std::to_string(grid.resolution));
  r.summary.emplace_back("fraction", format_number(scan.fraction));
  r.summary.emplace_back(
      "mean_milnor_fraction",
      format_number(scan.evaluated() > 0 ? sum / static_cast<double>(scan.evaluated()) : 0.0));
  add_scan_counts(r.summary, scan);
  return r;
}

Report run_observability(const RunPlan& plan, const Scenario& s) {
  const Measure mu = resolve_measure(s, plan.mu);
  const GridSpec grid = grid_for(s, plan);
  const ObservabilityReport obs =
      observability_check(s.system, mu, plan.epsilon, grid, classify_params(plan), plan.workers);
  Report r;
  const BasinScanResult& first = obs.weak.front();
  r.table.columns = coordinate_columns(s.system.space().dim());
  for (const double e : obs.epsilons) r.table.columns.push_back("weak_" + format_number(e));
  for (const double e : obs.epsilons) r.table.columns.push_back("strong_" + format_number(e));
  for (const auto& name : first.value_names) r.table.columns.push_back(name);
  for (std::size_t i = 0; i < first.cells.size(); ++i) {
    std::vector<std::string> row;
    for (const double c : first.centers[i].coords()) row.push_back(format_number(c));
    for (const auto& scan : obs.weak) row.push_back(to_string(scan.cells[i].verdict));
    for (const auto& scan : obs.strong) row.push_back(to_string(scan.cells[i].verdict));
    for (const double v : first.cells[i].values) row.push_back(format_number(v));
    r.table.rows.push_back(std::move(row));
  }
  r.summary = preamble(plan, s);
  r.summary.emplace_back("mu", plan.mu);
  r.summary.emplace_back("epsilon", join_numbers(obs.epsilons));
  r.summary.emplace_back("cluster_tol", format_number(obs.cluster_tol));
  r.summary.emplace_back("n", std::to_string(plan.n));
  r.summary.emplace_back("grid", std::to_string(grid.resolution));
  r.summary.emplace_back("cells", std::to_string(first.cells.size()));
  r.summary.emplace_back("errors", std::to_string(first.errors));
  for (std::size_t e = 0; e < obs.epsilons.size(); ++e) {
    const std::string tag = format_number(obs.epsilons[e]);
    r.summary.emplace_back("weak_fraction_" + tag, format_number(obs.weak[e].fraction));
    r.summary.emplace_back("strong_fraction_" + tag, format_number(obs.strong[e].fraction));
    r.summary.emplace_back("weak_indeterminate_" + tag,
                           std::to_string(obs.weak[e].indeterminate));
    r.summary.emplace_back("strong_indeterminate_" + tag,
                           std::to_string(obs.strong[e].indeterminate));
  }
  r.summary.emplace_back("observable_weak", bool_text(obs.observable_weak));
  r.summary.emplace_back("observable_strong", bool_text(obs.observable_strong));
  return r;
}

Report run_verify(const RunPlan& plan, const Scenario& s) {
  const std::vector<std::string> checks = plan.checks.empty() ? check_names() : plan.checks;
  std::vector<NamedPotential> potentials;
  if (!plan.potential.empty()) {
    potentials.push_back({plan.potential, s.potential(plan.potential)});
  } else {
    potentials = s.potentials;
  }
  const auto wants = [&](const std::string& c) {
    return std::find(checks.begin(), checks.end(), c) != checks.end();
  };
  if ((wants("subadditivity") || wants("lemma-sub")) && potentials.empty()) {
    throw ParameterError("no potentials to verify; pass --potential");
  }

  Report r;
  r.table.columns = {"check", "target", "parameter", "max_violation", "pass"};
  std::size_t failures = 0;
  const auto record = [&](const std::string& check, const std::string& target,
                          const std::string& parameter, double violation, bool pass) {
    r.table.rows.push_back({check, target, parameter, format_number(violation), bool_text(pass)});
    if (!pass) ++failures;
  };

  if (wants("subadditivity")) {
    for (const auto& p : potentials) {
      const SubadditivityReport rep =
          check_subadditivity(p.potential, s.system, kVerifySamples, kVerifyHorizon, plan.seed);
      record("subadditivity", p.spec,
             "samples=" + std::to_string(kVerifySamples) +
                 ";n_max=" + std::to_string(kVerifyHorizon),
             rep.max_violation, rep.pass);
    }
  }
  if (wants("lemma-sub")) {
    std::mt19937_64 rng(plan.seed);
    std::vector<Point> points;
    for (std::size_t i = 0; i < kLemmaPoints; ++i) points.push_back(s.system.space().sample(rng));
    std::vector<std::size_t> horizons(kVerifyHorizon);
    for (std::size_t n = 0; n < kVerifyHorizon; ++n) horizons[n] = n + 1;
    for (const auto& p : potentials) {
      for (const std::size_t l : kLemmaBlocks) {
        const LemmaSubReport rep = lemma_sub_check(p.potential, s.system, l, points, horizons);
        record("lemma-sub", p.spec, "l=" + std::to_string(l) + ";C=" + format_number(rep.c),
               rep.max_violation, rep.pass);
      }
    }
  }
  const WeakStarMetric metric = WeakStarMetric::default_for(s.system.space());
  if (wants("metric-axioms")) {
    const MetricAxiomsReport rep = check_metric_axioms(metric, kVerifySamples, plan.seed);
    record("metric-axioms", metric.family().description(),
           "samples=" + std::to_string(kVerifySamples), rep.max_triangle_excess, rep.pass);
  }
  if (wants("empirical-recursion")) {
    const EmpiricalRecursionReport rep = check_empirical_recursion(
        s.system, metric, kRecursionPoints, kVerifyHorizon, plan.seed);
    record("empirical-recursion", s.system.label(),
           "points=" + std::to_string(kRecursionPoints) +
               ";n_max=" + std::to_string(kVerifyHorizon),
           rep.max_moment_deviation, rep.pass);
  }

  r.summary = preamble(plan, s);
  std::string joined;
  for (const auto& c : checks) joined += (joined.empty() ? "" : ",") + c;
  r.summary.emplace_back("checks", joined);
  r.summary.emplace_back("rows", std::to_string(r.table.rows.size()));
  r.summary.emplace_back("failures", std::to_string(failures));
  r.summary.emplace_back("pass", bool_text(failures == 0));
  r.exit_code = failures == 0 ? 0 : 2;
  return r;
}

Report run_distance(const RunPlan& plan) {
  const Scenario s = plan.scenario.empty() && plan.system.empty()
                         ? bare_scenario("doubling")
                         : resolve_scenario(plan);
  const Measure mu = resolve_measure(s, plan.mu);
  const Measure nu = resolve_measure(s, plan.nu);
  const WeakStarMetric metric = WeakStarMetric::default_for(s.system.space());
  const double d = weak_star_distance(metric, mu, nu);
  Report r;
  r.table.columns = {"mu", "nu", "distance"};
  r.table.rows.push_back({plan.mu, plan.nu, format_number(d)});
  r.summary = preamble(plan, s);
  r.summary.emplace_back("mu", plan.mu);
  r.summary.emplace_back("nu", plan.nu);
  r.summary.emplace_back("metric", metric.family().description());
  r.summary.emplace_back("distance", format_number(d));
  r.console = format_number(d) + "\n";
  return r;
}

Report run_describe(const RunPlan& plan) {
  Report r;
  if (plan.scenario.empty() && plan.system.empty()) {
    std::string names;
    for (const auto& n : scenario_names()) names += (names.empty() ? "" : ",") + n;
    r.summary = {{"command", "describe"},
                 {"scenarios", names},
                 {"systems", "doubling,rotation:<alpha>,interval-halving,"
                             "may-leonard:<alpha>,<beta>,<tau>"},
                 {"commands", "orbit,growth,scan-growth,basin,milnor,observability,verify,"
                              "distance,describe"}};
    return r;
  }
  const Scenario s = resolve_scenario(plan);
  const std::string text = describe(s);
  std::stringstream in(text);
  std::string line;
  r.summary.emplace_back("command", "describe");
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) r.summary.emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return r;
}

}  // namespace

Report run(const RunPlan& plan) {
  validate(plan);
  Report report;
  if (plan.command == "describe") {
    report = run_describe(plan);
  } else if (plan.command == "distance") {
    report = run_distance(plan);
  } else {
    const Scenario s = resolve_scenario(plan);
    if (plan.command == "orbit") report = run_orbit(plan, s);
    else if (plan.command == "growth") report = run_growth(plan, s);
    else if (plan.command == "scan-growth") report = run_scan_growth(plan, s);
    else if (plan.command == "basin") report = run_basin(plan, s);
    else if (plan.command == "milnor") report = run_milnor(plan, s);
    else if (plan.command == "observability") report = run_observability(plan, s);
    else report = run_verify(plan, s);
  }
  report.command = plan.command;
  if (report.console.empty()) report.console = console_from(report.summary);
  return report;
}

}  // namespace optstate::cli
