// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 4 9        run only criteria 4 and 9
//
// Criterion 10 reruns the scans of criteria 4, 7, 8 and 9 with four workers
// and compares the emitted files byte for byte against the one-worker run.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "optstate/errors.hpp"
#include "optstate/scenarios.hpp"

namespace {

using namespace optstate;
using cli::Report;
using cli::RunPlan;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) { return cli::format_number(v); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Point> seeded_points(const StateSpace& s, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(s.sample(rng));
  return out;
}

// Every potential named by a built-in scenario, deduplicated by scenario and spec.
std::vector<std::pair<Scenario, NamedPotential>> builtin_potentials() {
  std::vector<std::pair<Scenario, NamedPotential>> out;
  for (const std::string& name : scenario_names()) {
    const Scenario s = build_scenario(name);
    for (const NamedPotential& p : s.potentials) out.emplace_back(s, p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Independent oracle for the bump potential integral.

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double bump_reference(double x) {
  const double r = 0.05, baseline = -0.2;
  const std::pair<double, double> bumps[] = {{0.0, -1.0}, {1.0 / 3, 1.0}, {2.0 / 3, 1.0}};
  for (const auto& [centre, peak] : bumps) {
    const double d0 = std::fabs(x - centre);
    const double d = std::min(d0, 1.0 - d0);
    if (d < r) {
      const double w = smoothstep(1.0 - d / r);
      return peak * w + baseline * (1.0 - w);
    }
  }
  return baseline;
}

double bump_quadrature() {
  double total = 0.0;
  for (int i = 0; i < 2048; ++i) total += bump_reference((i + 0.5) / 2048.0);
  return total / 2048.0;
}

// ---------------------------------------------------------------------------
// Scans shared by several criteria.

double summary_number(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.summary) {
    if (k == key) return std::stod(v);
  }
  throw std::runtime_error("summary has no key " + key);
}

std::vector<double> column(const Report& r, const std::string& name) {
  const auto it = std::find(r.table.columns.begin(), r.table.columns.end(), name);
  if (it == r.table.columns.end()) throw std::runtime_error("table has no column " + name);
  const auto k = static_cast<std::size_t>(it - r.table.columns.begin());
  std::vector<double> out;
  for (const auto& row : r.table.rows) out.push_back(std::stod(row[k]));
  return out;
}

double fraction_where(const std::vector<double>& values, const std::function<bool(double)>& pred) {
  if (values.empty()) return 0.0;
  const auto hits = std::count_if(values.begin(), values.end(), pred);
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

RunPlan heteroclinic_plan(const std::string& command) {
  RunPlan p;
  p.command = command;
  p.scenario = "heteroclinic-bowen";
  p.scenario_params = {{"alpha", "0.8"}, {"beta", "1.9"}, {"tau", "0.1"}};
  p.n = 100'000;
  p.grid = 20;
  return p;
}

// Limit-set spread and the dist* of every cluster to the vertex-Dirac hull.
Report heteroclinic_limit_sets(std::size_t workers) {
  const RunPlan plan = heteroclinic_plan("limit-sets");
  const Scenario s = build_scenario(plan.scenario, plan.scenario_params);
  const WeakStarMetric metric = WeakStarMetric::default_for(s.system.space());
  std::vector<Moments> vertices;
  for (const char* name : {"e1", "e2", "e3"}) vertices.push_back(moments(metric, s.measure(name)));
  const auto schedule = checkpoint_schedule(plan.n);
  constexpr double kClusterTol = 0.01;

  GridSpec grid;
  grid.resolution = plan.grid;
  grid.excluded = s.scan_exclusions;
  grid.exclusion_radius = s.scan_exclusion_radius;
  const BasinScanResult scan = scan_cells(
      s.system.space(), make_scan_grid(s.system.space(), grid),
      [&](const Point& x) {
        const LimitSetEstimate e = limit_set_estimate(s.system, x, schedule, metric, kClusterTol);
        double hull = 0.0;
        for (std::size_t c = 0; c < e.clusters.size(); ++c) {
          hull = std::max(hull, convex_hull_distance(metric, e.representative(c), vertices, 20));
        }
        const bool in = e.spread >= 0.02 && hull <= 0.1;
        return CellOutcome{in ? optstate::Verdict::in : optstate::Verdict::out,
                           {e.spread, static_cast<double>(e.clusters.size()), hull},
                           {}};
      },
      {"spread", "clusters", "max_hull_distance"}, workers);

  Report r;
  r.command = "limit-sets";
  r.table = cli::scan_table(scan);
  r.summary = {{"command", "limit-sets"},
               {"scenario", plan.scenario},
               {"n", std::to_string(plan.n)},
               {"grid", std::to_string(plan.grid)},
               {"cluster_tol", num(kClusterTol)},
               {"cells", std::to_string(scan.cells.size())},
               {"errors", std::to_string(scan.errors)},
               {"fraction", num(scan.fraction)}};
  return r;
}

struct ScanDefinition {
  std::string name;
  std::function<Report(std::size_t workers)> run;
};

Report via_cli(RunPlan plan, std::size_t workers) {
  plan.workers = workers;
  return cli::run(plan);
}

const std::vector<ScanDefinition>& scans() {
  static const std::vector<ScanDefinition> defs{
      {"bump-optimal",
       [](std::size_t w) {
         RunPlan p;
         p.command = "scan-growth";
         p.scenario = "doubling-prop43";
         p.potential = "birkhoff:prop43";
         p.n = 100'000;
         p.grid = 10'000;
         return via_cli(p, w);
       }},
      {"lebesgue-observability",
       [](std::size_t w) {
         RunPlan p;
         p.command = "observability";
         p.scenario = "doubling-basic";
         p.mu = "lebesgue";
         p.epsilon = {0.2, 0.1, 0.05};
         p.n = 100'000;
         p.grid = 10'000;
         return via_cli(p, w);
       }},
      {"dirac-observability",
       [](std::size_t w) {
         RunPlan p;
         p.command = "observability";
         p.scenario = "doubling-basic";
         p.mu = "dirac:0";
         p.epsilon = {0.2, 0.01};
         p.n = 100'000;
         p.grid = 10'000;
         return via_cli(p, w);
       }},
      {"heteroclinic-limit-sets", heteroclinic_limit_sets},
      {"heteroclinic-milnor",
       [](std::size_t w) {
         RunPlan p = heteroclinic_plan("milnor");
         p.attractor = "boundary";
         p.epsilon = {0.05};
         p.milnor_threshold = 0.95;
         return via_cli(p, w);
       }},
      {"heteroclinic-optimal",
       [](std::size_t w) {
         RunPlan p = heteroclinic_plan("scan-growth");
         p.potential = "birkhoff:vertices";
         return via_cli(p, w);
       }}};
  return defs;
}

class ScanCache {
 public:
  const Report& single_worker(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    for (const auto& d : scans()) {
      if (d.name == name) {
        const auto start = std::chrono::steady_clock::now();
        Report r = d.run(1);
        timings_[name] = seconds_since(start);
        return cache_.emplace(name, std::move(r)).first->second;
      }
    }
    throw std::runtime_error("unknown scan " + name);
  }
  double seconds(const std::string& name) const { return timings_.at(name); }

 private:
  std::map<std::string, Report> cache_;
  std::map<std::string, double> timings_;
};

// ---------------------------------------------------------------------------
// Criteria

Outcome subadditivity_suite(ScanCache&) {
  const auto start = std::chrono::steady_clock::now();
  double worst = -INFINITY;
  std::string worst_label;
  std::size_t count = 0;
  bool pass = true;
  for (const auto& [s, p] : builtin_potentials()) {
    const SubadditivityReport r = check_subadditivity(p.potential, s.system, 1000, 1000, 42, 1e-9);
    pass = pass && r.pass;
    if (r.max_violation > worst) {
      worst = r.max_violation;
      worst_label = s.name + "/" + p.spec;
    }
    ++count;
  }
  const double t = seconds_since(start);
  pass = pass && t <= 60.0;
  return {pass, std::to_string(count) + " potentials, 1000 samples, n+m <= 1000; max violation " +
                    num(worst) + " (" + worst_label + "); " + num(std::round(t * 10) / 10) +
                    " s of 60"};
}

Outcome lemma_sub_suite(ScanCache&) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> horizons(1000);
  for (std::size_t i = 0; i < horizons.size(); ++i) horizons[i] = i + 1;
  double worst = -INFINITY;
  std::size_t runs = 0;
  bool pass = true;
  for (const auto& [s, p] : builtin_potentials()) {
    const auto points = seeded_points(s.system.space(), 100, 42);
    for (const std::size_t l : {1u, 2u, 5u, 10u}) {
      const LemmaSubReport r = lemma_sub_check(p.potential, s.system, l, points, horizons, 1e-6);
      pass = pass && r.pass;
      worst = std::max(worst, r.max_violation);
      ++runs;
    }
  }
  const double t = seconds_since(start);
  pass = pass && t <= 120.0;
  return {pass, std::to_string(runs) + " (potential, l) pairs, 100 points, n <= 1000; max of " +
                    "phi_n - C - block sum " + num(worst) + "; " + num(std::round(t * 10) / 10) +
                    " s of 120"};
}

Outcome exact_growth_rates(ScanCache&) {
  const Scenario s = build_scenario("cocycle-stability");
  const auto points = seeded_points(s.system.space(), 20, 42);
  double half_error = 0.0, rotation_error = 0.0;
  for (const Point& x : points) {
    const GrowthRateReport h = growth_report(s.potential("cocycle:diag-half"), s.system, x, 1000);
    half_error = std::max({half_error, std::fabs(h.largest_rate - std::log(0.5)),
                           std::fabs(h.smallest_rate - std::log(0.5))});
    const GrowthRateReport r =
        growth_report(s.potential("cocycle:scaled-rotation"), s.system, x, 1000);
    rotation_error = std::max(
        {rotation_error, std::fabs(r.largest_rate + 1.0), std::fabs(r.smallest_rate + 1.0)});
  }
  return {half_error <= 1e-9 && rotation_error <= 1e-12,
          "diag(0.5,0.25): |rate - ln 0.5| <= " + num(half_error) +
              "; scaled rotation: |rate + 1| <= " + num(rotation_error) + " over 20 points"};
}

Outcome bump_observable_optimal_set(ScanCache& cache) {
  const double oracle = bump_quadrature();
  const Report& r = cache.single_worker("bump-optimal");
  const double smallest_negative = summary_number(r, "fraction_smallest_negative");
  const double mean_largest = summary_number(r, "mean_largest_rate");
  const double t = cache.seconds("bump-optimal");
  const bool pass = oracle < 0.0 && smallest_negative >= 0.99 &&
                    std::fabs(mean_largest - oracle) <= 0.02 && t <= 600.0;
  return {pass, "quadrature integral " + num(oracle) + "; fraction(smallest < 0) " +
                    num(smallest_negative) + "; mean largest rate " + num(mean_largest) +
                    "; fraction optimal " + num(summary_number(r, "fraction_optimal")) + "; " +
                    num(std::round(t * 10) / 10) + " s of 600"};
}

Outcome strong_basin_fixed_point(ScanCache&) {
  const Scenario s = build_scenario("doubling-prop43");
  const WeakStarMetric metric = WeakStarMetric::default_for(s.system.space());
  const Measure d0 = Measure::dirac(s.system.space(), Point::scalar(0.0));
  bool strong = true;
  for (const double eps : {0.2, 0.05}) {
    strong = strong && classify_point(s.system, Point::scalar(0.0), d0, eps, metric).in_strong;
  }
  const GrowthRateReport g =
      growth_report(s.potential("birkhoff:prop43"), s.system, Point::scalar(0.0), 100'000);
  return {strong && g.largest_rate == -1.0,
          std::string("x = 0 in strong basin of delta_0 at eps 0.2 and 0.05: ") +
              (strong ? "yes" : "no") + "; largest rate at 0: " + num(g.largest_rate)};
}

Outcome negation_duality(ScanCache&) {
  const Scenario s = build_scenario("doubling-prop43");
  const SubadditivePotential phi = s.potential("birkhoff:prop43");
  const SubadditivePotential neg = s.potential("neg:birkhoff:prop43");
  std::size_t mismatches = 0;
  for (const Point& x : seeded_points(s.system.space(), 100, 42)) {
    const GrowthRateReport a = growth_report(phi, s.system, x, 100'000);
    const GrowthRateReport b = growth_report(neg, s.system, x, 100'000);
    if (a.smallest_rate != -b.largest_rate) ++mismatches;
  }
  const StateSpace& c = s.system.space();
  const double at_third = growth_report(phi, s.system, c.parse_point("1/3"), 100'000).largest_rate;
  const double at_two_thirds =
      growth_report(phi, s.system, c.parse_point("2/3"), 100'000).largest_rate;
  return {mismatches == 0 && at_third == 1.0 && at_two_thirds == 1.0,
          std::to_string(mismatches) + " of 100 points break smallest = -largest(neg); " +
              "largest rate on the period-2 orbit: " + num(at_third) + ", " + num(at_two_thirds)};
}

Outcome heteroclinic_phenomenology(ScanCache& cache) {
  const Report& limits = cache.single_worker("heteroclinic-limit-sets");
  const Report& milnor = cache.single_worker("heteroclinic-milnor");
  const double spread = fraction_where(column(limits, "spread"), [](double v) { return v >= 0.02; });
  const double hull =
      fraction_where(column(limits, "max_hull_distance"), [](double v) { return v <= 0.1; });
  const double visits =
      fraction_where(column(milnor, "milnor_fraction"), [](double v) { return v >= 0.95; });
  const double t = cache.seconds("heteroclinic-limit-sets") + cache.seconds("heteroclinic-milnor");
  const bool pass = spread >= 0.9 && hull >= 0.9 && visits >= 0.9 && t <= 1200.0 &&
                    summary_number(limits, "errors") == 0 && summary_number(milnor, "errors") == 0;
  return {pass, std::to_string(limits.table.rows.size()) + " cells; (a) spread >= 0.02: " +
                    num(spread) + "; (b) clusters within 0.1 of vertex hull: " + num(hull) +
                    "; (c) boundary visit fraction >= 0.95: " + num(visits) + "; " +
                    num(std::round(t * 10) / 10) + " s of 1200"};
}

Outcome heteroclinic_optimal_points(ScanCache& cache) {
  const Report& r = cache.single_worker("heteroclinic-optimal");
  const double optimal = summary_number(r, "fraction_optimal");
  const double deep =
      fraction_where(column(r, "largest_rate"), [](double v) { return v <= -0.5; });
  return {optimal >= 0.9 && deep >= 0.9 && summary_number(r, "errors") == 0,
          std::to_string(r.table.rows.size()) + " cells; fraction optimal " + num(optimal) +
              "; fraction with largest rate <= -0.5: " + num(deep)};
}

Outcome metric_and_measure_kernels(ScanCache& cache) {
  bool pass = true;
  std::ostringstream detail;
  double triangle = 0.0;
  for (const StateSpace& s : {StateSpace::circle(), StateSpace::simplex3()}) {
    const MetricAxiomsReport r =
        check_metric_axioms(WeakStarMetric::default_for(s), 1000, 42, 1e-12);
    pass = pass && r.pass;
    triangle = std::max(triangle, r.max_triangle_excess);
  }
  detail << "axioms on 1000 triples (circle, simplex): max triangle excess " << num(triangle);

  std::size_t mismatches = 0;
  double deviation = 0.0;
  for (const DynamicalSystem& f : {doubling_map(), system_from_name("may-leonard:0.8,1.9,0.1")}) {
    const EmpiricalRecursionReport r =
        check_empirical_recursion(f, WeakStarMetric::default_for(f.space()), 10, 1000, 42);
    pass = pass && r.pass;
    mismatches += r.representation_mismatches;
    deviation = std::max(deviation, r.max_moment_deviation);
  }
  detail << "; recursion n <= 1000: " << mismatches << " representation mismatches, moment drift "
         << num(deviation);

  const Report& leb = cache.single_worker("lebesgue-observability");
  const bool leb_observable = summary_number(leb, "errors") == 0 &&
                              summary_number(leb, "weak_fraction_0.05") > 0 &&
                              summary_number(leb, "weak_fraction_0.1") > 0 &&
                              summary_number(leb, "weak_fraction_0.2") > 0;
  const Report& dirac = cache.single_worker("dirac-observability");
  const double dirac_small = summary_number(dirac, "weak_fraction_0.01");
  pass = pass && leb_observable && dirac_small <= 0.01;
  detail << "; Lebesgue weak fractions " << num(summary_number(leb, "weak_fraction_0.2")) << "/"
         << num(summary_number(leb, "weak_fraction_0.1")) << "/"
         << num(summary_number(leb, "weak_fraction_0.05")) << " at eps 0.2/0.1/0.05"
         << "; delta_0 weak fraction " << num(summary_number(dirac, "weak_fraction_0.2"))
         << " at 0.2, " << num(dirac_small) << " at 0.01";
  return {pass, detail.str()};
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(ScanCache& cache) {
  const fs::path root =
      fs::temp_directory_path() / ("optstate-acceptance-" + std::to_string(::getpid()));
  std::size_t identical = 0;
  std::string differing;
  for (const auto& d : scans()) {
    const auto one = cli::emit_report(cache.single_worker(d.name), "csv", root / d.name / "w1");
    const auto four = cli::emit_report(d.run(4), "csv", root / d.name / "w4");
    bool same = one.size() == four.size() && !one.empty();
    for (std::size_t i = 0; same && i < one.size(); ++i) {
      same = one[i].filename() == four[i].filename() && read_bytes(one[i]) == read_bytes(four[i]);
    }
    if (same) {
      ++identical;
    } else {
      differing += " " + d.name;
    }
  }
  fs::remove_all(root);
  return {identical == scans().size(),
          std::to_string(identical) + " of " + std::to_string(scans().size()) +
              " scans byte-identical (CSV + summary) with workers 1 and 4" +
              (differing.empty() ? "" : "; differing:" + differing)};
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*check)(ScanCache&);
};

const Criterion kCriteria[] = {
    {1, "subadditivity suite", subadditivity_suite},
    {2, "lemma-sub bound suite", lemma_sub_suite},
    {3, "exact cocycle growth rates", exact_growth_rates},
    {4, "observable optimal set, doubling + bump potential", bump_observable_optimal_set},
    {5, "strong basin at the fixed point", strong_basin_fixed_point},
    {6, "negation duality and +1 on the period-2 orbit", negation_duality},
    {7, "heteroclinic nonconvergence, hull and boundary visits", heteroclinic_phenomenology},
    {8, "heteroclinic optimal points", heteroclinic_optimal_points},
    {9, "metric, empirical recursion and observability", metric_and_measure_kernels},
    {10, "determinism across worker counts", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    try {
      selected.insert(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion numbers...]\n";
      return 1;
    }
  }
  ScanCache cache;
  int failures = 0;
  int ran = 0;
  for (const Criterion& c : kCriteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome v;
    try {
      v = c.check(cache);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << "criterion " << c.id << " [" << c.title << "]: " << (v.pass ? "PASS" : "FAIL")
              << " -- " << v.detail << " (" << num(std::round(seconds_since(start) * 10) / 10)
              << " s)" << std::endl;
  }
  std::cout << (ran - failures) << " of " << ran << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
