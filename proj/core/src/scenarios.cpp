#include "optstate/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "optstate/errors.hpp"

namespace optstate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parse_param(const std::map<std::string, std::string>& params, const std::string& key) {
  const std::string& text = params.at(key);
  if (auto r = parse_rational(text); r && text.find('/') != std::string::npos) {
    return r->to_double();
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParameterError("parameter '" + key + "' is not a number: '" + text + "'");
  }
  return value;
}

std::size_t parse_count(const std::map<std::string, std::string>& params, const std::string& key) {
  const std::string& text = params.at(key);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw ParameterError("parameter '" + key + "' must be a positive integer, got '" + text + "'");
  }
  return value;
}

std::vector<Point> orbit_points(const DynamicalSystem& system, const PeriodicOrbitSpec& spec) {
  if (spec.period == 0) throw ParameterError("orbit period must be >= 1");
  const Orbit o = orbit(system, spec.x, spec.period + 1);
  if (system.space().distance(o.points.back(), spec.x) > 1e-9) {
    throw NonPeriodicError("orbit of " + spec.x.to_string() + " does not close after " +
                           std::to_string(spec.period) + " steps");
  }
  return {o.points.begin(), o.points.end() - 1};
}

void add_measure(std::vector<NamedMeasure>& out, const DynamicalSystem& system,
                 const std::string& name, const std::string& spec) {
  out.push_back(NamedMeasure{name, spec, measure_from_spec(spec, system)});
}

void check_potentials(const Scenario& s, std::size_t n_max) {
  for (const NamedPotential& p : s.potentials) {
    const SubadditivityReport r = check_subadditivity(p.potential, s.system, 100, n_max, 0);
    if (!r.pass) {
      throw Error("scenario " + s.name + ": potential " + p.spec +
                  " fails the subadditivity check (violation " +
                  std::to_string(r.max_violation) + ")");
    }
  }
}

std::vector<NamedPotential> named(const PotentialRegistry& registry,
                                  const std::vector<std::string>& specs) {
  std::vector<NamedPotential> out;
  for (const std::string& spec : specs) out.push_back({spec, parse_potential(spec, registry)});
  return out;
}

}  // namespace

double bump_weight(double d, double radius) {
  if (d >= radius) return 0.0;
  const double t = 1.0 - d / radius;
  return t * t * (3.0 - 2.0 * t);
}

BumpPotential prop43_potential(const DynamicalSystem& system, const PeriodicOrbitSpec& o1,
                               const PeriodicOrbitSpec& o2, double radius, double baseline) {
  if (!(radius > 0.0)) throw ParameterError("bump radius must be > 0");
  if (!std::isfinite(baseline)) throw ParameterError("baseline must be finite");
  const StateSpace& space = system.space();
  std::vector<Point> low = orbit_points(system, o1);
  std::vector<Point> high = orbit_points(system, o2);
  for (const Point& p : low) {
    for (const Point& q : high) {
      if (space.distance(p, q) < 2.0 * radius) {
        throw OverlapError("bump neighborhoods of " + p.to_string() + " and " + q.to_string() +
                           " intersect at radius " + std::to_string(radius));
      }
    }
  }
  ScalarFunction g = [space, low, high, radius, baseline](const Point& x) {
    double w_low = 0.0;
    for (const Point& p : low) w_low = std::max(w_low, bump_weight(space.distance(x, p), radius));
    double w_high = 0.0;
    for (const Point& q : high) {
      w_high = std::max(w_high, bump_weight(space.distance(x, q), radius));
    }
    // Supports are disjoint, so at most one weight is nonzero; this form
    // returns the peak value exactly where the weight is 1.
    if (w_low > 0.0) return -1.0 * w_low + baseline * (1.0 - w_low);
    if (w_high > 0.0) return 1.0 * w_high + baseline * (1.0 - w_high);
    return baseline;
  };
  SubadditivePotential phi = birkhoff_potential(g, "birkhoff:prop43");
  SubadditivePotential neg = negate(phi);
  return BumpPotential{std::move(g), std::move(phi), std::move(neg)};
}

HeteroclinicSystem may_leonard_system(double alpha, double beta, double tau,
                                      std::size_t substeps, std::size_t edge_points) {
  if (!(alpha + beta > 2.0) || !(alpha < 1.0) || !(beta > 1.0)) {
    throw ParameterError("may-leonard requires alpha + beta > 2 and alpha < 1 < beta");
  }
  if (edge_points < 2) throw ParameterError("boundary sample needs >= 2 points per edge");
  const StateSpace simplex = StateSpace::simplex3();
  std::ostringstream label;
  label << "may-leonard:" << alpha << "," << beta << "," << tau;
  DynamicalSystem system =
      flow_time_tau_map(simplex, may_leonard_field(alpha, beta), tau, substeps, label.str());

  const std::array<Point, 3> vertices{Point::barycentric(1, 0, 0), Point::barycentric(0, 1, 0),
                                      Point::barycentric(0, 0, 1)};
  std::vector<Point> edges;
  edges.reserve(3 * edge_points);
  for (std::size_t e = 0; e < 3; ++e) {
    const std::size_t a = e;
    const std::size_t b = (e + 1) % 3;
    for (std::size_t k = 0; k < edge_points; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(edge_points);
      std::array<double, 3> c{0.0, 0.0, 0.0};
      c[a] = 1.0 - t;
      c[b] = t;
      edges.push_back(Point::barycentric(c[0], c[1], c[2]));
    }
  }
  return HeteroclinicSystem{std::move(system), vertices,
                            Point::barycentric(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0),
                            AttractorSpec(simplex, std::move(edges), "boundary")};
}

double vertex_well(const Point& x) {
  double d = HUGE_VAL;
  for (std::size_t i = 0; i < 3; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      const double diff = x[j] - (i == j ? 1.0 : 0.0);
      s += diff * diff;
    }
    d = std::min(d, std::sqrt(s));
  }
  if (d <= 0.1) return -1.0;
  if (d >= 0.2) return 0.0;
  return -bump_weight(d - 0.1, 0.1);
}

PotentialRegistry base_registry() {
  PotentialRegistry r;
  r.functions["one"] = [](const Point&) { return 1.0; };
  r.functions["cos"] = [](const Point& x) { return std::cos(kTwoPi * x[0]); };
  r.matrix_families["diag-half"] = {[](const Point&) {
                                      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
                                      a(0, 0) = 0.5;
                                      a(1, 1) = 0.25;
                                      return a;
                                    },
                                    2};
  r.matrix_families["scaled-rotation"] = {[](const Point& x) {
                                            const double t = kTwoPi * x[0];
                                            const double s = std::exp(-1.0);
                                            Eigen::MatrixXd a(2, 2);
                                            a << s * std::cos(t), -s * std::sin(t),
                                                s * std::sin(t), s * std::cos(t);
                                            return a;
                                          },
                                          2};
  r.matrix_families["diag-cos"] = {[](const Point& x) {
                                     Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
                                     a(0, 0) = std::exp(-1.0 + 0.5 * std::cos(kTwoPi * x[0]));
                                     a(1, 1) = std::exp(-2.0);
                                     return a;
                                   },
                                   2};
  return r;
}

const Measure& Scenario::measure(const std::string& key) const {
  for (const NamedMeasure& m : measures) {
    if (m.name == key || m.spec == key) return m.measure;
  }
  std::string names;
  for (const NamedMeasure& m : measures) names += " " + m.name;
  throw UnknownNameError("scenario " + name + " has no measure '" + key + "'; available:" + names);
}

const AttractorSpec& Scenario::attractor(const std::string& label) const {
  for (const AttractorSpec& k : attractors) {
    if (k.label == label) return k;
  }
  std::string names;
  for (const AttractorSpec& k : attractors) names += " " + k.label;
  throw UnknownNameError("scenario " + name + " has no attractor '" + label +
                         "'; available:" + (names.empty() ? " (none)" : names));
}

SubadditivePotential Scenario::potential(const std::string& spec) const {
  return parse_potential(spec, registry);
}

std::vector<std::string> scenario_names() {
  return {"doubling-basic", "doubling-prop43", "rotation-unique-ergodic", "cocycle-stability",
          "heteroclinic-bowen"};
}

std::map<std::string, std::string> scenario_defaults(const std::string& name) {
  if (name == "doubling-basic" || name == "cocycle-stability") return {};
  if (name == "doubling-prop43") {
    return {{"o1", "0"},         {"o1_period", "1"}, {"o2", "1/3"},
            {"o2_period", "2"},  {"radius", "0.05"}, {"baseline", "-0.2"}};
  }
  if (name == "rotation-unique-ergodic") return {{"alpha", "golden"}};
  if (name == "heteroclinic-bowen") {
    return {{"alpha", "0.8"}, {"beta", "1.9"}, {"tau", "0.1"}, {"substeps", "10"}};
  }
  std::string names;
  for (const std::string& n : scenario_names()) names += " " + n;
  throw UnknownNameError("unknown scenario '" + name + "'; available:" + names);
}

Scenario build_scenario(const std::string& name,
                        const std::map<std::string, std::string>& overrides) {
  std::map<std::string, std::string> params = scenario_defaults(name);
  for (const auto& [key, value] : overrides) {
    if (!params.contains(key)) {
      std::string keys;
      for (const auto& [k, unused] : params) keys += " " + k;
      throw UnknownNameError("scenario " + name + " has no parameter '" + key +
                             "'; available:" + (keys.empty() ? " (none)" : keys));
    }
    params[key] = value;
  }

  PotentialRegistry registry = base_registry();

  if (name == "doubling-basic") {
    DynamicalSystem system = doubling_map();
    std::vector<NamedMeasure> measures;
    add_measure(measures, system, "lebesgue", "lebesgue");
    add_measure(measures, system, "delta0", "dirac:0");
    add_measure(measures, system, "orbit-1/3", "orbit:1/3,2");
    Scenario s{name, params, system, registry,
               named(registry, {"birkhoff:cos", "cocycle:diag-cos", "trunc:cocycle:diag-cos"}),
               std::move(measures), {}, {}, 0.0,
               "Doubling map x -> 2x mod 1 with a cosine observable and a diagonal cocycle "
               "whose top exponent is -1 for Lebesgue-typical points."};
    check_potentials(s, 50);
    return s;
  }

  if (name == "doubling-prop43") {
    DynamicalSystem system = doubling_map();
    const StateSpace& space = system.space();
    const PeriodicOrbitSpec o1{space.parse_point(params.at("o1")), parse_count(params, "o1_period")};
    const PeriodicOrbitSpec o2{space.parse_point(params.at("o2")), parse_count(params, "o2_period")};
    const BumpPotential bump = prop43_potential(system, o1, o2, parse_param(params, "radius"),
                                                parse_param(params, "baseline"));
    registry.functions["prop43"] = bump.g;
    std::vector<NamedMeasure> measures;
    add_measure(measures, system, "lebesgue", "lebesgue");
    add_measure(measures, system, "o1",
                "orbit:" + params.at("o1") + "," + params.at("o1_period"));
    add_measure(measures, system, "o2",
                "orbit:" + params.at("o2") + "," + params.at("o2_period"));
    Scenario s{name, params, system, registry,
               named(registry, {"birkhoff:prop43", "neg:birkhoff:prop43", "trunc:birkhoff:prop43",
                                "trunc:neg:birkhoff:prop43"}),
               std::move(measures), {}, {}, 0.0,
               "Doubling map with an additive potential equal to -1 on the periodic orbit o1, "
               "+1 on o2 and the baseline elsewhere; o1 points have growth rate -1, o2 points "
               "+1, typical points the Lebesgue mean of g."};
    check_potentials(s, 50);
    return s;
  }

  if (name == "rotation-unique-ergodic") {
    const std::string& alpha = params.at("alpha");
    DynamicalSystem system = system_from_name("rotation:" + alpha);
    std::vector<NamedMeasure> measures;
    add_measure(measures, system, "lebesgue", "lebesgue");
    Scenario s{name, params, system, registry,
               named(registry, {"birkhoff:cos", "cocycle:scaled-rotation"}),
               std::move(measures), {}, {}, 0.0,
               "Circle rotation by alpha (default the golden mean); uniquely ergodic, every "
               "empirical measure converges to Lebesgue."};
    check_potentials(s, 50);
    return s;
  }

  if (name == "cocycle-stability") {
    DynamicalSystem system = doubling_map();
    std::vector<NamedMeasure> measures;
    add_measure(measures, system, "lebesgue", "lebesgue");
    Scenario s{name, params, system, registry,
               named(registry, {"cocycle:diag-half", "cocycle:scaled-rotation", "cocycle:diag-cos",
                                "trunc:cocycle:diag-half", "trunc:cocycle:scaled-rotation",
                                "trunc:cocycle:diag-cos"}),
               std::move(measures), {}, {}, 0.0,
               "Matrix cocycles over the doubling map: constant diag(0.5, 0.25) (rate ln 0.5), "
               "scaled rotations (rate -1) and diag(exp(-1 + 0.5 cos 2 pi x), exp(-2))."};
    check_potentials(s, 50);
    return s;
  }

  // heteroclinic-bowen
  HeteroclinicSystem h =
      may_leonard_system(parse_param(params, "alpha"), parse_param(params, "beta"),
                         parse_param(params, "tau"), parse_count(params, "substeps"));
  registry.functions["vertices"] = vertex_well;
  std::vector<NamedMeasure> measures;
  add_measure(measures, h.system, "e1", "dirac:1,0,0");
  add_measure(measures, h.system, "e2", "dirac:0,1,0");
  add_measure(measures, h.system, "e3", "dirac:0,0,1");
  add_measure(measures, h.system, "vertex-mixture",
              "mix:1/3*dirac:1,0,0+1/3*dirac:0,1,0+1/3*dirac:0,0,1");
  add_measure(measures, h.system, "lebesgue", "lebesgue");
  Scenario s{name, params, h.system, registry,
             named(registry, {"birkhoff:vertices", "trunc:birkhoff:vertices"}),
             std::move(measures), {h.boundary}, {h.barycenter}, 0.05,
             "May-Leonard flow on the simplex sampled at time tau. Interior orbits spiral out "
             "of the repelling barycenter toward the boundary cycle e1 -> e3 -> e2 with "
             "growing dwell times, so their time averages keep oscillating between vertex "
             "masses. Scans exclude a 0.05-ball around the barycenter."};
  check_potentials(s, 20);
  return s;
}

Scenario bare_scenario(const std::string& system_name) {
  DynamicalSystem system = system_from_name(system_name);
  PotentialRegistry registry = base_registry();
  std::vector<NamedMeasure> measures;
  add_measure(measures, system, "lebesgue", "lebesgue");
  return Scenario{"system:" + system.label(), {}, system, registry, {}, std::move(measures),
                  {}, {}, 0.0, "Bare system " + system.label() + "."};
}

std::string describe(const Scenario& s) {
  std::ostringstream out;
  out << "scenario = " << s.name << "\n";
  out << "system = " << s.system.label() << "\n";
  out << "space = " << s.system.space().name() << "\n";
  for (const auto& [key, value] : s.params) out << "param." << key << " = " << value << "\n";
  for (const NamedPotential& p : s.potentials) {
    out << "potential = " << p.spec << " (" << to_string(p.potential.kind()) << ")\n";
  }
  for (const NamedMeasure& m : s.measures) out << "measure." << m.name << " = " << m.spec << "\n";
  for (const AttractorSpec& k : s.attractors) {
    out << "attractor." << k.label << " = " << k.points.size() << " sample points\n";
  }
  out << "functions =";
  for (const auto& [key, unused] : s.registry.functions) out << " " << key;
  out << " const:<c>\n";
  out << "matrix_families =";
  for (const auto& [key, unused] : s.registry.matrix_families) out << " " << key;
  out << "\n";
  if (!s.scan_exclusions.empty()) {
    out << "scan_exclusion_radius = " << s.scan_exclusion_radius << "\n";
  }
  out << "about = " << s.documentation << "\n";
  return out.str();
}

}  // namespace optstate
