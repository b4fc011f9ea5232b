#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "optstate/basins.hpp"
#include "optstate/dynamics.hpp"
#include "optstate/measures.hpp"
#include "optstate/potentials.hpp"

namespace optstate {

/// A periodic orbit given by one of its points and its period.
struct PeriodicOrbitSpec {
  Point x;
  std::size_t period = 1;
};

struct BumpPotential {
  ScalarFunction g;
  SubadditivePotential phi;
  SubadditivePotential neg_phi;
};

/// g = -1 on the points of O1, +1 on the points of O2, `baseline` away from
/// both, blended by a cubic smoothstep in d/radius. The additive potential
/// of g and its negation are returned together.
///
/// Throws NonPeriodicError when an orbit does not close within 1e-9 and
/// OverlapError when a radius-neighborhood of O1 meets one of O2.
BumpPotential prop43_potential(const DynamicalSystem& system, const PeriodicOrbitSpec& o1,
                               const PeriodicOrbitSpec& o2, double radius, double baseline);

/// Smoothstep weight 3t^2 - 2t^3 at t = 1 - d/radius, zero for d >= radius.
double bump_weight(double d, double radius);

struct HeteroclinicSystem {
  DynamicalSystem system;
  std::array<Point, 3> vertices;
  Point barycenter;
  AttractorSpec boundary;  // the three edges of the simplex
};

/// Time-tau map of the May-Leonard flow on the simplex. Requires
/// alpha + beta > 2 and alpha < 1 < beta. The boundary sample has
/// `edge_points` points per edge.
HeteroclinicSystem may_leonard_system(double alpha, double beta, double tau,
                                      std::size_t substeps = 10, std::size_t edge_points = 100);

/// -1 within 0.1 of a vertex, blended to 0 at distance 0.2.
double vertex_well(const Point& x);

struct NamedPotential {
  std::string spec;
  SubadditivePotential potential;
};

struct NamedMeasure {
  std::string name;
  std::string spec;
  Measure measure;
};

struct Scenario {
  std::string name;
  std::map<std::string, std::string> params;  // resolved parameter values
  DynamicalSystem system;
  PotentialRegistry registry;
  std::vector<NamedPotential> potentials;
  std::vector<NamedMeasure> measures;
  std::vector<AttractorSpec> attractors;
  /// Points that scans leave out by default (e.g. a repelling equilibrium).
  std::vector<Point> scan_exclusions;
  double scan_exclusion_radius = 0.0;
  std::string documentation;

  const Measure& measure(const std::string& name) const;
  const AttractorSpec& attractor(const std::string& label) const;
  /// Parses a potential spec against this scenario's registry.
  SubadditivePotential potential(const std::string& spec) const;
};

std::vector<std::string> scenario_names();

/// Default parameter values of a named scenario.
std::map<std::string, std::string> scenario_defaults(const std::string& name);

/// Builds a named scenario. Unknown names or parameter keys throw
/// UnknownNameError. Every listed potential is checked for subadditivity
/// (10^2 samples) before the scenario is returned.
Scenario build_scenario(const std::string& name,
                        const std::map<std::string, std::string>& params = {});

/// A scenario around a bare system name (see system_from_name) with the
/// global function and matrix registries and the Lebesgue measure.
Scenario bare_scenario(const std::string& system_name);

/// Functions and matrix families available to every scenario.
PotentialRegistry base_registry();

/// Multi-line listing of everything a scenario provides.
std::string describe(const Scenario& scenario);

}  // namespace optstate
