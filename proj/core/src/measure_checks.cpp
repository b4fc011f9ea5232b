#include <algorithm>
#include <cmath>
#include <random>

#include "optstate/errors.hpp"
#include "optstate/measures.hpp"

namespace optstate {

namespace {

Measure random_atoms(const StateSpace& space, std::mt19937_64& rng) {
  const std::size_t atoms = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<WeightedPoint> masses;
  double total = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    masses.push_back({space.sample(rng), unit(rng)});
    total += masses.back().weight;
  }
  for (auto& m : masses) m.weight /= total;
  return Measure::point_masses(space, std::move(masses));
}

Measure random_measure(const StateSpace& space, std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return Measure::lebesgue(space);
    case 1: {
      const double c = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      return Measure::mixture({{random_atoms(space, rng), c}, {Measure::lebesgue(space), 1.0 - c}});
    }
    default: return random_atoms(space, rng);
  }
}

}  // namespace

MetricAxiomsReport check_metric_axioms(const WeakStarMetric& metric, std::size_t samples,
                                       std::uint64_t seed, double tolerance) {
  if (samples == 0) throw ParameterError("metric check needs >= 1 sample");
  const StateSpace& space = metric.space();
  const Moments lebesgue = moments(metric, Measure::lebesgue(space));
  std::mt19937_64 rng(seed);
  MetricAxiomsReport report;
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const Moments a = moments(metric, random_measure(space, rng));
    const Moments b = moments(metric, random_measure(space, rng));
    const Moments c = moments(metric, random_measure(space, rng));
    const double ab = metric.distance(a, b);
    const double ba = metric.distance(b, a);
    const double bc = metric.distance(b, c);
    const double ac = metric.distance(a, c);
    report.max_asymmetry = std::max(report.max_asymmetry, std::fabs(ab - ba));
    report.max_self_distance = std::max(report.max_self_distance, metric.distance(a, a));
    report.max_triangle_excess = std::max(report.max_triangle_excess, ac - ab - bc);
    report.max_distance =
        std::max({report.max_distance, ab, bc, ac, metric.distance(a, lebesgue)});
  }
  report.pass = report.max_asymmetry == 0.0 && report.max_self_distance == 0.0 &&
                report.max_triangle_excess <= tolerance && report.max_distance <= 1.0;
  return report;
}

EmpiricalRecursionReport check_empirical_recursion(const DynamicalSystem& system,
                                                   const WeakStarMetric& metric,
                                                   std::size_t points, std::size_t n_max,
                                                   std::uint64_t seed, double tolerance) {
  if (points == 0 || n_max < 2) throw ParameterError("recursion check needs points and n_max >= 2");
  if (!(metric.space() == system.space())) throw SpaceMismatchError("metric space differs");
  std::mt19937_64 rng(seed);
  EmpiricalRecursionReport report;
  report.points = points;
  report.n_max = n_max;
  const std::size_t k = metric.size();
  std::vector<double> f(k);
  for (std::size_t p = 0; p < points; ++p) {
    const Point x = system.space().sample(rng);
    const Orbit reference = orbit(system, x, n_max);
    EmpiricalMeasure current = empirical_measure(system, x, 1);
    MomentAccumulator direct(metric);
    direct.add(x);
    Moments recursive = direct.current();
    for (std::size_t n = 1; n < n_max; ++n) {
      const EmpiricalMeasure next = current.extended(system);
      const std::span<const Point> pts = next.points();
      const bool same = next.horizon() == n + 1 &&
                        std::equal(pts.begin(), pts.end(), reference.points.begin());
      if (!same) ++report.representation_mismatches;

      const Point& newest = reference.points[n];
      metric.evaluate(newest, f);
      const double dn = static_cast<double>(n);
      for (std::size_t i = 0; i < k; ++i) recursive[i] = (dn * recursive[i] + f[i]) / (dn + 1.0);
      direct.add(newest);
      const Moments fresh = direct.current();
      for (std::size_t i = 0; i < k; ++i) {
        report.max_moment_deviation =
            std::max(report.max_moment_deviation, std::fabs(fresh[i] - recursive[i]));
      }
      ++report.checked;
      current = next;
    }
  }
  report.pass = report.representation_mismatches == 0 && report.max_moment_deviation <= tolerance;
  return report;
}

}  // namespace optstate
