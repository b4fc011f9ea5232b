#include "optstate/measures.hpp"

#include <algorithm>
#include <cmath>

#include "optstate/errors.hpp"

namespace optstate {

namespace {

constexpr double kPeriodTolerance = 1e-9;

// Neumaier-compensated sum; mass checks on 10^5 equal weights need it.
double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

bool lex_less(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool coincide(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::fabs(a[i] - b[i]) > Measure::kMergeTolerance) return false;
  }
  return true;
}

std::vector<WeightedPoint> merge_masses(std::vector<WeightedPoint> masses) {
  std::stable_sort(masses.begin(), masses.end(),
                   [](const WeightedPoint& a, const WeightedPoint& b) {
                     return lex_less(a.point, b.point);
                   });
  std::vector<WeightedPoint> merged;
  merged.reserve(masses.size());
  for (auto& m : masses) {
    if (!merged.empty() && coincide(merged.back().point, m.point)) {
      merged.back().weight += m.weight;
    } else {
      merged.push_back(std::move(m));
    }
  }
  return merged;
}

void require_probability(std::span<const double> weights, const char* what) {
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw ParameterError(std::string(what) + ": weights must be finite and >= 0");
    }
  }
  const double total = compensated_sum(weights);
  if (std::fabs(total - 1.0) > Measure::kMassTolerance) {
    throw ParameterError(std::string(what) + ": weights sum to " + std::to_string(total) +
                         ", not 1");
  }
}

}  // namespace

Measure Measure::dirac(const StateSpace& space, const Point& x) {
  space.require(x, "dirac");
  Measure m(Kind::point_masses, space);
  m.masses_.push_back({x, 1.0});
  return m;
}

Measure Measure::point_masses(const StateSpace& space, std::vector<WeightedPoint> masses) {
  if (masses.empty()) throw ParameterError("point-mass measure needs at least one atom");
  std::vector<double> weights;
  weights.reserve(masses.size());
  for (const auto& m : masses) {
    space.require(m.point, "point_masses");
    weights.push_back(m.weight);
  }
  require_probability(weights, "point_masses");
  Measure out(Kind::point_masses, space);
  out.masses_ = merge_masses(std::move(masses));
  return out;
}

Measure Measure::lebesgue(const StateSpace& space) {
  Measure m(Kind::lebesgue, space);
  m.masses_ = space.lebesgue_rule();
  return m;
}

Measure Measure::mixture(const std::vector<std::pair<Measure, double>>& terms) {
  if (terms.empty()) throw ParameterError("mixture needs at least one term");
  std::vector<double> coefficients;
  for (const auto& [measure, c] : terms) {
    if (!(measure.space() == terms.front().first.space())) {
      throw SpaceMismatchError("mixture terms live on different spaces");
    }
    coefficients.push_back(c);
  }
  require_probability(coefficients, "mixture");
  Measure out(Kind::mixture, terms.front().first.space());
  for (const auto& [measure, c] : terms) {
    out.terms_.push_back({std::make_shared<const Measure>(measure), c});
  }
  return out;
}

Measure Measure::periodic_orbit(const DynamicalSystem& system, const Point& x,
                                std::size_t period) {
  if (period == 0) throw ParameterError("orbit period must be >= 1");
  const Orbit o = orbit(system, x, period + 1);
  const double gap = system.space().distance(o.points.back(), x);
  if (gap > kPeriodTolerance) {
    throw NonPeriodicError("orbit of (" + x.to_string() + ") does not close after " +
                           std::to_string(period) + " steps (gap " + std::to_string(gap) + ")");
  }
  std::vector<WeightedPoint> masses;
  const double w = 1.0 / static_cast<double>(period);
  for (std::size_t i = 0; i < period; ++i) masses.push_back({o.points[i], w});
  return point_masses(system.space(), std::move(masses));
}

std::vector<WeightedPoint> Measure::flattened() const {
  if (kind_ != Kind::mixture) return masses_;
  std::vector<WeightedPoint> all;
  for (const auto& term : terms_) {
    for (auto m : term.measure->flattened()) {
      m.weight *= term.coefficient;
      all.push_back(std::move(m));
    }
  }
  return merge_masses(std::move(all));
}

double integrate(const Measure& mu, const ScalarFunction& g) {
  double total = 0.0;
  if (mu.kind() == Measure::Kind::mixture) {
    for (const auto& term : mu.terms()) total += term.coefficient * integrate(*term.measure, g);
    return total;
  }
  for (const auto& m : mu.masses()) total += m.weight * g(m.point);
  return total;
}

Moments moments(const WeakStarMetric& metric, const Measure& mu) {
  if (!(mu.space() == metric.space())) {
    throw SpaceMismatchError("measure on " + mu.space().name() + " vs metric on " +
                             metric.space().name());
  }
  Moments out(metric.size(), 0.0);
  if (mu.kind() == Measure::Kind::mixture) {
    for (const auto& term : mu.terms()) {
      const Moments inner = moments(metric, *term.measure);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += term.coefficient * inner[k];
    }
    return out;
  }
  std::vector<double> values(metric.size());
  for (const auto& m : mu.masses()) {
    metric.evaluate(m.point, values);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += m.weight * values[k];
  }
  return out;
}

double weak_star_distance(const WeakStarMetric& metric, const Measure& mu, const Measure& nu) {
  return metric.distance(moments(metric, mu), moments(metric, nu));
}

EmpiricalMeasure::EmpiricalMeasure(const DynamicalSystem& system, const Point& x, std::size_t n)
    : orbit_(orbit(system, x, n).points) {}

EmpiricalMeasure EmpiricalMeasure::extended(const DynamicalSystem& system) const {
  std::vector<Point> next = orbit_;
  next.push_back(system.advance(orbit_.back()));
  return EmpiricalMeasure(std::move(next));
}

Measure EmpiricalMeasure::to_measure(const StateSpace& space) const {
  std::vector<WeightedPoint> masses;
  masses.reserve(orbit_.size());
  const double w = weight();
  for (const Point& p : orbit_) masses.push_back({p, w});
  return Measure::point_masses(space, std::move(masses));
}

EmpiricalMeasure empirical_measure(const DynamicalSystem& system, const Point& x, std::size_t n) {
  return EmpiricalMeasure(system, x, n);
}

}  // namespace optstate
