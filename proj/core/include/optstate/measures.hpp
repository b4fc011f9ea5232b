#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "optstate/dynamics.hpp"
#include "optstate/point.hpp"
#include "optstate/space.hpp"

namespace optstate {

using ScalarFunction = std::function<double(const Point&)>;

// ---------------------------------------------------------------------------
// Test families and the weak* metric

/// A fixed, ordered family of bounded Lipschitz functions f_1..f_K with
/// values in [0, 1]. Implementations evaluate the whole family at once so
/// that e.g. all trigonometric harmonics come from a single sincos.
class TestFamily {
 public:
  virtual ~TestFamily() = default;

  virtual std::size_t size() const noexcept = 0;
  virtual void evaluate(const Point& x, std::span<double> out) const = 0;
  virtual std::string description() const = 0;
  /// Upper bound on the Lipschitz constants of the members.
  virtual double lipschitz_bound() const noexcept = 0;
};

/// Circle: (1 + sin 2 pi j x)/2, (1 + cos 2 pi j x)/2 interleaved, j = 1..harmonics.
std::shared_ptr<const TestFamily> circle_trig_family(std::size_t harmonics = 8);
/// Interval [lo, hi]: (1 + cos(pi k t))/2 with t the normalized coordinate.
std::shared_ptr<const TestFamily> interval_cosine_family(double lo, double hi,
                                                         std::size_t count = 16);
/// Torus: (1 + a(x) b(y))/2 over trig factors of total degree 1..max_degree.
std::shared_ptr<const TestFamily> torus_tensor_family(std::size_t max_degree = 4);
/// Radial bumps max(0, 1 - L d(x, c_k)) around fixed centers.
std::shared_ptr<const TestFamily> bump_family(const StateSpace& space, std::vector<Point> centers,
                                              double lipschitz);

/// Integrals of every family member against one measure.
using Moments = std::vector<double>;

/// dist*(mu, nu) = sum_k 2^{-k} |int f_k dmu - int f_k dnu| over a test family
/// with values in [0, 1]; hence 0 <= dist* < 1.
class WeakStarMetric {
 public:
  WeakStarMetric(StateSpace space, std::shared_ptr<const TestFamily> family);

  /// The default family for the space: 16 trig functions on the circle, 16
  /// cosines on an interval, degree-4 tensor products on the torus, and 16
  /// radial bumps (Lipschitz 2) on simplex3 and the planar ball.
  static WeakStarMetric default_for(const StateSpace& space);

  const StateSpace& space() const noexcept { return space_; }
  const TestFamily& family() const noexcept { return *family_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }

  void evaluate(const Point& x, std::span<double> out) const { family_->evaluate(x, out); }

  double distance(std::span<const double> a, std::span<const double> b) const;

 private:
  StateSpace space_;
  std::shared_ptr<const TestFamily> family_;
  std::vector<double> weights_;
};

// ---------------------------------------------------------------------------
// Measures

class Measure;

struct MixtureTerm {
  std::shared_ptr<const Measure> measure;
  double coefficient = 0.0;
};

/// Borel probability measure represented as point masses, a Lebesgue
/// quadrature rule, or a convex mixture of other measures.
class Measure {
 public:
  enum class Kind { point_masses, lebesgue, mixture };

  static constexpr double kMergeTolerance = 1e-12;
  static constexpr double kMassTolerance = 1e-12;

  static Measure dirac(const StateSpace& space, const Point& x);
  /// Validates weights (>= 0, sum 1 within 1e-12) and merges masses whose
  /// coordinates agree within 1e-12.
  static Measure point_masses(const StateSpace& space, std::vector<WeightedPoint> masses);
  static Measure lebesgue(const StateSpace& space);
  static Measure mixture(const std::vector<std::pair<Measure, double>>& terms);
  /// Equal weights on x, f(x), ..., f^{p-1}(x); throws NonPeriodicError if
  /// d(f^p x, x) > 1e-9.
  static Measure periodic_orbit(const DynamicalSystem& system, const Point& x,
                                std::size_t period);

  Kind kind() const noexcept { return kind_; }
  const StateSpace& space() const noexcept { return space_; }
  /// Masses for point-mass and Lebesgue measures (empty for mixtures).
  std::span<const WeightedPoint> masses() const noexcept { return masses_; }
  std::span<const MixtureTerm> terms() const noexcept { return terms_; }

  /// All atoms with mixture coefficients multiplied through, merged.
  std::vector<WeightedPoint> flattened() const;

 private:
  Measure(Kind kind, StateSpace space) : kind_(kind), space_(std::move(space)) {}

  Kind kind_;
  StateSpace space_;
  std::vector<WeightedPoint> masses_;
  std::vector<MixtureTerm> terms_;
};

double integrate(const Measure& mu, const ScalarFunction& g);

/// Integrals of the metric's family against `mu`.
Moments moments(const WeakStarMetric& metric, const Measure& mu);

/// Throws SpaceMismatchError if either measure lives on another space.
double weak_star_distance(const WeakStarMetric& metric, const Measure& mu, const Measure& nu);

/// delta_{x,n} = (1/n) sum_{j<n} delta_{f^j x}, kept as the raw list of n
/// orbit points (each of weight 1/n).
class EmpiricalMeasure {
 public:
  EmpiricalMeasure(const DynamicalSystem& system, const Point& x, std::size_t n);

  const Point& base_point() const noexcept { return orbit_.front(); }
  std::size_t horizon() const noexcept { return orbit_.size(); }
  std::span<const Point> points() const noexcept { return orbit_; }
  double weight() const noexcept { return 1.0 / static_cast<double>(orbit_.size()); }

  /// delta_{x,n+1} = (n delta_{x,n} + delta_{f^n x}) / (n+1): appends f^n x.
  EmpiricalMeasure extended(const DynamicalSystem& system) const;

  /// Merged point-mass Measure.
  Measure to_measure(const StateSpace& space) const;

  friend bool operator==(const EmpiricalMeasure&, const EmpiricalMeasure&) = default;

 private:
  explicit EmpiricalMeasure(std::vector<Point> orbit) : orbit_(std::move(orbit)) {}

  std::vector<Point> orbit_;
};

EmpiricalMeasure empirical_measure(const DynamicalSystem& system, const Point& x, std::size_t n);

/// Parses the measure grammar
///   dirac:<point> | orbit:<point>,<period> | lebesgue | mix:<c>*<spec>+<c>*<spec>+...
/// Points use the space's coordinate syntax; coefficients may be p/q.
/// Throws ParseError (with position) or NonPeriodicError.
Measure measure_from_spec(const std::string& spec, const DynamicalSystem& system);

// ---------------------------------------------------------------------------
// Checkpoint schedules and limit-set estimation

/// n_j = ceil(n0 gamma^j) capped at `horizon`, deduplicated, always ending
/// with `horizon`. n0 shrinks to ceil(horizon/8) for short horizons.
std::vector<std::size_t> checkpoint_schedule(std::size_t horizon, std::size_t n0 = 100,
                                             double gamma = 1.4);

/// Running sums of the family along an orbit, snapshotted as moments at
/// checkpoint horizons.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(const WeakStarMetric& metric);

  void add(const Point& x);
  std::size_t count() const noexcept { return count_; }
  Moments current() const;

 private:
  const WeakStarMetric* metric_;
  std::vector<double> sums_;
  std::vector<double> scratch_;
  std::size_t count_ = 0;
};

struct Cluster {
  std::vector<std::size_t> members;  // indices into checkpoint arrays
  std::size_t representative = 0;    // latest member
};

struct LimitSetEstimate {
  Point x;
  std::vector<std::size_t> horizons;
  std::vector<Moments> checkpoint_moments;
  std::size_t tail_begin = 0;  // first checkpoint index with n >= ceil(n_J / 2)
  std::vector<Cluster> clusters;
  double spread = 0.0;         // max pairwise dist* among tail checkpoints
  double cluster_tol = 0.0;

  const Moments& representative(std::size_t cluster) const {
    return checkpoint_moments[clusters[cluster].representative];
  }
};

/// Runs the orbit of x up to the last horizon, records the empirical
/// moments at every checkpoint, and clusters the tail half with
/// single-linkage at `cluster_tol` in ascending horizon order.
LimitSetEstimate limit_set_estimate(const DynamicalSystem& system, const Point& x,
                                    const std::vector<std::size_t>& schedule,
                                    const WeakStarMetric& metric, double cluster_tol);

/// Clustering step on already-computed checkpoint moments.
void cluster_tail(LimitSetEstimate& estimate, const WeakStarMetric& metric, double cluster_tol);

}  // namespace optstate

namespace optstate {

// ---------------------------------------------------------------------------
// Verification suites

struct MetricAxiomsReport {
  std::size_t samples = 0;
  double max_asymmetry = 0.0;        // |d(mu,nu) - d(nu,mu)|, expected exactly 0
  double max_self_distance = 0.0;    // d(mu,mu), expected exactly 0
  double max_triangle_excess = 0.0;  // d(mu,rho) - d(mu,nu) - d(nu,rho)
  double max_distance = 0.0;         // must stay <= 1
  bool pass = false;
};

/// Samples random measure triples (point masses with 1-4 atoms, Lebesgue,
/// two-term mixtures) and checks symmetry, d(mu,mu) = 0, the triangle
/// inequality within `tolerance`, and d <= 1.
MetricAxiomsReport check_metric_axioms(const WeakStarMetric& metric, std::size_t samples,
                                       std::uint64_t seed, double tolerance = 1e-12);

struct EmpiricalRecursionReport {
  std::size_t points = 0;
  std::size_t n_max = 0;
  std::size_t checked = 0;
  std::size_t representation_mismatches = 0;  // extended(delta_{x,n}) != delta_{x,n+1}
  double max_moment_deviation = 0.0;          // recursion vs direct average of moments
  bool pass = false;
};

/// For every n < n_max at each sampled base point, checks that
/// delta_{x,n+1} = (n delta_{x,n} + delta_{f^n x})/(n+1) holds exactly on
/// the representation and within `tolerance` on the test-family moments.
EmpiricalRecursionReport check_empirical_recursion(const DynamicalSystem& system,
                                                   const WeakStarMetric& metric,
                                                   std::size_t points, std::size_t n_max,
                                                   std::uint64_t seed, double tolerance = 1e-12);

}  // namespace optstate
