#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optstate/dynamics.hpp"
#include "optstate/measures.hpp"
#include "optstate/potentials.hpp"

namespace optstate {

// ---------------------------------------------------------------------------
// Point classification

struct ClassifyParams {
  std::size_t horizon = 100'000;
  std::vector<std::size_t> schedule;  // empty: checkpoint_schedule(horizon)
  double cluster_tol = 0.0;           // <= 0: epsilon / 4

  std::vector<std::size_t> resolved_schedule() const;
};

struct PointClassification {
  bool in_weak = false;    // some cluster representative within epsilon of mu
  bool in_strong = false;  // every cluster representative within epsilon
  /// Finite-horizon honesty flag: spread > epsilon/2 and the verdict of the
  /// last two tail checkpoints differ. Only raised on points that are not
  /// classified in, so positive verdicts stay monotone in epsilon.
  bool indeterminate_weak = false;
  bool indeterminate_strong = false;
  std::vector<double> distances;  // dist* from each cluster representative to mu
  double spread = 0.0;
  std::size_t cluster_count = 0;

  double min_distance() const;
  double max_distance() const;
};

/// Verdicts for an already computed limit-set estimate against the moments
/// of a target measure.
PointClassification classify_estimate(const LimitSetEstimate& estimate,
                                      const WeakStarMetric& metric, const Moments& target,
                                      double epsilon);

PointClassification classify_point(const DynamicalSystem& system, const Point& x,
                                   const Measure& mu, double epsilon,
                                   const WeakStarMetric& metric, const ClassifyParams& params = {});

// ---------------------------------------------------------------------------
// Attractors and visit frequencies

/// Bucket grid answering "distance from x to a finite set, if below reach".
/// Periodic coordinates (circle, torus) wrap.
class NeighborhoodIndex {
 public:
  NeighborhoodIndex(const StateSpace& space, std::vector<Point> points, double reach);

  /// d(x, K) when it is below `reach`, +infinity otherwise.
  double distance_within(const Point& x) const;
  double reach() const noexcept { return reach_; }

 private:
  std::size_t bucket_of(const std::array<long, 3>& cell) const;

  StateSpace space_;
  std::vector<Point> points_;
  double reach_;
  std::size_t dims_ = 0;
  std::array<bool, 3> periodic_{};
  std::array<double, 3> origin_{};
  std::array<double, 3> width_{};
  std::array<long, 3> cells_{1, 1, 1};
  std::vector<std::vector<std::size_t>> buckets_;
};

/// A compact invariant set K given by a finite sample. Membership in the
/// epsilon-neighborhood is d(x, K) < epsilon.
struct AttractorSpec {
  StateSpace space;
  std::vector<Point> points;
  std::string label;

  AttractorSpec(StateSpace space, std::vector<Point> points, std::string label);

  double distance(const Point& x) const;
};

/// min over tail checkpoints of (1/n) #{j < n : d(f^j x, K) < epsilon}.
/// Requires N >= 200. The tail window is [ceil(N/2), N].
double milnor_fraction(const DynamicalSystem& system, const Point& x, const AttractorSpec& k,
                       double epsilon, std::size_t horizon,
                       const std::vector<std::size_t>& schedule = {});

/// Same statistic for several epsilons from one orbit pass.
std::vector<double> milnor_fractions(const DynamicalSystem& system, const Point& x,
                                     const AttractorSpec& k, const std::vector<double>& epsilons,
                                     std::size_t horizon,
                                     const std::vector<std::size_t>& schedule = {});

/// min over convex combinations c of dist*(m, sum c_i vertices_i), searching
/// the coefficient lattice with spacing 1/steps.
double convex_hull_distance(const WeakStarMetric& metric, const Moments& m,
                            const std::vector<Moments>& vertices, std::size_t steps = 20);

// ---------------------------------------------------------------------------
// Grid scans

enum class Verdict { in, out, indeterminate, error };

std::string to_string(Verdict verdict);

struct GridSpec {
  std::size_t resolution = 100;
  std::vector<Point> excluded;  // e.g. a repelling equilibrium
  /// Cells whose center lies within this distance of an excluded point are
  /// dropped. With radius 0, centers landing exactly on an excluded point
  /// are moved by half a cell instead.
  double exclusion_radius = 0.0;
};

Grid make_scan_grid(const StateSpace& space, const GridSpec& spec);

struct CellOutcome {
  Verdict verdict = Verdict::error;
  std::vector<double> values;
  std::string message;  // error text for error verdicts
};

using CellKernel = std::function<CellOutcome(const Point&)>;

/// Worker threads used when a scan asks for 0.
std::size_t default_workers();

/// Runs fn(0..n-1) on `workers` threads; each index is processed exactly
/// once and results must be written to per-index slots.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

struct BasinScanResult {
  std::string space;
  std::vector<std::size_t> resolution;
  std::vector<Point> centers;
  std::vector<std::string> value_names;
  std::vector<CellOutcome> cells;
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t indeterminate = 0;
  std::size_t errors = 0;
  /// in / (cells - errors); indeterminate cells count in the denominator.
  double fraction = 0.0;
  /// Scan-specific summary numbers in a fixed order.
  std::vector<std::pair<std::string, double>> statistics;

  std::size_t evaluated() const noexcept { return in + out + indeterminate; }
  double statistic(const std::string& name) const;
};

/// Applies `kernel` to every cell center. Per-cell exceptions become error
/// verdicts. The result does not depend on the worker count.
BasinScanResult scan_cells(const StateSpace& space, const Grid& grid, const CellKernel& kernel,
                           std::vector<std::string> value_names, std::size_t workers);

enum class BasinMode { strong, weak, milnor };

std::string to_string(BasinMode mode);

struct BasinQuery {
  BasinMode mode = BasinMode::weak;
  std::optional<Measure> mu;
  std::optional<AttractorSpec> attractor;
  double epsilon = 0.05;
  ClassifyParams params;
  std::optional<WeakStarMetric> metric;  // default metric of the space if unset
  double milnor_threshold = 0.95;        // milnor verdict: fraction >= threshold

  void validate() const;
};

/// Cell values: weak/strong modes give min_distance, max_distance, spread,
/// clusters; milnor mode gives milnor_fraction.
BasinScanResult grid_scan(const DynamicalSystem& system, const BasinQuery& query,
                          const GridSpec& grid, std::size_t workers = 0);

struct ObservabilityReport {
  std::vector<double> epsilons;
  double cluster_tol = 0.0;
  std::vector<BasinScanResult> weak;    // one per epsilon
  std::vector<BasinScanResult> strong;  // one per epsilon
  bool observable_weak = false;         // positive weak fraction at every epsilon
  bool observable_strong = false;
};

/// Weak and strong basin fractions for every epsilon in a descending list,
/// from one limit-set estimate per cell. The cluster tolerance is fixed
/// across the list (params value, else min(epsilon)/4) so fractions are
/// nonincreasing as epsilon decreases.
ObservabilityReport observability_check(const DynamicalSystem& system, const Measure& mu,
                                        const std::vector<double>& epsilons,
                                        const GridSpec& grid, const ClassifyParams& params = {},
                                        std::size_t workers = 0,
                                        std::optional<WeakStarMetric> metric = std::nullopt);

/// Per-cell growth_report summaries (largest_rate, smallest_rate). A cell is
/// in when largest_rate < rate_threshold (0 by default: an optimal point).
/// Statistics: fraction_optimal, fraction_smallest_negative,
/// mean_largest_rate, mean_smallest_rate.
BasinScanResult optimal_point_scan(const DynamicalSystem& system, const SubadditivePotential& phi,
                                   const GridSpec& grid, std::size_t horizon,
                                   const std::vector<std::size_t>& schedule = {},
                                   std::size_t workers = 0, double rate_threshold = 0.0);

}  // namespace optstate
