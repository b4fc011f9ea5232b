#include "optstate/basins.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "optstate/errors.hpp"

namespace optstate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::size_t> resolve_schedule(std::size_t horizon,
                                          const std::vector<std::size_t>& schedule) {
  if (schedule.empty()) return checkpoint_schedule(horizon);
  if (schedule.back() != horizon) {
    throw ParameterError("schedule must end at the horizon " + std::to_string(horizon));
  }
  return schedule;
}

std::size_t tail_index(const std::vector<std::size_t>& schedule) {
  const std::size_t half = (schedule.back() + 1) / 2;
  return static_cast<std::size_t>(std::lower_bound(schedule.begin(), schedule.end(), half) -
                                  schedule.begin());
}

Point shifted_by_half_cell(const StateSpace& space, const Point& p, double width) {
  const double h = 0.5 * width;
  switch (space.kind()) {
    case SpaceKind::circle: {
      if (p.exact_value()) {
        // width is 1/R here, so half a cell is 1/(2R).
        const auto den = static_cast<std::uint64_t>(std::llround(2.0 / width));
        if (const auto moved = p.exact_value()->plus(Rational(1, den))) return Point::exact(*moved);
      }
      const double x = p[0] + h;
      return Point::scalar(x - std::floor(x));
    }
    case SpaceKind::interval: {
      const double hi = space.parameters()[1];
      return Point::scalar(p[0] + h <= hi ? p[0] + h : p[0] - h);
    }
    case SpaceKind::torus2: {
      const double x = p[0] + h;
      return Point::planar(x - std::floor(x), p[1]);
    }
    case SpaceKind::planar_ball: {
      const Point moved = Point::planar(p[0] + h, p[1]);
      return space.contains(moved) ? moved : Point::planar(p[0] - h, p[1]);
    }
    case SpaceKind::simplex3: {
      // Move toward a vertex by half a cell in ambient distance.
      const Point target = p[0] < 0.5 ? Point::barycentric(1, 0, 0) : Point::barycentric(0, 1, 0);
      const double t = std::min(1.0, h / space.distance(p, target));
      return Point::barycentric(p[0] + t * (target[0] - p[0]), p[1] + t * (target[1] - p[1]),
                                p[2] + t * (target[2] - p[2]));
    }
  }
  return p;
}

}  // namespace

std::vector<std::size_t> ClassifyParams::resolved_schedule() const {
  return resolve_schedule(horizon, schedule);
}

double PointClassification::min_distance() const {
  return distances.empty() ? kInf : *std::min_element(distances.begin(), distances.end());
}

double PointClassification::max_distance() const {
  return distances.empty() ? kInf : *std::max_element(distances.begin(), distances.end());
}

PointClassification classify_estimate(const LimitSetEstimate& estimate,
                                      const WeakStarMetric& metric, const Moments& target,
                                      double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  PointClassification c;
  c.spread = estimate.spread;
  c.cluster_count = estimate.clusters.size();
  for (std::size_t i = 0; i < estimate.clusters.size(); ++i) {
    c.distances.push_back(metric.distance(estimate.representative(i), target));
  }
  c.in_weak = std::any_of(c.distances.begin(), c.distances.end(),
                          [&](double d) { return d <= epsilon; });
  c.in_strong = !c.distances.empty() &&
                std::all_of(c.distances.begin(), c.distances.end(),
                            [&](double d) { return d <= epsilon; });

  const auto& m = estimate.checkpoint_moments;
  const std::size_t count = m.size();
  bool flips = false;
  if (count >= 2 && count - 2 >= estimate.tail_begin) {
    const bool last = metric.distance(m[count - 1], target) <= epsilon;
    const bool previous = metric.distance(m[count - 2], target) <= epsilon;
    flips = last != previous;
  }
  const bool unsettled = flips && estimate.spread > 0.5 * epsilon;
  c.indeterminate_weak = unsettled && !c.in_weak;
  c.indeterminate_strong = unsettled && !c.in_strong;
  return c;
}

PointClassification classify_point(const DynamicalSystem& system, const Point& x,
                                   const Measure& mu, double epsilon,
                                   const WeakStarMetric& metric, const ClassifyParams& params) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  if (!(mu.space() == system.space())) {
    throw SpaceMismatchError("target measure lives on " + mu.space().name() + ", system on " +
                             system.space().name());
  }
  const double tol = params.cluster_tol > 0.0 ? params.cluster_tol : 0.25 * epsilon;
  const LimitSetEstimate estimate =
      limit_set_estimate(system, x, params.resolved_schedule(), metric, tol);
  return classify_estimate(estimate, metric, moments(metric, mu), epsilon);
}

// ---------------------------------------------------------------------------

NeighborhoodIndex::NeighborhoodIndex(const StateSpace& space, std::vector<Point> points,
                                     double reach)
    : space_(space), points_(std::move(points)), reach_(reach) {
  if (!(reach > 0.0)) throw ParameterError("neighborhood reach must be > 0");
  if (points_.empty()) throw ParameterError("neighborhood index needs at least one point");
  dims_ = points_.front().dim();
  periodic_ = {space.kind() == SpaceKind::circle || space.kind() == SpaceKind::torus2,
               space.kind() == SpaceKind::torus2, false};

  std::array<double, 3> lo{kInf, kInf, kInf};
  std::array<double, 3> hi{-kInf, -kInf, -kInf};
  for (const Point& p : points_) {
    for (std::size_t d = 0; d < dims_; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  for (std::size_t d = 0; d < dims_; ++d) {
    const double extent = periodic_[d] ? 1.0 : hi[d] - lo[d];
    origin_[d] = periodic_[d] ? 0.0 : lo[d];
    // Cells are at least `reach` wide so a ball of radius reach only touches
    // neighboring cells.
    cells_[d] = std::max<long>(1, static_cast<long>(std::floor(extent / reach)));
    cells_[d] = std::min<long>(cells_[d], 4096);
    width_[d] = std::max(extent / static_cast<double>(cells_[d]), reach);
  }
  buckets_.resize(static_cast<std::size_t>(cells_[0] * cells_[1] * cells_[2]));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    std::array<long, 3> cell{0, 0, 0};
    for (std::size_t d = 0; d < dims_; ++d) {
      cell[d] = std::clamp(static_cast<long>(std::floor((points_[i][d] - origin_[d]) / width_[d])),
                           0L, cells_[d] - 1);
    }
    buckets_[bucket_of(cell)].push_back(i);
  }
}

std::size_t NeighborhoodIndex::bucket_of(const std::array<long, 3>& cell) const {
  return static_cast<std::size_t>((cell[0] * cells_[1] + cell[1]) * cells_[2] + cell[2]);
}

double NeighborhoodIndex::distance_within(const Point& x) const {
  std::array<long, 3> center{0, 0, 0};
  for (std::size_t d = 0; d < dims_; ++d) {
    center[d] = static_cast<long>(std::floor((x[d] - origin_[d]) / width_[d]));
    if (!periodic_[d]) {
      // Far outside the bounding box: nothing can be within reach.
      if (center[d] < -1 || center[d] > cells_[d]) return kInf;
    }
  }
  double best = kInf;
  std::array<long, 3> lo{0, 0, 0};
  std::array<long, 3> hi{0, 0, 0};
  for (std::size_t d = 0; d < dims_; ++d) {
    if (periodic_[d] && cells_[d] <= 3) {
      lo[d] = 0;
      hi[d] = cells_[d] - 1;
    } else {
      lo[d] = center[d] - 1;
      hi[d] = center[d] + 1;
    }
  }
  for (long a = lo[0]; a <= hi[0]; ++a) {
    for (long b = lo[1]; b <= hi[1]; ++b) {
      for (long c = lo[2]; c <= hi[2]; ++c) {
        std::array<long, 3> cell{a, b, c};
        bool valid = true;
        for (std::size_t d = 0; d < dims_; ++d) {
          if (periodic_[d]) {
            cell[d] = ((cell[d] % cells_[d]) + cells_[d]) % cells_[d];
          } else if (cell[d] < 0 || cell[d] >= cells_[d]) {
            valid = false;
          }
        }
        if (!valid) continue;
        for (const std::size_t i : buckets_[bucket_of(cell)]) {
          best = std::min(best, space_.distance(x, points_[i]));
        }
      }
    }
  }
  return best < reach_ ? best : kInf;
}

AttractorSpec::AttractorSpec(StateSpace space_in, std::vector<Point> points_in,
                             std::string label_in)
    : space(std::move(space_in)), points(std::move(points_in)), label(std::move(label_in)) {
  if (points.empty()) throw ParameterError("attractor sample is empty");
  for (const Point& p : points) space.require(p, "attractor sample");
}

double AttractorSpec::distance(const Point& x) const {
  double best = kInf;
  for (const Point& p : points) best = std::min(best, space.distance(x, p));
  return best;
}

std::vector<double> milnor_fractions(const DynamicalSystem& system, const Point& x,
                                     const AttractorSpec& k, const std::vector<double>& epsilons,
                                     std::size_t horizon,
                                     const std::vector<std::size_t>& schedule_in) {
  if (horizon < 200) throw ParameterError("milnor horizon must be >= 200");
  if (epsilons.empty()) throw ParameterError("milnor check needs at least one epsilon");
  for (const double e : epsilons) {
    if (!(e > 0.0)) throw ParameterError("epsilon must be > 0");
  }
  if (!(k.space == system.space())) throw SpaceMismatchError("attractor space differs");
  system.space().require(x, "milnor_fraction");

  const std::vector<std::size_t> schedule = resolve_schedule(horizon, schedule_in);
  const std::size_t tail = tail_index(schedule);
  const double reach = *std::max_element(epsilons.begin(), epsilons.end());
  const NeighborhoodIndex index(k.space, k.points, reach);

  std::vector<std::size_t> visits(epsilons.size(), 0);
  std::vector<double> fractions(epsilons.size(), 1.0);
  Point current = x;
  std::size_t next = 0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    const double d = index.distance_within(current);
    for (std::size_t e = 0; e < epsilons.size(); ++e) {
      if (d < epsilons[e]) ++visits[e];
    }
    if (n == schedule[next]) {
      if (next >= tail) {
        for (std::size_t e = 0; e < epsilons.size(); ++e) {
          fractions[e] = std::min(fractions[e],
                                  static_cast<double>(visits[e]) / static_cast<double>(n));
        }
      }
      ++next;
    }
    if (n < horizon) current = system.advance(current);
  }
  if (!current.is_finite()) throw NonfiniteStateError("orbit left the finite range");
  return fractions;
}

double milnor_fraction(const DynamicalSystem& system, const Point& x, const AttractorSpec& k,
                       double epsilon, std::size_t horizon,
                       const std::vector<std::size_t>& schedule) {
  return milnor_fractions(system, x, k, {epsilon}, horizon, schedule).front();
}

double convex_hull_distance(const WeakStarMetric& metric, const Moments& m,
                            const std::vector<Moments>& vertices, std::size_t steps) {
  if (vertices.empty()) throw ParameterError("convex hull needs at least one vertex");
  if (steps == 0) throw ParameterError("hull search needs steps >= 1");
  const std::size_t k = vertices.size();
  double best = kInf;
  std::vector<std::size_t> counts(k, 0);
  Moments mix(m.size());
  // Enumerate compositions of `steps` into k parts.
  const auto visit = [&](auto&& self, std::size_t slot, std::size_t left) -> void {
    if (slot + 1 == k) {
      counts[slot] = left;
      std::fill(mix.begin(), mix.end(), 0.0);
      for (std::size_t v = 0; v < k; ++v) {
        const double c = static_cast<double>(counts[v]) / static_cast<double>(steps);
        for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += c * vertices[v][i];
      }
      best = std::min(best, metric.distance(m, mix));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[slot] = c;
      self(self, slot + 1, left - c);
    }
  };
  visit(visit, 0, steps);
  return best;
}

// ---------------------------------------------------------------------------

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::in: return "in";
    case Verdict::out: return "out";
    case Verdict::indeterminate: return "indeterminate";
    case Verdict::error: return "error";
  }
  return "error";
}

std::string to_string(BasinMode mode) {
  switch (mode) {
    case BasinMode::strong: return "strong";
    case BasinMode::weak: return "weak";
    case BasinMode::milnor: return "milnor";
  }
  return "weak";
}

Grid make_scan_grid(const StateSpace& space, const GridSpec& spec) {
  Grid grid = space.grid(spec.resolution);
  if (spec.excluded.empty()) return grid;
  if (spec.exclusion_radius < 0.0) throw ParameterError("exclusion radius must be >= 0");
  for (const Point& p : spec.excluded) space.require(p, "excluded point");

  std::vector<Point> kept;
  kept.reserve(grid.centers.size());
  for (const Point& c : grid.centers) {
    double nearest = kInf;
    for (const Point& p : spec.excluded) nearest = std::min(nearest, space.distance(c, p));
    if (spec.exclusion_radius > 0.0) {
      if (nearest >= spec.exclusion_radius) kept.push_back(c);
    } else if (nearest == 0.0) {
      kept.push_back(shifted_by_half_cell(space, c, grid.cell_width));
    } else {
      kept.push_back(c);
    }
  }
  grid.centers = std::move(kept);
  return grid;
}

std::size_t default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = default_workers();
  workers = std::min(workers, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        failures[w] = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

double BasinScanResult::statistic(const std::string& name) const {
  for (const auto& [key, value] : statistics) {
    if (key == name) return value;
  }
  throw UnknownNameError("scan has no statistic '" + name + "'");
}

BasinScanResult scan_cells(const StateSpace& space, const Grid& grid, const CellKernel& kernel,
                           std::vector<std::string> value_names, std::size_t workers) {
  BasinScanResult result;
  result.space = space.name();
  result.resolution = grid.resolution;
  result.centers = grid.centers;
  result.value_names = std::move(value_names);
  result.cells.resize(grid.centers.size());
  const std::size_t width = result.value_names.size();

  parallel_for(grid.centers.size(), workers, [&](std::size_t i) {
    CellOutcome outcome;
    try {
      outcome = kernel(grid.centers[i]);
      if (outcome.values.size() != width) {
        throw ParameterError("cell kernel returned " + std::to_string(outcome.values.size()) +
                             " values, expected " + std::to_string(width));
      }
    } catch (const std::exception& e) {
      outcome = CellOutcome{Verdict::error, std::vector<double>(width, std::nan("")), e.what()};
    }
    result.cells[i] = std::move(outcome);
  });

  for (const CellOutcome& c : result.cells) {
    switch (c.verdict) {
      case Verdict::in: ++result.in; break;
      case Verdict::out: ++result.out; break;
      case Verdict::indeterminate: ++result.indeterminate; break;
      case Verdict::error: ++result.errors; break;
    }
  }
  const std::size_t denominator = result.evaluated();
  result.fraction =
      denominator == 0 ? 0.0 : static_cast<double>(result.in) / static_cast<double>(denominator);
  return result;
}

void BasinQuery::validate() const {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  if (mode == BasinMode::milnor) {
    if (!attractor) throw ParameterError("milnor mode needs an attractor set K");
    if (!(milnor_threshold > 0.0 && milnor_threshold <= 1.0)) {
      throw ParameterError("milnor threshold must lie in (0, 1]");
    }
  } else if (!mu) {
    throw ParameterError(to_string(mode) + " mode needs a target measure");
  }
}

BasinScanResult grid_scan(const DynamicalSystem& system, const BasinQuery& query,
                          const GridSpec& spec, std::size_t workers) {
  query.validate();
  const Grid grid = make_scan_grid(system.space(), spec);

  if (query.mode == BasinMode::milnor) {
    const AttractorSpec& k = *query.attractor;
    const std::vector<std::size_t> schedule = query.params.resolved_schedule();
    return scan_cells(
        system.space(), grid,
        [&](const Point& x) {
          const double f = milnor_fraction(system, x, k, query.epsilon, query.params.horizon,
                                           schedule);
          return CellOutcome{f >= query.milnor_threshold ? Verdict::in : Verdict::out, {f}, {}};
        },
        {"milnor_fraction"}, workers);
  }

  const WeakStarMetric metric =
      query.metric ? *query.metric : WeakStarMetric::default_for(system.space());
  if (!(query.mu->space() == system.space())) {
    throw SpaceMismatchError("target measure lives on another space");
  }
  const Moments target = moments(metric, *query.mu);
  const std::vector<std::size_t> schedule = query.params.resolved_schedule();
  const double tol =
      query.params.cluster_tol > 0.0 ? query.params.cluster_tol : 0.25 * query.epsilon;
  const bool strong = query.mode == BasinMode::strong;

  return scan_cells(
      system.space(), grid,
      [&](const Point& x) {
        const LimitSetEstimate estimate = limit_set_estimate(system, x, schedule, metric, tol);
        const PointClassification c = classify_estimate(estimate, metric, target, query.epsilon);
        const bool in = strong ? c.in_strong : c.in_weak;
        const bool unsure = strong ? c.indeterminate_strong : c.indeterminate_weak;
        return CellOutcome{in ? Verdict::in : (unsure ? Verdict::indeterminate : Verdict::out),
                           {c.min_distance(), c.max_distance(), c.spread,
                            static_cast<double>(c.cluster_count)},
                           {}};
      },
      {"min_distance", "max_distance", "spread", "clusters"}, workers);
}

ObservabilityReport observability_check(const DynamicalSystem& system, const Measure& mu,
                                        const std::vector<double>& epsilons,
                                        const GridSpec& spec, const ClassifyParams& params,
                                        std::size_t workers,
                                        std::optional<WeakStarMetric> metric_in) {
  if (epsilons.empty()) throw ParameterError("observability check needs at least one epsilon");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw ParameterError("epsilon must be > 0");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw ParameterError("epsilon list must be strictly descending");
    }
  }
  if (!(mu.space() == system.space())) {
    throw SpaceMismatchError("target measure lives on another space");
  }
  const WeakStarMetric metric =
      metric_in ? *metric_in : WeakStarMetric::default_for(system.space());
  const Moments target = moments(metric, mu);
  const std::vector<std::size_t> schedule = params.resolved_schedule();
  const double tol = params.cluster_tol > 0.0 ? params.cluster_tol : 0.25 * epsilons.back();
  const Grid grid = make_scan_grid(system.space(), spec);
  const std::size_t count = epsilons.size();

  // One limit-set estimate per cell; verdicts for every epsilon and both
  // modes are read off it. Values: weak verdicts then strong verdicts.
  const BasinScanResult combined = scan_cells(
      system.space(), grid,
      [&](const Point& x) {
        const LimitSetEstimate estimate = limit_set_estimate(system, x, schedule, metric, tol);
        CellOutcome out{Verdict::in, std::vector<double>(2 * count + 3), {}};
        for (std::size_t e = 0; e < count; ++e) {
          const PointClassification c = classify_estimate(estimate, metric, target, epsilons[e]);
          const auto code = [](bool in, bool unsure) {
            return static_cast<double>(in ? Verdict::in
                                          : (unsure ? Verdict::indeterminate : Verdict::out));
          };
          out.values[e] = code(c.in_weak, c.indeterminate_weak);
          out.values[count + e] = code(c.in_strong, c.indeterminate_strong);
          if (e == 0) {
            out.values[2 * count] = c.min_distance();
            out.values[2 * count + 1] = c.max_distance();
            out.values[2 * count + 2] = c.spread;
          }
        }
        return out;
      },
      std::vector<std::string>(2 * count + 3), workers);

  ObservabilityReport report;
  report.epsilons = epsilons;
  report.cluster_tol = tol;
  for (std::size_t mode = 0; mode < 2; ++mode) {
    for (std::size_t e = 0; e < count; ++e) {
      BasinScanResult r;
      r.space = combined.space;
      r.resolution = combined.resolution;
      r.centers = grid.centers;
      r.value_names = {"min_distance", "max_distance", "spread"};
      r.cells.reserve(combined.cells.size());
      for (const CellOutcome& cell : combined.cells) {
        CellOutcome c;
        if (cell.verdict == Verdict::error) {
          c = CellOutcome{Verdict::error, std::vector<double>(3, std::nan("")), cell.message};
        } else {
          c.verdict = static_cast<Verdict>(static_cast<int>(cell.values[mode * count + e]));
          c.values = {cell.values[2 * count], cell.values[2 * count + 1],
                      cell.values[2 * count + 2]};
        }
        switch (c.verdict) {
          case Verdict::in: ++r.in; break;
          case Verdict::out: ++r.out; break;
          case Verdict::indeterminate: ++r.indeterminate; break;
          case Verdict::error: ++r.errors; break;
        }
        r.cells.push_back(std::move(c));
      }
      r.fraction = r.evaluated() == 0
                       ? 0.0
                       : static_cast<double>(r.in) / static_cast<double>(r.evaluated());
      (mode == 0 ? report.weak : report.strong).push_back(std::move(r));
    }
  }
  report.observable_weak = std::all_of(report.weak.begin(), report.weak.end(),
                                       [](const BasinScanResult& r) { return r.fraction > 0.0; });
  report.observable_strong =
      std::all_of(report.strong.begin(), report.strong.end(),
                  [](const BasinScanResult& r) { return r.fraction > 0.0; });
  return report;
}

BasinScanResult optimal_point_scan(const DynamicalSystem& system, const SubadditivePotential& phi,
                                   const GridSpec& spec, std::size_t horizon,
                                   const std::vector<std::size_t>& schedule_in,
                                   std::size_t workers, double rate_threshold) {
  const std::vector<std::size_t> schedule = resolve_schedule(horizon, schedule_in);
  const Grid grid = make_scan_grid(system.space(), spec);
  BasinScanResult result = scan_cells(
      system.space(), grid,
      [&](const Point& x) {
        const GrowthRateReport r = growth_report(phi, system, x, horizon, schedule);
        return CellOutcome{r.largest_rate < rate_threshold ? Verdict::in : Verdict::out,
                           {r.largest_rate, r.smallest_rate},
                           {}};
      },
      {"largest_rate", "smallest_rate"}, workers);

  std::size_t optimal = 0;
  std::size_t smallest_negative = 0;
  double sum_largest = 0.0;
  double sum_smallest = 0.0;
  for (const CellOutcome& c : result.cells) {
    if (c.verdict == Verdict::error) continue;
    if (c.values[0] < 0.0) ++optimal;
    if (c.values[1] < 0.0) ++smallest_negative;
    sum_largest += c.values[0];
    sum_smallest += c.values[1];
  }
  const double n = static_cast<double>(result.evaluated());
  const double safe = n > 0 ? n : 1.0;
  result.statistics = {
      {"fraction_optimal", n > 0 ? static_cast<double>(optimal) / safe : 0.0},
      {"fraction_smallest_negative", n > 0 ? static_cast<double>(smallest_negative) / safe : 0.0},
      {"mean_largest_rate", n > 0 ? sum_largest / safe : std::nan("")},
      {"mean_smallest_rate", n > 0 ? sum_smallest / safe : std::nan("")},
  };
  return result;
}

}  // namespace optstate
