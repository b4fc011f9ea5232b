#include <algorithm>
#include <cmath>
#include <random>

#include "optstate/errors.hpp"
#include "optstate/potentials.hpp"

namespace optstate {

SubadditivityReport check_subadditivity(const SubadditivePotential& phi,
                                        const DynamicalSystem& system, std::size_t sample_count,
                                        std::size_t n_max, std::uint64_t seed, double tolerance) {
  if (sample_count == 0) throw ParameterError("subadditivity check needs >= 1 sample");
  if (n_max < 2) throw ParameterError("subadditivity check needs n_max >= 2");

  SubadditivityReport report;
  report.samples = sample_count;
  report.n_max = n_max;
  report.tolerance = tolerance;
  report.max_violation = -HUGE_VAL;
  report.min_violation = HUGE_VAL;

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < sample_count; ++s) {
    const Point x = system.space().sample(rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, n_max - 1)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, n_max - n)(rng);

    auto whole = phi.accumulator();
    auto tail = phi.accumulator();
    double head_value = 0.0;
    Point current = x;
    for (std::size_t i = 0; i < n + m; ++i) {
      whole->push(current);
      if (i >= n) tail->push(current);
      if (i + 1 == n) head_value = whole->value();
      if (i + 1 < n + m) current = system.advance(current);
    }
    const double violation = whole->value() - head_value - tail->value();
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_x = x;
      report.worst_n = n;
      report.worst_m = m;
    }
    report.min_violation = std::min(report.min_violation, violation);
  }
  report.pass = report.max_violation <= tolerance;
  return report;
}

LemmaSubReport lemma_sub_check(const SubadditivePotential& phi, const DynamicalSystem& system,
                               std::size_t block_length, const std::vector<Point>& points,
                               const std::vector<std::size_t>& n_list, double tolerance) {
  if (block_length == 0) throw ParameterError("block length must be >= 1");
  if (points.empty() || n_list.empty()) throw ParameterError("lemma-sub check needs samples");
  const std::size_t l = block_length;

  // C1 = max_{j <= 2l} sup |phi_j| estimated over a grid plus the samples.
  std::vector<Point> probe = system.space().low_discrepancy(1000);
  probe.insert(probe.end(), points.begin(), points.end());
  double c1 = 0.0;
  for (const Point& p : probe) {
    system.space().require(p, "lemma_sub_check");
    auto acc = phi.accumulator();
    Point current = p;
    for (std::size_t j = 1; j <= 2 * l; ++j) {
      acc->push(current);
      c1 = std::max(c1, std::fabs(acc->value()));
      if (j < 2 * l) current = system.advance(current);
    }
  }

  LemmaSubReport report;
  report.block_length = l;
  report.c1 = c1;
  report.c = 4.0 * c1;
  report.max_violation = -HUGE_VAL;

  std::vector<std::size_t> sorted = n_list;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == 0) throw ParameterError("lemma-sub horizons must be >= 1");
  const std::size_t n_top = sorted.back();

  for (const Point& x : points) {
    const Orbit o = orbit(system, x, n_top + l - 1);
    // block_sum[n] = sum_{i<n} phi_l(f^i x)
    std::vector<double> block_sum(n_top + 1, 0.0);
    for (std::size_t i = 0; i < n_top; ++i) {
      auto acc = phi.accumulator();
      for (std::size_t j = 0; j < l; ++j) acc->push(o.points[i + j]);
      block_sum[i + 1] = block_sum[i] + acc->value();
    }
    auto acc = phi.accumulator();
    std::size_t next = 0;
    for (std::size_t n = 1; n <= n_top; ++n) {
      acc->push(o.points[n - 1]);
      while (next < sorted.size() && sorted[next] == n) {
        const double bound = report.c + block_sum[n] / static_cast<double>(l);
        const double violation = acc->value() - bound;
        ++report.checked;
        if (violation > report.max_violation) {
          report.max_violation = violation;
          report.worst_x = x;
          report.worst_n = n;
        }
        ++next;
      }
    }
  }
  report.pass = report.max_violation <= tolerance;
  return report;
}

}  // namespace optstate
