#include <algorithm>
#include <cmath>

#include "optstate/errors.hpp"
#include "optstate/measures.hpp"

namespace optstate {

std::vector<std::size_t> checkpoint_schedule(std::size_t horizon, std::size_t n0, double gamma) {
  if (horizon == 0) throw ParameterError("schedule horizon must be >= 1");
  if (!(gamma > 1.0)) throw ParameterError("schedule growth factor must be > 1");
  const std::size_t start = std::max<std::size_t>(1, std::min(n0, (horizon + 7) / 8));
  std::vector<std::size_t> schedule;
  for (int j = 0;; ++j) {
    // The 1e-9 guard keeps e.g. 100 * 1.4 from ceiling to 141.
    const double value = static_cast<double>(start) * std::pow(gamma, j);
    const auto n = static_cast<std::size_t>(std::ceil(value - 1e-9));
    if (n >= horizon) break;
    if (schedule.empty() || n > schedule.back()) schedule.push_back(n);
  }
  schedule.push_back(horizon);
  return schedule;
}

MomentAccumulator::MomentAccumulator(const WeakStarMetric& metric)
    : metric_(&metric), sums_(metric.size(), 0.0), scratch_(metric.size(), 0.0) {}

void MomentAccumulator::add(const Point& x) {
  metric_->evaluate(x, scratch_);
  for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += scratch_[k];
  ++count_;
}

Moments MomentAccumulator::current() const {
  Moments out(sums_.size());
  const double n = static_cast<double>(count_);
  for (std::size_t k = 0; k < sums_.size(); ++k) out[k] = sums_[k] / n;
  return out;
}

void cluster_tail(LimitSetEstimate& estimate, const WeakStarMetric& metric, double cluster_tol) {
  if (!(cluster_tol > 0.0)) throw ParameterError("cluster tolerance must be > 0");
  const auto& horizons = estimate.horizons;
  const std::size_t last = horizons.back();
  const std::size_t half = (last + 1) / 2;
  estimate.tail_begin = static_cast<std::size_t>(
      std::lower_bound(horizons.begin(), horizons.end(), half) - horizons.begin());
  estimate.cluster_tol = cluster_tol;
  estimate.clusters.clear();
  estimate.spread = 0.0;

  const auto& m = estimate.checkpoint_moments;
  for (std::size_t i = estimate.tail_begin; i < horizons.size(); ++i) {
    for (std::size_t j = estimate.tail_begin; j < i; ++j) {
      estimate.spread = std::max(estimate.spread, metric.distance(m[i], m[j]));
    }
    // Single linkage: the new checkpoint joins (and thereby merges) every
    // cluster holding a member within tolerance.
    Cluster merged;
    std::vector<Cluster> untouched;
    for (auto& cluster : estimate.clusters) {
      const bool linked = std::any_of(cluster.members.begin(), cluster.members.end(),
                                      [&](std::size_t j) {
                                        return metric.distance(m[i], m[j]) <= cluster_tol;
                                      });
      if (linked) {
        merged.members.insert(merged.members.end(), cluster.members.begin(),
                              cluster.members.end());
      } else {
        untouched.push_back(std::move(cluster));
      }
    }
    merged.members.push_back(i);
    std::sort(merged.members.begin(), merged.members.end());
    merged.representative = merged.members.back();
    untouched.push_back(std::move(merged));
    std::sort(untouched.begin(), untouched.end(), [](const Cluster& a, const Cluster& b) {
      return a.members.front() < b.members.front();
    });
    estimate.clusters = std::move(untouched);
  }
}

LimitSetEstimate limit_set_estimate(const DynamicalSystem& system, const Point& x,
                                    const std::vector<std::size_t>& schedule,
                                    const WeakStarMetric& metric, double cluster_tol) {
  if (schedule.size() < 3) throw ParameterError("limit-set schedule needs >= 3 checkpoints");
  if (schedule.front() == 0 || !std::is_sorted(schedule.begin(), schedule.end()) ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end()) {
    throw ParameterError("limit-set schedule must be strictly increasing and positive");
  }
  if (!(cluster_tol > 0.0)) throw ParameterError("cluster tolerance must be > 0");
  if (!(metric.space() == system.space())) {
    throw SpaceMismatchError("metric and system live on different spaces");
  }
  system.space().require(x, "limit_set_estimate");

  LimitSetEstimate estimate;
  estimate.x = x;
  estimate.horizons = schedule;
  estimate.checkpoint_moments.reserve(schedule.size());

  MomentAccumulator acc(metric);
  Point current = x;
  std::size_t next = 0;
  const std::size_t horizon = schedule.back();
  for (std::size_t n = 1; n <= horizon; ++n) {
    acc.add(current);
    if (n == schedule[next]) {
      estimate.checkpoint_moments.push_back(acc.current());
      ++next;
    }
    if (n < horizon) current = system.advance(current);
  }
  if (!current.is_finite()) throw NonfiniteStateError("orbit left the finite range");
  cluster_tail(estimate, metric, cluster_tol);
  return estimate;
}

}  // namespace optstate
