#include <random>

#include <benchmark/benchmark.h>

#include "optstate/scenarios.hpp"

namespace {

using namespace optstate;

void BM_DoublingStep(benchmark::State& state) {
  const DynamicalSystem f = doubling_map();
  std::mt19937_64 rng(1);
  Point x = f.space().sample(rng);
  for (auto _ : state) {
    x = f.step(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_DoublingStep);

void BM_MayLeonardStep(benchmark::State& state) {
  const HeteroclinicSystem h = may_leonard_system(0.8, 1.9, 0.1);
  Point x = Point::barycentric(0.5, 0.3, 0.2);
  for (auto _ : state) {
    x = h.system.step(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_MayLeonardStep);

void BM_EmpiricalMoments(benchmark::State& state) {
  const DynamicalSystem f = doubling_map();
  const WeakStarMetric metric = WeakStarMetric::default_for(f.space());
  std::mt19937_64 rng(2);
  const Point x = f.space().sample(rng);
  const auto horizon = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        limit_set_estimate(f, x, checkpoint_schedule(horizon), metric, 0.01).spread);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalMoments)->Arg(1'000)->Arg(10'000);

void BM_CocycleGrowth(benchmark::State& state) {
  const Scenario s = build_scenario("doubling-basic");
  const SubadditivePotential phi = s.potential("cocycle:diag-cos");
  std::mt19937_64 rng(3);
  const Point x = s.system.space().sample(rng);
  const auto horizon = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(growth_report(phi, s.system, x, horizon).largest_rate);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CocycleGrowth)->Arg(1'000)->Arg(10'000);

void BM_WeakStarDistance(benchmark::State& state) {
  const StateSpace c = StateSpace::circle();
  const WeakStarMetric metric = WeakStarMetric::default_for(c);
  const Moments a = moments(metric, Measure::lebesgue(c));
  const Moments b = moments(metric, Measure::dirac(c, Point::scalar(0.0)));
  for (auto _ : state) benchmark::DoNotOptimize(metric.distance(a, b));
}
BENCHMARK(BM_WeakStarDistance);

}  // namespace

BENCHMARK_MAIN();
