#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "optstate/dynamics.hpp"
#include "optstate/errors.hpp"
#include "optstate/measures.hpp"

namespace optstate {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Closed forms for the default circle family: member 2j-1 is (1+sin 2 pi j x)/2,
// member 2j is (1+cos 2 pi j x)/2, weights 2^-k, harmonics j = 1..8.
// delta_0 vs delta_1/2 differ only in odd-j cosines, by 1.
constexpr double kDiracZeroHalf = 0x1p-2 + 0x1p-6 + 0x1p-10 + 0x1p-14;
// delta_0 vs Lebesgue: every cosine member differs by 1/2.
constexpr double kDiracZeroLebesgue = 0.16666412353515625;  // (1/6)(1 - 4^-8)
// delta_0 vs the 1/3-orbit measure: cosines with 3 not dividing j differ by 3/4.
constexpr double kDiracZeroThirds = 0.238094329833984375;

double family_distance_oracle(const std::vector<std::pair<double, double>>& a,
                              const std::vector<std::pair<double, double>>& b) {
  double total = 0.0;
  double w = 1.0;
  for (int j = 1; j <= 8; ++j) {
    for (const bool use_cos : {false, true}) {
      w *= 0.5;
      double ia = 0.0, ib = 0.0;
      for (const auto& [x, m] : a) {
        ia += m * 0.5 * (1 + (use_cos ? std::cos(kTwoPi * j * x) : std::sin(kTwoPi * j * x)));
      }
      for (const auto& [x, m] : b) {
        ib += m * 0.5 * (1 + (use_cos ? std::cos(kTwoPi * j * x) : std::sin(kTwoPi * j * x)));
      }
      total += w * std::fabs(ia - ib);
    }
  }
  return total;
}

WeakStarMetric circle_metric() { return WeakStarMetric::default_for(StateSpace::circle()); }

TEST(Measure, WeightsValidatedAndDuplicatesMerged) {
  const StateSpace c = StateSpace::circle();
  EXPECT_THROW(Measure::point_masses(c, {{Point::scalar(0.1), 0.7}, {Point::scalar(0.2), 0.2}}),
               ParameterError);
  EXPECT_THROW(Measure::point_masses(c, {{Point::scalar(0.1), 1.5}, {Point::scalar(0.2), -0.5}}),
               ParameterError);
  const Measure m =
      Measure::point_masses(c, {{Point::scalar(0.1), 0.25}, {Point::scalar(0.1), 0.75}});
  ASSERT_EQ(m.masses().size(), 1u);
  EXPECT_DOUBLE_EQ(m.masses()[0].weight, 1.0);
}

TEST(Integrate, Examples) {
  const StateSpace c = StateSpace::circle();
  const ScalarFunction cosine = [](const Point& x) { return std::cos(kTwoPi * x[0]); };
  EXPECT_NEAR(integrate(Measure::lebesgue(c), cosine), 0.0, 1e-12);
  EXPECT_NEAR(integrate(Measure::dirac(c, Point::scalar(0.25)), cosine), 0.0, 1e-15);
  const Point a = Point::scalar(0.1), b = Point::scalar(0.7);
  const Measure mix = Measure::mixture({{Measure::dirac(c, a), 0.5}, {Measure::dirac(c, b), 0.5}});
  EXPECT_NEAR(integrate(mix, cosine), 0.5 * (cosine(a) + cosine(b)), 1e-15);
}

TEST(Integrate, StaysWithinTheRangeOfG) {
  const StateSpace c = StateSpace::circle();
  std::mt19937_64 rng(5);
  const ScalarFunction g = [](const Point& x) { return std::sin(kTwoPi * 3 * x[0]) + x[0]; };
  for (int i = 0; i < 50; ++i) {
    std::vector<WeightedPoint> masses;
    double lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k < 3; ++k) {
      masses.push_back({c.sample(rng), 1.0 / 3});
      lo = std::min(lo, g(masses.back().point));
      hi = std::max(hi, g(masses.back().point));
    }
    const double v = integrate(Measure::point_masses(c, masses), g);
    EXPECT_GE(v, lo - 1e-15);
    EXPECT_LE(v, hi + 1e-15);
  }
}

TEST(MeasureSpec, Examples) {
  const DynamicalSystem f = doubling_map();
  const Measure d = measure_from_spec("dirac:0.25", f);
  ASSERT_EQ(d.flattened().size(), 1u);
  EXPECT_EQ(d.flattened()[0].point[0], 0.25);

  const Measure o = measure_from_spec("orbit:1/3,2", f);
  const auto om = o.flattened();
  ASSERT_EQ(om.size(), 2u);
  EXPECT_DOUBLE_EQ(om[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(om[1].weight, 0.5);

  const auto mm = measure_from_spec("mix:0.5*dirac:0+0.5*orbit:1/3,2", f).flattened();
  ASSERT_EQ(mm.size(), 3u);
  std::vector<double> weights;
  for (const auto& w : mm) weights.push_back(w.weight);
  std::sort(weights.begin(), weights.end());
  EXPECT_DOUBLE_EQ(weights[0], 0.25);
  EXPECT_DOUBLE_EQ(weights[1], 0.25);
  EXPECT_DOUBLE_EQ(weights[2], 0.5);

  EXPECT_EQ(measure_from_spec("lebesgue", f).kind(), Measure::Kind::lebesgue);
}

TEST(MeasureSpec, Errors) {
  const DynamicalSystem f = doubling_map();
  EXPECT_THROW(measure_from_spec("orbit:0.1,2", f), NonPeriodicError);
  try {
    measure_from_spec("mix:0.5*dirac:0+0.5*gauss", f);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 0u);
  }
  EXPECT_THROW(measure_from_spec("dirac:", f), ParseError);
}

TEST(WeakStarDistance, ClosedFormsOnTheCircle) {
  const StateSpace c = StateSpace::circle();
  const WeakStarMetric m = circle_metric();
  const Measure d0 = Measure::dirac(c, Point::scalar(0.0));
  EXPECT_NEAR(family_distance_oracle({{0.0, 1.0}}, {{0.5, 1.0}}), kDiracZeroHalf, 1e-15);
  EXPECT_NEAR(weak_star_distance(m, d0, Measure::dirac(c, Point::scalar(0.5))), kDiracZeroHalf,
              1e-15);
  EXPECT_NEAR(weak_star_distance(m, d0, Measure::lebesgue(c)), kDiracZeroLebesgue, 1e-12);
  EXPECT_NEAR(family_distance_oracle({{0.0, 1.0}}, {{1.0 / 3, 0.5}, {2.0 / 3, 0.5}}),
              kDiracZeroThirds, 1e-15);
  EXPECT_NEAR(weak_star_distance(m, d0, measure_from_spec("orbit:1/3,2", doubling_map())),
              kDiracZeroThirds, 1e-15);
  EXPECT_EQ(weak_star_distance(m, d0, d0), 0.0);
}

TEST(WeakStarDistance, SpaceMismatch) {
  const Measure a = Measure::dirac(StateSpace::circle(), Point::scalar(0.0));
  const Measure b = Measure::dirac(StateSpace::interval(), Point::scalar(0.0));
  EXPECT_THROW(weak_star_distance(circle_metric(), a, b), SpaceMismatchError);
}

TEST(WeakStarDistance, MemberDifferenceBoundedByScaledDistance) {
  const StateSpace c = StateSpace::circle();
  const WeakStarMetric m = circle_metric();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Measure mu = Measure::mixture({{Measure::dirac(c, c.sample(rng)), 0.3},
                                         {Measure::lebesgue(c), 0.7}});
    const Measure nu = Measure::point_masses(c, {{c.sample(rng), 0.5}, {c.sample(rng), 0.5}});
    const Moments a = moments(m, mu), b = moments(m, nu);
    const double d = weak_star_distance(m, mu, nu);
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_LE(std::fabs(a[k] - b[k]), std::ldexp(d, static_cast<int>(k + 1)) + 1e-12);
    }
  }
}

TEST(WeakStarDistance, AxiomsOnEverySpace) {
  for (const StateSpace& s : {StateSpace::circle(), StateSpace::interval(), StateSpace::torus2(),
                              StateSpace::simplex3(), StateSpace::planar_ball()}) {
    const MetricAxiomsReport r = check_metric_axioms(WeakStarMetric::default_for(s), 200, 17);
    EXPECT_TRUE(r.pass) << s.name() << " triangle " << r.max_triangle_excess;
    EXPECT_EQ(r.max_asymmetry, 0.0);
    EXPECT_EQ(r.max_self_distance, 0.0);
    EXPECT_LE(r.max_distance, 1.0);
  }
}

TEST(WeakStarDistance, RotationEquidistributes) {
  const DynamicalSystem r = system_from_name("rotation:golden");
  const WeakStarMetric m = circle_metric();
  const Measure leb = Measure::lebesgue(r.space());
  const Point x = r.space().parse_point("0.123");
  const double d3 = weak_star_distance(m, empirical_measure(r, x, 1000).to_measure(r.space()), leb);
  const double d4 =
      weak_star_distance(m, empirical_measure(r, x, 10000).to_measure(r.space()), leb);
  EXPECT_LT(d4, d3);
}

TEST(EmpiricalMeasure, Examples) {
  const DynamicalSystem f = doubling_map();
  const StateSpace& c = f.space();
  const Point x = c.parse_point("0.37");
  const Measure one = empirical_measure(f, x, 1).to_measure(c);
  ASSERT_EQ(one.masses().size(), 1u);
  EXPECT_EQ(one.masses()[0].point, x);

  const Measure thirds = empirical_measure(f, c.parse_point("1/3"), 4).to_measure(c);
  ASSERT_EQ(thirds.masses().size(), 2u);
  EXPECT_DOUBLE_EQ(thirds.masses()[0].weight, 0.5);

  const Measure zero = empirical_measure(f, Point::scalar(0.0), 100).to_measure(c);
  ASSERT_EQ(zero.masses().size(), 1u);
  EXPECT_DOUBLE_EQ(zero.masses()[0].weight, 1.0);
}

TEST(EmpiricalMeasure, UpdateIdentity) {
  const DynamicalSystem f = doubling_map();
  std::mt19937_64 rng(21);
  for (int i = 0; i < 3; ++i) {
    const Point x = f.space().sample(rng);
    EmpiricalMeasure e = empirical_measure(f, x, 1);
    for (std::size_t n = 1; n < 300; ++n) {
      e = e.extended(f);
      ASSERT_EQ(e, empirical_measure(f, x, n + 1));
      EXPECT_EQ(e.horizon(), n + 1);
    }
  }
  const EmpiricalRecursionReport r =
      check_empirical_recursion(f, circle_metric(), 3, 300, 4);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.representation_mismatches, 0u);
}

TEST(CheckpointSchedule, GeometricAndCapped) {
  const auto s = checkpoint_schedule(100'000);
  ASSERT_GE(s.size(), 3u);
  EXPECT_EQ(s.front(), 100u);
  EXPECT_EQ(s.back(), 100'000u);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GT(s[i], s[i - 1]);
  EXPECT_EQ(s[1], 140u);
  EXPECT_EQ(checkpoint_schedule(300).back(), 300u);
}

TEST(LimitSet, FixedPointHasOneCluster) {
  const DynamicalSystem f = doubling_map();
  const WeakStarMetric m = circle_metric();
  const LimitSetEstimate e =
      limit_set_estimate(f, Point::scalar(0.0), checkpoint_schedule(10'000), m, 0.01);
  EXPECT_EQ(e.clusters.size(), 1u);
  EXPECT_EQ(e.spread, 0.0);
}

TEST(LimitSet, RotationConvergesToLebesgue) {
  const DynamicalSystem r = system_from_name("rotation:golden");
  const WeakStarMetric m = circle_metric();
  const Moments leb = moments(m, Measure::lebesgue(r.space()));
  const auto schedule = checkpoint_schedule(100'000);
  const LimitSetEstimate e = limit_set_estimate(r, r.space().parse_point("0.61"), schedule, m, 0.01);
  ASSERT_EQ(e.clusters.size(), 1u);
  EXPECT_LE(m.distance(e.representative(0), leb), 0.01);
  EXPECT_LT(m.distance(e.checkpoint_moments.back(), leb),
            m.distance(e.checkpoint_moments.front(), leb));
}

TEST(LimitSet, RepresentativesAreTailCheckpoints) {
  const DynamicalSystem f = system_from_name("may-leonard:0.8,1.9,0.1");
  const WeakStarMetric m = WeakStarMetric::default_for(f.space());
  const LimitSetEstimate e = limit_set_estimate(f, Point::barycentric(0.5, 0.3, 0.2),
                                                checkpoint_schedule(100'000), m, 0.01);
  EXPECT_GE(e.spread, 0.02);
  EXPECT_GE(e.clusters.size(), 2u);
  for (const Cluster& c : e.clusters) {
    EXPECT_GE(c.representative, e.tail_begin);
    for (const std::size_t member : c.members) EXPECT_GE(member, e.tail_begin);
  }
}

TEST(LimitSet, RejectsShortSchedules) {
  const DynamicalSystem f = doubling_map();
  EXPECT_THROW(limit_set_estimate(f, Point::scalar(0.0), {100, 200}, circle_metric(), 0.01),
               ParameterError);
  EXPECT_THROW(limit_set_estimate(f, Point::scalar(0.0), {100, 200, 300}, circle_metric(), 0.0),
               ParameterError);
}

}  // namespace
}  // namespace optstate
