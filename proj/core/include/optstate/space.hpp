#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "optstate/point.hpp"

namespace optstate {

enum class SpaceKind { circle, interval, torus2, simplex3, planar_ball };

std::string to_string(SpaceKind kind);

/// One point with a quadrature/cell weight.
struct WeightedPoint {
  Point point;
  double weight = 0.0;
};

/// Uniform cell decomposition of a space used by the Lebesgue-fraction scans.
struct Grid {
  std::vector<std::size_t> resolution;  // per dimension; simplex3 uses {m}
  std::vector<Point> centers;
  double cell_width = 0.0;              // edge length in the grid parameter
};

/// Compact state space with its intrinsic metric. Immutable value type.
class StateSpace {
 public:
  static StateSpace circle();
  static StateSpace interval(double lo = 0.0, double hi = 1.0);
  static StateSpace torus2();
  static StateSpace simplex3();
  static StateSpace planar_ball(double cx = 0.0, double cy = 0.0,
                                double radius = 1.0);

  SpaceKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept;
  std::string name() const;

  /// Interval: {lo, hi, 0}; planar ball: {cx, cy, radius}; zeros otherwise.
  std::array<double, 3> parameters() const noexcept { return {a_, b_, c_}; }

  /// Intrinsic metric (wraparound on circle/torus, Euclidean otherwise;
  /// simplex points are measured in ambient R^3).
  double distance(const Point& a, const Point& b) const;

  bool contains(const Point& p) const noexcept;
  /// Throws DomainError when `p` is not in the space.
  void require(const Point& p, const char* what) const;

  /// Uniform random point. Circle samples are exact rationals over a large
  /// prime denominator with primitive root 2, so their doubling orbits are
  /// long and equidistributed rather than collapsing onto 0.
  Point sample(std::mt19937_64& rng) const;

  /// Deterministic Kronecker-sequence points.
  std::vector<Point> low_discrepancy(std::size_t count) const;

  /// Cell centers of a uniform grid: R cells on 1-D spaces (circle centers
  /// are exact rationals (2i+1)/(2R)), R x R on torus/planar (planar keeps
  /// only centers inside the ball), and R^2 congruent sub-triangles with
  /// their centroids on simplex3.
  Grid grid(std::size_t resolution) const;

  /// Reference quadrature for Lebesgue (normalized area) measure: 2048-point
  /// midpoint rule on 1-D spaces, 64x64 on torus/planar, and the 32^2
  /// sub-triangle centroid rule on simplex3.
  std::vector<WeightedPoint> lebesgue_rule() const;

  /// Parses comma-separated coordinates ("0.37", "1/3", "0.5,0.3,0.2").
  /// Circle coordinates become exact rationals when they parse as such.
  Point parse_point(const std::string& text) const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  StateSpace(SpaceKind kind, double a, double b, double c)
      : kind_(kind), a_(a), b_(b), c_(c) {}

  SpaceKind kind_;
  // interval: [a_, b_]; planar_ball: center (a_, b_), radius c_.
  double a_ = 0.0;
  double b_ = 0.0;
  double c_ = 0.0;
};

/// Prime denominator used for random circle points (2 is a primitive root).
inline constexpr std::uint64_t kTypicalDenominator = 2305843009213693907ULL;

}  // namespace optstate
