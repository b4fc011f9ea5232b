#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "optstate/rational.hpp"

namespace optstate {

/// A state point with up to three ambient coordinates.
///
/// Two auxiliary representations ride along with the doubles:
///  - circle points may carry an exact Rational; maps that can act exactly
///    (doubling, rational rotations) propagate it, so periodic orbits such as
///    1/3 -> 2/3 -> 1/3 are bit-stable and never collapse to 0;
///  - simplex points carry log-coordinates, which is what Kolmogorov flows
///    are integrated in. Ambient coordinates are exp(log) and may underflow
///    to zero while the log-coordinates stay finite.
class Point {
 public:
  static constexpr std::size_t kMaxDim = 3;

  Point() = default;

  static Point scalar(double x);
  static Point exact(const Rational& r);
  static Point planar(double x, double y);
  /// Simplex point from ambient coordinates; log-coordinates are log(x_i).
  static Point barycentric(double x1, double x2, double x3);
  /// Simplex point from (already normalized) log-coordinates.
  static Point from_log(const std::array<double, 3>& log_coords);

  std::size_t dim() const noexcept { return dim_; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return {coords_.data(), dim_}; }

  const std::optional<Rational>& exact_value() const noexcept { return exact_; }
  bool has_log_coords() const noexcept { return has_log_; }
  const std::array<double, 3>& log_coords() const noexcept { return log_; }

  bool is_finite() const noexcept;

  /// Bitwise equality of every stored representation.
  friend bool operator==(const Point& a, const Point& b) noexcept;

  /// Compact human-readable form; exact circle coordinates print as p/q.
  std::string to_string() const;

 private:
  std::array<double, kMaxDim> coords_{};
  std::array<double, kMaxDim> log_{};
  std::optional<Rational> exact_;
  std::uint8_t dim_ = 0;
  bool has_log_ = false;
};

}  // namespace optstate
