#include "optstate/point.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace optstate {

Point Point::scalar(double x) {
  Point p;
  p.coords_[0] = x;
  p.dim_ = 1;
  return p;
}

Point Point::exact(const Rational& r) {
  Point p = scalar(r.to_double());
  p.exact_ = r;
  return p;
}

Point Point::planar(double x, double y) {
  Point p;
  p.coords_ = {x, y, 0.0};
  p.dim_ = 2;
  return p;
}

Point Point::barycentric(double x1, double x2, double x3) {
  Point p;
  p.coords_ = {x1, x2, x3};
  p.log_ = {std::log(x1), std::log(x2), std::log(x3)};
  p.dim_ = 3;
  p.has_log_ = true;
  return p;
}

Point Point::from_log(const std::array<double, 3>& log_coords) {
  Point p;
  p.log_ = log_coords;
  for (std::size_t i = 0; i < 3; ++i) p.coords_[i] = std::exp(log_coords[i]);
  p.dim_ = 3;
  p.has_log_ = true;
  return p;
}

bool Point::is_finite() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!std::isfinite(coords_[i])) return false;
    // -inf log-coordinates are legitimate (exact boundary points).
    if (has_log_ && (std::isnan(log_[i]) || log_[i] == HUGE_VAL)) return false;
  }
  return true;
}

bool operator==(const Point& a, const Point& b) noexcept {
  if (a.dim_ != b.dim_ || a.has_log_ != b.has_log_ || a.exact_ != b.exact_) {
    return false;
  }
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (std::bit_cast<std::uint64_t>(a.coords_[i]) !=
        std::bit_cast<std::uint64_t>(b.coords_[i])) {
      return false;
    }
    if (a.has_log_ && std::bit_cast<std::uint64_t>(a.log_[i]) !=
                          std::bit_cast<std::uint64_t>(b.log_[i])) {
      return false;
    }
  }
  return true;
}

std::string Point::to_string() const {
  if (exact_) {
    return std::to_string(exact_->num()) + "/" + std::to_string(exact_->den());
  }
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i != 0) out << ',';
    out << coords_[i];
  }
  return out.str();
}

}  // namespace optstate
