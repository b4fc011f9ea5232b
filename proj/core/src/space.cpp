#include "optstate/space.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "optstate/errors.hpp"

namespace optstate {

namespace {

constexpr double kSimplexSumTolerance = 1e-12;

double wrap_unit(double x) { return x - std::floor(x); }

double wrapped_gap(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

double parse_real(std::string_view text, std::size_t offset) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_real(text.substr(0, slash), offset);
    const double den = parse_real(text.substr(slash + 1), offset + slash + 1);
    if (den == 0.0) throw ParseError("zero denominator", offset + slash + 1);
    return num / den;
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ParseError("expected a number, got '" + std::string(text) + "'",
                     offset + static_cast<std::size_t>(ptr - first));
  }
  return value;
}

// Frozen Kronecker generators: golden ratio (1-D) and the plastic number
// (2-D R2 sequence).
constexpr double kGolden = 0.6180339887498949;
constexpr double kPlastic1 = 0.7548776662466927;
constexpr double kPlastic2 = 0.5698402909980532;

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::circle: return "circle";
    case SpaceKind::interval: return "interval";
    case SpaceKind::torus2: return "torus2";
    case SpaceKind::simplex3: return "simplex3";
    case SpaceKind::planar_ball: return "planar-ball";
  }
  return "unknown";
}

StateSpace StateSpace::circle() { return {SpaceKind::circle, 0.0, 1.0, 0.0}; }

StateSpace StateSpace::interval(double lo, double hi) {
  if (!(lo < hi)) throw ParameterError("interval requires lo < hi");
  return {SpaceKind::interval, lo, hi, 0.0};
}

StateSpace StateSpace::torus2() { return {SpaceKind::torus2, 0.0, 1.0, 0.0}; }

StateSpace StateSpace::simplex3() { return {SpaceKind::simplex3, 0.0, 0.0, 0.0}; }

StateSpace StateSpace::planar_ball(double cx, double cy, double radius) {
  if (!(radius > 0.0)) throw ParameterError("planar ball requires radius > 0");
  return {SpaceKind::planar_ball, cx, cy, radius};
}

std::size_t StateSpace::dim() const noexcept {
  switch (kind_) {
    case SpaceKind::circle:
    case SpaceKind::interval: return 1;
    case SpaceKind::torus2:
    case SpaceKind::planar_ball: return 2;
    case SpaceKind::simplex3: return 3;
  }
  return 0;
}

std::string StateSpace::name() const {
  switch (kind_) {
    case SpaceKind::interval:
      if (a_ == 0.0 && b_ == 1.0) return "interval";
      return "interval[" + std::to_string(a_) + "," + std::to_string(b_) + "]";
    case SpaceKind::planar_ball:
      return "planar-ball(" + std::to_string(a_) + "," + std::to_string(b_) +
             ";" + std::to_string(c_) + ")";
    default: return to_string(kind_);
  }
}

double StateSpace::distance(const Point& a, const Point& b) const {
  switch (kind_) {
    case SpaceKind::circle: return wrapped_gap(a[0], b[0]);
    case SpaceKind::interval: return std::fabs(a[0] - b[0]);
    case SpaceKind::torus2:
      return std::hypot(wrapped_gap(a[0], b[0]), wrapped_gap(a[1], b[1]));
    case SpaceKind::planar_ball: return std::hypot(a[0] - b[0], a[1] - b[1]);
    case SpaceKind::simplex3: {
      const double d0 = a[0] - b[0];
      const double d1 = a[1] - b[1];
      const double d2 = a[2] - b[2];
      return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
    }
  }
  return 0.0;
}

bool StateSpace::contains(const Point& p) const noexcept {
  if (p.dim() != dim() || !p.is_finite()) return false;
  switch (kind_) {
    case SpaceKind::circle: return p[0] >= 0.0 && p[0] < 1.0;
    case SpaceKind::interval: return p[0] >= a_ && p[0] <= b_;
    case SpaceKind::torus2:
      return p[0] >= 0.0 && p[0] < 1.0 && p[1] >= 0.0 && p[1] < 1.0;
    case SpaceKind::planar_ball: {
      const double dx = p[0] - a_;
      const double dy = p[1] - b_;
      return dx * dx + dy * dy <= c_ * c_;
    }
    case SpaceKind::simplex3:
      return p[0] >= 0.0 && p[1] >= 0.0 && p[2] >= 0.0 &&
             std::fabs(p[0] + p[1] + p[2] - 1.0) <= kSimplexSumTolerance;
  }
  return false;
}

void StateSpace::require(const Point& p, const char* what) const {
  if (!contains(p)) {
    throw DomainError(std::string(what) + ": point (" + p.to_string() +
                      ") is not in " + name());
  }
}

Point StateSpace::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind_) {
    case SpaceKind::circle: {
      std::uniform_int_distribution<std::uint64_t> num(0, kTypicalDenominator - 1);
      return Point::exact(Rational(num(rng), kTypicalDenominator));
    }
    case SpaceKind::interval: return Point::scalar(a_ + (b_ - a_) * unit(rng));
    case SpaceKind::torus2: {
      const double x = unit(rng);
      return Point::planar(x, unit(rng));
    }
    case SpaceKind::planar_ball: {
      for (;;) {
        const double x = 2.0 * unit(rng) - 1.0;
        const double y = 2.0 * unit(rng) - 1.0;
        if (x * x + y * y <= 1.0) return Point::planar(a_ + c_ * x, b_ + c_ * y);
      }
    }
    case SpaceKind::simplex3: {
      double u = unit(rng);
      double v = unit(rng);
      if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
      }
      return Point::barycentric(u, v, std::max(0.0, 1.0 - u - v));
    }
  }
  throw DomainError("unknown space kind");
}

std::vector<Point> StateSpace::low_discrepancy(std::size_t count) const {
  std::vector<Point> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double k = static_cast<double>(i) + 0.5;
    const double s = wrap_unit(0.5 + k * kGolden);
    const double u = wrap_unit(0.5 + k * kPlastic1);
    const double v = wrap_unit(0.5 + k * kPlastic2);
    switch (kind_) {
      case SpaceKind::circle: points.push_back(Point::scalar(s)); break;
      case SpaceKind::interval: points.push_back(Point::scalar(a_ + (b_ - a_) * s)); break;
      case SpaceKind::torus2: points.push_back(Point::planar(u, v)); break;
      case SpaceKind::planar_ball: {
        const double r = c_ * std::sqrt(u);
        const double theta = 2.0 * std::numbers::pi * v;
        points.push_back(Point::planar(a_ + r * std::cos(theta), b_ + r * std::sin(theta)));
        break;
      }
      case SpaceKind::simplex3: {
        double x = u;
        double y = v;
        if (x + y > 1.0) {
          x = 1.0 - x;
          y = 1.0 - y;
        }
        points.push_back(Point::barycentric(x, y, std::max(0.0, 1.0 - x - y)));
        break;
      }
    }
  }
  return points;
}

Grid StateSpace::grid(std::size_t resolution) const {
  if (resolution < 2) throw ParameterError("grid resolution must be >= 2");
  Grid g;
  const double r = static_cast<double>(resolution);
  switch (kind_) {
    case SpaceKind::circle:
      g.resolution = {resolution};
      g.cell_width = 1.0 / r;
      g.centers.reserve(resolution);
      for (std::size_t i = 0; i < resolution; ++i) {
        g.centers.push_back(Point::exact(Rational(2 * i + 1, 2 * resolution)));
      }
      break;
    case SpaceKind::interval:
      g.resolution = {resolution};
      g.cell_width = (b_ - a_) / r;
      g.centers.reserve(resolution);
      for (std::size_t i = 0; i < resolution; ++i) {
        g.centers.push_back(Point::scalar(a_ + (b_ - a_) * (static_cast<double>(i) + 0.5) / r));
      }
      break;
    case SpaceKind::torus2:
    case SpaceKind::planar_ball: {
      g.resolution = {resolution, resolution};
      const bool ball = kind_ == SpaceKind::planar_ball;
      const double lo_x = ball ? a_ - c_ : 0.0;
      const double lo_y = ball ? b_ - c_ : 0.0;
      const double span = ball ? 2.0 * c_ : 1.0;
      g.cell_width = span / r;
      for (std::size_t i = 0; i < resolution; ++i) {
        for (std::size_t j = 0; j < resolution; ++j) {
          const Point p = Point::planar(lo_x + span * (static_cast<double>(i) + 0.5) / r,
                                        lo_y + span * (static_cast<double>(j) + 0.5) / r);
          if (contains(p)) g.centers.push_back(p);
        }
      }
      break;
    }
    case SpaceKind::simplex3: {
      g.resolution = {resolution};
      g.cell_width = 1.0 / r;
      g.centers.reserve(resolution * resolution);
      const std::size_t m = resolution;
      // Upward sub-triangles have lattice corner (i, j, k) with i+j+k = m-1,
      // downward ones i+j+k = m-2; centroids are offset by 1/3 resp. 2/3.
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; i + j < m; ++j) {
          const std::size_t k = m - 1 - i - j;
          g.centers.push_back(Point::barycentric((static_cast<double>(i) + 1.0 / 3.0) / r,
                                                 (static_cast<double>(j) + 1.0 / 3.0) / r,
                                                 (static_cast<double>(k) + 1.0 / 3.0) / r));
          if (i + j + 2 <= m) {
            const std::size_t kd = m - 2 - i - j;
            g.centers.push_back(Point::barycentric((static_cast<double>(i) + 2.0 / 3.0) / r,
                                                   (static_cast<double>(j) + 2.0 / 3.0) / r,
                                                   (static_cast<double>(kd) + 2.0 / 3.0) / r));
          }
        }
      }
      break;
    }
  }
  return g;
}

std::vector<WeightedPoint> StateSpace::lebesgue_rule() const {
  std::size_t resolution = 0;
  switch (kind_) {
    case SpaceKind::circle:
    case SpaceKind::interval: resolution = 2048; break;
    case SpaceKind::torus2:
    case SpaceKind::planar_ball: resolution = 64; break;
    case SpaceKind::simplex3: resolution = 32; break;
  }
  const Grid g = grid(resolution);
  const double w = 1.0 / static_cast<double>(g.centers.size());
  std::vector<WeightedPoint> rule;
  rule.reserve(g.centers.size());
  for (const Point& p : g.centers) rule.push_back({p, w});
  return rule;
}

Point StateSpace::parse_point(const std::string& text) const {
  std::vector<std::string_view> parts;
  std::vector<std::size_t> offsets;
  const std::string_view view(text);
  std::size_t begin = 0;
  for (;;) {
    const std::size_t comma = view.find(',', begin);
    parts.push_back(view.substr(begin, comma == std::string_view::npos ? comma : comma - begin));
    offsets.push_back(begin);
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  if (parts.size() != dim()) {
    throw ParseError("expected " + std::to_string(dim()) + " coordinate(s) for " +
                         name() + ", got " + std::to_string(parts.size()),
                     0);
  }
  Point p;
  if (kind_ == SpaceKind::circle) {
    if (auto exact = parse_rational(parts[0])) {
      p = Point::exact(*exact);
    } else {
      p = Point::scalar(parse_real(parts[0], 0));
    }
  } else if (dim() == 1) {
    p = Point::scalar(parse_real(parts[0], 0));
  } else if (dim() == 2) {
    p = Point::planar(parse_real(parts[0], 0), parse_real(parts[1], offsets[1]));
  } else {
    p = Point::barycentric(parse_real(parts[0], 0), parse_real(parts[1], offsets[1]),
                           parse_real(parts[2], offsets[2]));
  }
  require(p, "parse_point");
  return p;
}

}  // namespace optstate
