#include "optstate/dynamics.hpp"

#include <charconv>
#include <cmath>

#include "optstate/errors.hpp"

namespace optstate {

DynamicalSystem::DynamicalSystem(StateSpace space, PointMap map, std::string label)
    : space_(std::move(space)),
      map_(std::make_shared<const PointMap>(std::move(map))),
      label_(std::move(label)) {}

Point DynamicalSystem::step(const Point& x) const {
  space_.require(x, "step");
  Point y = (*map_)(x);
  if (!y.is_finite()) {
    throw NonfiniteStateError(label_ + ": step produced a nonfinite state from (" +
                              x.to_string() + ")");
  }
  space_.require(y, "step result");
  return y;
}

Orbit orbit(const DynamicalSystem& system, const Point& x0, std::size_t n) {
  if (n == 0) throw ParameterError("orbit length must be >= 1");
  if (n > kMaxOrbitLength) {
    throw ResourceLimitError("orbit length " + std::to_string(n) + " exceeds cap " +
                             std::to_string(kMaxOrbitLength));
  }
  system.space().require(x0, "orbit");
  Orbit result{x0, {}};
  result.points.reserve(n);
  result.points.push_back(x0);
  for (std::size_t i = 1; i < n; ++i) {
    result.points.push_back(system.advance(result.points.back()));
  }
  return result;
}

DynamicalSystem doubling_map() {
  return DynamicalSystem(
      StateSpace::circle(),
      [](const Point& x) {
        if (const auto& r = x.exact_value()) return Point::exact(r->doubled());
        // Exact on doubles: 2x and 2x - floor(2x) incur no rounding.
        const double twice = 2.0 * x[0];
        return Point::scalar(twice - std::floor(twice));
      },
      "doubling");
}

namespace {

double rotate(double x, double alpha) {
  double y = x + alpha;
  y -= std::floor(y);
  // x + alpha can round up to exactly 1.0.
  return y >= 1.0 ? 0.0 : y;
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, const std::string& context) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad number '" + std::string(text) + "' in " + context,
                     static_cast<std::size_t>(ptr - text.data()));
  }
  return value;
}

}  // namespace

DynamicalSystem rotation_map(double alpha) {
  const double a = alpha - std::floor(alpha);
  return DynamicalSystem(
      StateSpace::circle(),
      [a](const Point& x) { return Point::scalar(rotate(x[0], a)); },
      "rotation:" + format_real(a));
}

DynamicalSystem rotation_map(const Rational& alpha) {
  const double a = alpha.to_double();
  return DynamicalSystem(
      StateSpace::circle(),
      [alpha, a](const Point& x) {
        if (const auto& r = x.exact_value()) {
          if (auto sum = r->plus(alpha)) return Point::exact(*sum);
        }
        return Point::scalar(rotate(x[0], a));
      },
      "rotation:" + std::to_string(alpha.num()) + "/" + std::to_string(alpha.den()));
}

DynamicalSystem interval_halving_map() {
  return DynamicalSystem(
      StateSpace::interval(0.0, 1.0),
      [](const Point& x) { return Point::scalar(0.5 * x[0]); }, "interval-halving");
}

VectorField may_leonard_field(double alpha, double beta) {
  VectorField field;
  field.form = VectorField::Form::per_capita;
  field.rhs = [alpha, beta](const std::array<double, 3>& x) {
    return std::array<double, 3>{1.0 - x[0] - alpha * x[1] - beta * x[2],
                                 1.0 - x[1] - alpha * x[2] - beta * x[0],
                                 1.0 - x[2] - alpha * x[0] - beta * x[1]};
  };
  return field;
}

DynamicalSystem system_from_name(const std::string& name) {
  if (name == "doubling") return doubling_map();
  if (name == "interval-halving") return interval_halving_map();
  const auto colon = name.find(':');
  const std::string head = name.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "rotation" && colon != std::string::npos) {
    if (args == "golden") return rotation_map((std::sqrt(5.0) - 1.0) / 2.0);
    if (auto exact = parse_rational(args)) return rotation_map(*exact);
    return rotation_map(parse_number(args, name));
  }
  if (head == "may-leonard" && colon != std::string::npos) {
    std::vector<double> values;
    std::size_t begin = 0;
    for (;;) {
      const auto comma = args.find(',', begin);
      values.push_back(parse_number(
          std::string_view(args).substr(begin, comma == std::string::npos ? comma : comma - begin),
          name));
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
    if (values.size() != 3) {
      throw ParseError("may-leonard expects <alpha>,<beta>,<tau>", colon + 1);
    }
    const double alpha = values[0];
    const double beta = values[1];
    const double tau = values[2];
    if (!(alpha + beta > 2.0 && alpha < 1.0 && 1.0 < beta)) {
      throw ParameterError("may-leonard requires alpha + beta > 2 and alpha < 1 < beta");
    }
    return flow_time_tau_map(StateSpace::simplex3(), may_leonard_field(alpha, beta), tau, 10,
                             "may-leonard:" + format_real(alpha) + "," + format_real(beta) +
                                 "," + format_real(tau));
  }
  throw UnknownNameError("unknown system '" + name +
                         "'; available: doubling, rotation:<alpha>, interval-halving, "
                         "may-leonard:<alpha>,<beta>,<tau>");
}

}  // namespace optstate
