#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "optstate/point.hpp"
#include "optstate/space.hpp"

namespace optstate {

using PointMap = std::function<Point(const Point&)>;

/// A continuous self-map f: M -> M on a compact state space.
///
/// Immutable after construction and safe to share between threads; the map
/// is required to be a pure function of its argument.
class DynamicalSystem {
 public:
  DynamicalSystem(StateSpace space, PointMap map, std::string label);

  const StateSpace& space() const noexcept { return space_; }
  const std::string& label() const noexcept { return label_; }

  /// f(x) with membership checks on the argument and the result.
  Point step(const Point& x) const;

  /// f(x) without the argument check. Hot loops use this after validating
  /// the starting point once.
  Point advance(const Point& x) const { return (*map_)(x); }

 private:
  StateSpace space_;
  std::shared_ptr<const PointMap> map_;
  std::string label_;
};

struct Orbit {
  Point x0;
  std::vector<Point> points;  // x0, f(x0), ..., f^{n-1}(x0)

  std::size_t size() const noexcept { return points.size(); }
};

/// Largest orbit that orbit() will materialize.
inline constexpr std::size_t kMaxOrbitLength = 20'000'000;

/// First n points of the orbit of x0 (n >= 1).
Orbit orbit(const DynamicalSystem& system, const Point& x0, std::size_t n);

/// x -> 2x mod 1 on the circle; exact on rational points.
DynamicalSystem doubling_map();

/// x -> x + alpha mod 1; exact when x and alpha are both rational.
DynamicalSystem rotation_map(double alpha);
DynamicalSystem rotation_map(const Rational& alpha);

/// x -> x / 2 on [0, 1].
DynamicalSystem interval_halving_map();

/// Right-hand side of an ODE on a state space of dimension <= 3.
///
/// `ambient` fields give dx/dt directly. `per_capita` fields give F with
/// dx_i/dt = x_i F_i(x); on simplex3 they are integrated in log-coordinates,
/// so orbits that linger near the boundary never underflow onto it.
struct VectorField {
  enum class Form { ambient, per_capita };

  Form form = Form::ambient;
  std::function<std::array<double, 3>(const std::array<double, 3>&)> rhs;
};

/// Time-tau map of `field`: `substeps` classical RK4 steps of size
/// tau/substeps, each followed by projection back onto the space (wrap on
/// periodic spaces, clamp+renormalize or log-sum-exp renormalization on the
/// simplex). Escaping a bounded interval/ball raises DomainError.
DynamicalSystem flow_time_tau_map(const StateSpace& space, VectorField field,
                                  double tau, std::size_t substeps,
                                  std::string label);

/// Per-capita May-Leonard rates F_i = 1 - x_i - alpha x_{i+1} - beta x_{i-1}.
VectorField may_leonard_field(double alpha, double beta);

/// Builds a system from its registry name: "doubling", "rotation:<alpha>",
/// "interval-halving", "may-leonard:<alpha>,<beta>,<tau>". Rotation accepts
/// "golden" for (sqrt(5)-1)/2.
DynamicalSystem system_from_name(const std::string& name);

}  // namespace optstate
