#include <cmath>
#include <limits>

#include "optstate/dynamics.hpp"
#include "optstate/errors.hpp"

namespace optstate {

namespace {

using State = std::array<double, 3>;

State axpy(const State& x, double h, const State& k) {
  return {x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]};
}

template <typename Rhs>
State rk4_step(const State& x, double h, const Rhs& rhs) {
  const State k1 = rhs(x);
  const State k2 = rhs(axpy(x, 0.5 * h, k1));
  const State k3 = rhs(axpy(x, 0.5 * h, k2));
  const State k4 = rhs(axpy(x, h, k3));
  State out;
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

void require_finite(const State& x, std::size_t dim, const std::string& label) {
  for (std::size_t i = 0; i < dim; ++i) {
    if (std::isnan(x[i]) || x[i] == HUGE_VAL) {
      throw NonfiniteStateError(label + ": integration produced a nonfinite state");
    }
  }
}

// Log-sum-exp normalization so that sum_i exp(u_i) = 1.
void normalize_log(State& u) {
  const double top = std::max({u[0], u[1], u[2]});
  if (top == -std::numeric_limits<double>::infinity()) {
    throw NonfiniteStateError("simplex point lost all mass");
  }
  const double lse = top + std::log(std::exp(u[0] - top) + std::exp(u[1] - top) +
                                    std::exp(u[2] - top));
  for (double& v : u) v -= lse;
}

void project_simplex(State& x) {
  for (double& v : x) v = std::max(v, 0.0);
  const double sum = x[0] + x[1] + x[2];
  if (!(sum > 0.0)) throw NonfiniteStateError("simplex point lost all mass");
  for (double& v : x) v /= sum;
}

}  // namespace

DynamicalSystem flow_time_tau_map(const StateSpace& space, VectorField field, double tau,
                                  std::size_t substeps, std::string label) {
  if (!(tau > 0.0)) throw ParameterError("flow time tau must be > 0");
  if (substeps == 0) throw ParameterError("flow substeps must be >= 1");
  if (!field.rhs) throw ParameterError("flow field is empty");
  const double h = tau / static_cast<double>(substeps);

  if (field.form == VectorField::Form::per_capita) {
    if (space.kind() != SpaceKind::simplex3) {
      throw ParameterError("per-capita fields are only supported on simplex3");
    }
    auto rhs = std::move(field.rhs);
    return DynamicalSystem(
        space,
        [rhs, h, substeps, label](const Point& p) {
          // du_i/dt = F_i(exp(u)); exp(-inf) = 0 keeps boundary faces invariant.
          const auto log_rhs = [&rhs](const State& u) {
            return rhs(State{std::exp(u[0]), std::exp(u[1]), std::exp(u[2])});
          };
          State u = p.log_coords();
          for (std::size_t s = 0; s < substeps; ++s) {
            u = rk4_step(u, h, log_rhs);
            require_finite(u, 3, label);
            normalize_log(u);
          }
          return Point::from_log(u);
        },
        std::move(label));
  }

  const std::size_t dim = space.dim();
  auto rhs = std::move(field.rhs);
  return DynamicalSystem(
      space,
      [rhs, h, substeps, dim, space, label](const Point& p) {
        State x{};
        for (std::size_t i = 0; i < dim; ++i) x[i] = p[i];
        for (std::size_t s = 0; s < substeps; ++s) {
          x = rk4_step(x, h, rhs);
          for (std::size_t i = dim; i < 3; ++i) x[i] = 0.0;
          require_finite(x, dim, label);
          switch (space.kind()) {
            case SpaceKind::circle: x[0] -= std::floor(x[0]); break;
            case SpaceKind::torus2:
              x[0] -= std::floor(x[0]);
              x[1] -= std::floor(x[1]);
              break;
            case SpaceKind::simplex3: project_simplex(x); break;
            case SpaceKind::interval:
            case SpaceKind::planar_ball: break;
          }
        }
        Point out;
        switch (dim) {
          case 1: out = Point::scalar(x[0]); break;
          case 2: out = Point::planar(x[0], x[1]); break;
          default: out = Point::barycentric(x[0], x[1], x[2]); break;
        }
        // Wrapping can round a tiny negative up to exactly 1.0.
        if (space.kind() == SpaceKind::circle && out[0] >= 1.0) out = Point::scalar(0.0);
        if (!space.contains(out)) {
          throw DomainError(label + ": orbit escaped " + space.name() + " at (" +
                            out.to_string() + ")");
        }
        return out;
      },
      std::move(label));
}

}  // namespace optstate
