#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "optstate/dynamics.hpp"
#include "optstate/measures.hpp"

namespace optstate {

using MatrixFunction = std::function<Eigen::MatrixXd(const Point&)>;

enum class PotentialKind { additive, cocycle, truncated, tabulated };

std::string to_string(PotentialKind kind);

/// Incremental evaluation of phi_n along one orbit. After k calls to push()
/// with x, f(x), ..., f^{k-1}(x), value() is phi_k(x); value() is 0 before
/// the first push.
class PotentialAccumulator {
 public:
  virtual ~PotentialAccumulator() = default;

  virtual void push(const Point& x) = 0;
  virtual double value() const = 0;
  virtual std::size_t count() const noexcept = 0;
};

namespace detail {
class PotentialImpl;
}

/// A subadditive sequence {phi_n} of continuous functions,
/// phi_{n+m}(x) <= phi_n(x) + phi_m(f^n x). Cheap to copy; immutable.
class SubadditivePotential {
 public:
  PotentialKind kind() const noexcept;
  const std::string& label() const noexcept { return label_; }
  std::unique_ptr<PotentialAccumulator> accumulator() const;

  explicit SubadditivePotential(std::shared_ptr<const detail::PotentialImpl> impl,
                                std::string label);

 private:
  std::shared_ptr<const detail::PotentialImpl> impl_;
  std::string label_;
};

/// phi_n(x) = sum_{i<n} g(f^i x).
SubadditivePotential birkhoff_potential(ScalarFunction g, std::string label);

/// {-phi_n}. Only additive potentials stay subadditive under negation, so
/// anything else throws ParameterError.
SubadditivePotential negate(const SubadditivePotential& phi);

/// phi_n(x) = log || A(f^{n-1}x) ... A(x) ||_2. The running product is
/// divided by its norm every `renormalize_every` steps and the logs are
/// accumulated. Throws SingularCollapseError if the product norm hits 0 or
/// overflows between renormalizations.
SubadditivePotential cocycle_potential(MatrixFunction A, int dim, std::string label,
                                       std::size_t renormalize_every = 1);

/// psi_n(x) = max(-n, phi_n(x)).
SubadditivePotential truncate(const SubadditivePotential& phi);

/// phi_n(x) = n * rates[n-1], constant in x; n beyond the table throws.
SubadditivePotential tabulated_potential(std::vector<double> rates, std::string label);

/// Operator 2-norm: singular values for dim <= 3, power iteration on A^T A
/// (100 iterations, relative tolerance 1e-12) above that.
double operator_norm(const Eigen::MatrixXd& a);

/// phi_n(x); phi_0 = 0.
double evaluate(const SubadditivePotential& phi, const DynamicalSystem& system, const Point& x,
                std::size_t n);

/// phi_n(x) at every horizon in `horizons` (increasing) from one orbit pass.
std::vector<double> evaluate_series(const SubadditivePotential& phi, const DynamicalSystem& system,
                                    const Point& x, const std::vector<std::size_t>& horizons);

// ---------------------------------------------------------------------------
// Growth rates

struct GrowthRateReport {
  Point x;
  std::size_t horizon = 0;
  std::vector<std::pair<std::size_t, double>> series;  // (n, phi_n(x)/n)
  std::size_t window_begin = 0;                        // ceil(N/2)
  double largest_rate = 0.0;   // max of the series over [ceil(N/2), N]
  double smallest_rate = 0.0;  // min over the same window
  bool optimal = false;        // largest_rate < 0
};

/// Finite-horizon estimates of limsup and liminf of phi_n(x)/n. An empty
/// schedule means checkpoint_schedule(N). Requires N >= 200.
GrowthRateReport growth_report(const SubadditivePotential& phi, const DynamicalSystem& system,
                               const Point& x, std::size_t horizon,
                               std::vector<std::size_t> schedule = {});

// ---------------------------------------------------------------------------
// Verification suites

struct SubadditivityReport {
  std::size_t samples = 0;
  std::size_t n_max = 0;
  double tolerance = 0.0;
  double max_violation = 0.0;  // max phi_{n+m}(x) - phi_n(x) - phi_m(f^n x)
  double min_violation = 0.0;
  Point worst_x;
  std::size_t worst_n = 0;
  std::size_t worst_m = 0;
  bool pass = false;
};

SubadditivityReport check_subadditivity(const SubadditivePotential& phi,
                                        const DynamicalSystem& system, std::size_t sample_count,
                                        std::size_t n_max, std::uint64_t seed,
                                        double tolerance = 1e-9);

struct LemmaSubReport {
  std::size_t block_length = 0;
  double c1 = 0.0;  // estimated max_{1<=j<=2l} sup |phi_j|
  double c = 0.0;   // 4 c1
  std::size_t checked = 0;
  double max_violation = 0.0;  // max phi_n(x) - C - (1/l) sum_{i<n} phi_l(f^i x)
  Point worst_x;
  std::size_t worst_n = 0;
  bool pass = false;
};

/// Checks phi_n(x) <= 4 C1 + sum_{i<n} phi_l(f^i x) / l for every point and
/// every n in n_list. C1 is estimated over 10^3 low-discrepancy points plus
/// the sample points, so it can only underestimate the true sup.
LemmaSubReport lemma_sub_check(const SubadditivePotential& phi, const DynamicalSystem& system,
                               std::size_t block_length, const std::vector<Point>& points,
                               const std::vector<std::size_t>& n_list, double tolerance = 1e-6);

// ---------------------------------------------------------------------------
// Spec strings

/// Named building blocks for potential specs.
struct PotentialRegistry {
  std::map<std::string, ScalarFunction> functions;
  std::map<std::string, std::pair<MatrixFunction, int>> matrix_families;
};

/// Parses `birkhoff:<g-name>`, `birkhoff:const:<c>`, `cocycle:<family>`,
/// `tabulated:<r1>,<r2>,...` (phi_n = n r_n), `neg:<spec>` and `trunc:<spec>`.
SubadditivePotential parse_potential(const std::string& spec, const PotentialRegistry& registry);

}  // namespace optstate
