#include "optstate/potentials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <Eigen/SVD>

#include "optstate/errors.hpp"

namespace optstate {

namespace detail {

class PotentialImpl {
 public:
  virtual ~PotentialImpl() = default;
  virtual PotentialKind kind() const noexcept = 0;
  virtual std::unique_ptr<PotentialAccumulator> make_accumulator() const = 0;
};

}  // namespace detail

namespace {

using detail::PotentialImpl;

class BirkhoffAccumulator final : public PotentialAccumulator {
 public:
  explicit BirkhoffAccumulator(const ScalarFunction& g) : g_(&g) {}

  void push(const Point& x) override {
    sum_ += (*g_)(x);
    ++count_;
  }
  double value() const override { return sum_; }
  std::size_t count() const noexcept override { return count_; }

 private:
  const ScalarFunction* g_;
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

class BirkhoffImpl final : public PotentialImpl {
 public:
  explicit BirkhoffImpl(ScalarFunction g) : g_(std::move(g)) {}

  PotentialKind kind() const noexcept override { return PotentialKind::additive; }
  std::unique_ptr<PotentialAccumulator> make_accumulator() const override {
    return std::make_unique<BirkhoffAccumulator>(g_);
  }

 private:
  ScalarFunction g_;
};

class NegatedAccumulator final : public PotentialAccumulator {
 public:
  explicit NegatedAccumulator(std::unique_ptr<PotentialAccumulator> inner)
      : inner_(std::move(inner)) {}

  void push(const Point& x) override { inner_->push(x); }
  double value() const override { return -inner_->value(); }
  std::size_t count() const noexcept override { return inner_->count(); }

 private:
  std::unique_ptr<PotentialAccumulator> inner_;
};

class NegatedImpl final : public PotentialImpl {
 public:
  explicit NegatedImpl(SubadditivePotential inner) : inner_(std::move(inner)) {}

  PotentialKind kind() const noexcept override { return PotentialKind::additive; }
  std::unique_ptr<PotentialAccumulator> make_accumulator() const override {
    return std::make_unique<NegatedAccumulator>(inner_.accumulator());
  }

 private:
  SubadditivePotential inner_;
};

class CocycleAccumulator final : public PotentialAccumulator {
 public:
  CocycleAccumulator(const MatrixFunction& a, int dim, std::size_t renormalize_every)
      : a_(&a),
        dim_(dim),
        every_(renormalize_every),
        product_(Eigen::MatrixXd::Identity(dim, dim)) {}

  void push(const Point& x) override {
    const Eigen::MatrixXd factor = (*a_)(x);
    if (factor.rows() != dim_ || factor.cols() != dim_) {
      throw ParameterError("cocycle matrix has the wrong shape");
    }
    if (!factor.allFinite()) throw NonfiniteStateError("cocycle matrix has nonfinite entries");
    product_ = factor * product_;
    ++count_;
    if (++since_renormalization_ == every_) {
      const double norm = checked_norm();
      log_scale_ += std::log(norm);
      product_ /= norm;
      since_renormalization_ = 0;
    }
  }

  double value() const override {
    if (count_ == 0) return 0.0;
    return log_scale_ + std::log(checked_norm());
  }

  std::size_t count() const noexcept override { return count_; }

 private:
  double checked_norm() const {
    const double norm = operator_norm(product_);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw SingularCollapseError("cocycle product norm collapsed to " + std::to_string(norm) +
                                  " after " + std::to_string(count_) + " factors");
    }
    return norm;
  }

  const MatrixFunction* a_;
  int dim_;
  std::size_t every_;
  Eigen::MatrixXd product_;
  double log_scale_ = 0.0;
  std::size_t since_renormalization_ = 0;
  std::size_t count_ = 0;
};

class CocycleImpl final : public PotentialImpl {
 public:
  CocycleImpl(MatrixFunction a, int dim, std::size_t every)
      : a_(std::move(a)), dim_(dim), every_(every) {}

  PotentialKind kind() const noexcept override { return PotentialKind::cocycle; }
  std::unique_ptr<PotentialAccumulator> make_accumulator() const override {
    return std::make_unique<CocycleAccumulator>(a_, dim_, every_);
  }

 private:
  MatrixFunction a_;
  int dim_;
  std::size_t every_;
};

class TruncatedAccumulator final : public PotentialAccumulator {
 public:
  explicit TruncatedAccumulator(std::unique_ptr<PotentialAccumulator> inner)
      : inner_(std::move(inner)) {}

  void push(const Point& x) override { inner_->push(x); }
  double value() const override {
    return std::max(-static_cast<double>(inner_->count()), inner_->value());
  }
  std::size_t count() const noexcept override { return inner_->count(); }

 private:
  std::unique_ptr<PotentialAccumulator> inner_;
};

class TruncatedImpl final : public PotentialImpl {
 public:
  explicit TruncatedImpl(SubadditivePotential inner) : inner_(std::move(inner)) {}

  PotentialKind kind() const noexcept override { return PotentialKind::truncated; }
  std::unique_ptr<PotentialAccumulator> make_accumulator() const override {
    return std::make_unique<TruncatedAccumulator>(inner_.accumulator());
  }

 private:
  SubadditivePotential inner_;
};

class TabulatedAccumulator final : public PotentialAccumulator {
 public:
  explicit TabulatedAccumulator(const std::vector<double>& rates) : rates_(&rates) {}

  void push(const Point&) override {
    if (count_ == rates_->size()) {
      throw ParameterError("tabulated potential has no entry for n = " +
                           std::to_string(count_ + 1));
    }
    ++count_;
  }
  double value() const override {
    return count_ == 0 ? 0.0 : static_cast<double>(count_) * (*rates_)[count_ - 1];
  }
  std::size_t count() const noexcept override { return count_; }

 private:
  const std::vector<double>* rates_;
  std::size_t count_ = 0;
};

class TabulatedImpl final : public PotentialImpl {
 public:
  explicit TabulatedImpl(std::vector<double> rates) : rates_(std::move(rates)) {}

  PotentialKind kind() const noexcept override { return PotentialKind::tabulated; }
  std::unique_ptr<PotentialAccumulator> make_accumulator() const override {
    return std::make_unique<TabulatedAccumulator>(rates_);
  }

 private:
  std::vector<double> rates_;
};

}  // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::additive: return "additive";
    case PotentialKind::cocycle: return "cocycle";
    case PotentialKind::truncated: return "truncated";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "unknown";
}

SubadditivePotential::SubadditivePotential(std::shared_ptr<const detail::PotentialImpl> impl,
                                           std::string label)
    : impl_(std::move(impl)), label_(std::move(label)) {}

PotentialKind SubadditivePotential::kind() const noexcept { return impl_->kind(); }

std::unique_ptr<PotentialAccumulator> SubadditivePotential::accumulator() const {
  return impl_->make_accumulator();
}

SubadditivePotential birkhoff_potential(ScalarFunction g, std::string label) {
  if (!g) throw ParameterError("birkhoff potential needs a function");
  return SubadditivePotential(std::make_shared<BirkhoffImpl>(std::move(g)), std::move(label));
}

SubadditivePotential negate(const SubadditivePotential& phi) {
  if (phi.kind() != PotentialKind::additive) {
    throw ParameterError("negation of the " + to_string(phi.kind()) + " potential '" +
                         phi.label() + "' is not subadditive");
  }
  return SubadditivePotential(std::make_shared<NegatedImpl>(phi), "neg:" + phi.label());
}

SubadditivePotential cocycle_potential(MatrixFunction a, int dim, std::string label,
                                       std::size_t renormalize_every) {
  if (!a) throw ParameterError("cocycle potential needs a matrix function");
  if (dim < 1) throw ParameterError("cocycle dimension must be >= 1");
  if (renormalize_every == 0) throw ParameterError("renormalization interval must be >= 1");
  return SubadditivePotential(std::make_shared<CocycleImpl>(std::move(a), dim, renormalize_every),
                              std::move(label));
}

SubadditivePotential truncate(const SubadditivePotential& phi) {
  return SubadditivePotential(std::make_shared<TruncatedImpl>(phi), "trunc:" + phi.label());
}

SubadditivePotential tabulated_potential(std::vector<double> rates, std::string label) {
  return SubadditivePotential(std::make_shared<TabulatedImpl>(std::move(rates)), std::move(label));
}

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.rows() <= 3 && a.cols() <= 3) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues()(0);
  }
  const Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(gram.cols()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd w = gram * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    const bool converged = std::fabs(next - lambda) <= 1e-12 * next;
    lambda = next;
    if (converged) break;
  }
  return std::sqrt(lambda);
}

double evaluate(const SubadditivePotential& phi, const DynamicalSystem& system, const Point& x,
                std::size_t n) {
  system.space().require(x, "evaluate");
  auto acc = phi.accumulator();
  Point current = x;
  for (std::size_t i = 0; i < n; ++i) {
    acc->push(current);
    if (i + 1 < n) current = system.advance(current);
  }
  return acc->value();
}

std::vector<double> evaluate_series(const SubadditivePotential& phi, const DynamicalSystem& system,
                                    const Point& x, const std::vector<std::size_t>& horizons) {
  if (!std::is_sorted(horizons.begin(), horizons.end())) {
    throw ParameterError("series horizons must be increasing");
  }
  system.space().require(x, "evaluate_series");
  std::vector<double> values;
  values.reserve(horizons.size());
  auto acc = phi.accumulator();
  Point current = x;
  std::size_t next = 0;
  while (next < horizons.size() && horizons[next] == 0) {
    values.push_back(0.0);
    ++next;
  }
  const std::size_t last = horizons.empty() ? 0 : horizons.back();
  for (std::size_t n = 1; n <= last; ++n) {
    acc->push(current);
    while (next < horizons.size() && horizons[next] == n) {
      values.push_back(acc->value());
      ++next;
    }
    if (n < last) current = system.advance(current);
  }
  return values;
}

GrowthRateReport growth_report(const SubadditivePotential& phi, const DynamicalSystem& system,
                               const Point& x, std::size_t horizon,
                               std::vector<std::size_t> schedule) {
  if (horizon < 200) throw ParameterError("growth report horizon must be >= 200");
  if (schedule.empty()) schedule = checkpoint_schedule(horizon);
  if (schedule.back() != horizon) {
    if (schedule.back() > horizon) throw ParameterError("schedule extends past the horizon");
    schedule.push_back(horizon);
  }
  const std::vector<double> values = evaluate_series(phi, system, x, schedule);

  GrowthRateReport report;
  report.x = x;
  report.horizon = horizon;
  report.window_begin = (horizon + 1) / 2;
  report.largest_rate = -HUGE_VAL;
  report.smallest_rate = HUGE_VAL;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double rate = values[i] / static_cast<double>(schedule[i]);
    if (!std::isfinite(rate)) {
      throw NonfiniteStateError("growth series is nonfinite at n = " + std::to_string(schedule[i]));
    }
    report.series.emplace_back(schedule[i], rate);
    if (schedule[i] >= report.window_begin) {
      report.largest_rate = std::max(report.largest_rate, rate);
      report.smallest_rate = std::min(report.smallest_rate, rate);
    }
  }
  report.optimal = report.largest_rate < 0.0;
  return report;
}

namespace {

double parse_spec_number(const std::string& spec, std::size_t begin, std::size_t end) {
  double v = 0.0;
  const char* first = spec.data() + begin;
  const char* last = spec.data() + end;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (first == last || ec != std::errc{} || ptr != last) {
    throw ParseError("bad number in potential spec '" + spec + "'", begin);
  }
  return v;
}

}  // namespace

SubadditivePotential parse_potential(const std::string& spec, const PotentialRegistry& registry) {
  if (spec.starts_with("neg:")) return negate(parse_potential(spec.substr(4), registry));
  if (spec.starts_with("trunc:")) return truncate(parse_potential(spec.substr(6), registry));
  if (spec.starts_with("birkhoff:const:")) {
    const double c = parse_spec_number(spec, 15, spec.size());
    return birkhoff_potential([c](const Point&) { return c; }, spec);
  }
  if (spec.starts_with("tabulated:")) {
    std::vector<double> rates;
    std::size_t begin = 10;
    while (true) {
      const std::size_t comma = std::min(spec.find(',', begin), spec.size());
      rates.push_back(parse_spec_number(spec, begin, comma));
      if (comma == spec.size()) break;
      begin = comma + 1;
    }
    return tabulated_potential(std::move(rates), spec);
  }
  if (spec.starts_with("birkhoff:")) {
    const std::string name = spec.substr(9);
    const auto it = registry.functions.find(name);
    if (it == registry.functions.end()) {
      std::string names;
      for (const auto& [key, unused] : registry.functions) names += " " + key;
      throw UnknownNameError("unknown function '" + name + "'; available:" + names +
                             " const:<c>");
    }
    return birkhoff_potential(it->second, spec);
  }
  if (spec.starts_with("cocycle:")) {
    const std::string name = spec.substr(8);
    const auto it = registry.matrix_families.find(name);
    if (it == registry.matrix_families.end()) {
      std::string names;
      for (const auto& [key, unused] : registry.matrix_families) names += " " + key;
      throw UnknownNameError("unknown matrix family '" + name + "'; available:" + names);
    }
    return cocycle_potential(it->second.first, it->second.second, spec);
  }
  throw ParseError("potential spec must start with birkhoff:, cocycle:, tabulated:, neg: or trunc: ('" +
                       spec + "')",
                   0);
}

}  // namespace optstate
