#include <cmath>
#include <numbers>

#include "optstate/errors.hpp"
#include "optstate/measures.hpp"

namespace optstate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class CircleTrigFamily final : public TestFamily {
 public:
  explicit CircleTrigFamily(std::size_t harmonics) : harmonics_(harmonics) {}

  std::size_t size() const noexcept override { return 2 * harmonics_; }

  void evaluate(const Point& x, std::span<double> out) const override {
    const double c1 = std::cos(kTwoPi * x[0]);
    const double s1 = std::sin(kTwoPi * x[0]);
    double c = c1;
    double s = s1;
    for (std::size_t j = 0; j < harmonics_; ++j) {
      out[2 * j] = 0.5 * (1.0 + s);
      out[2 * j + 1] = 0.5 * (1.0 + c);
      // e^{2 pi i (j+1) x} from e^{2 pi i j x} by one complex multiply.
      const double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
    }
  }

  std::string description() const override {
    return "circle trig (1+sin)/2,(1+cos)/2 harmonics 1.." + std::to_string(harmonics_);
  }

  double lipschitz_bound() const noexcept override {
    return std::numbers::pi * static_cast<double>(harmonics_);
  }

 private:
  std::size_t harmonics_;
};

class IntervalCosineFamily final : public TestFamily {
 public:
  IntervalCosineFamily(double lo, double hi, std::size_t count)
      : lo_(lo), hi_(hi), count_(count) {}

  std::size_t size() const noexcept override { return count_; }

  void evaluate(const Point& x, std::span<double> out) const override {
    const double t = (x[0] - lo_) / (hi_ - lo_);
    for (std::size_t k = 0; k < count_; ++k) {
      out[k] = 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(k + 1) * t));
    }
  }

  std::string description() const override {
    return "interval cosines (1+cos(pi k t))/2, k = 1.." + std::to_string(count_);
  }

  double lipschitz_bound() const noexcept override {
    return 0.5 * std::numbers::pi * static_cast<double>(count_) / (hi_ - lo_);
  }

 private:
  double lo_;
  double hi_;
  std::size_t count_;
};

// Trig factor of frequency `freq`: 0 -> 1, otherwise cos or sin.
struct TrigFactor {
  std::size_t freq = 0;
  bool sine = false;

  double operator()(double x) const {
    if (freq == 0) return 1.0;
    const double arg = kTwoPi * static_cast<double>(freq) * x;
    return sine ? std::sin(arg) : std::cos(arg);
  }
};

class TorusTensorFamily final : public TestFamily {
 public:
  explicit TorusTensorFamily(std::size_t max_degree) : max_degree_(max_degree) {
    for (std::size_t degree = 1; degree <= max_degree; ++degree) {
      for (std::size_t i = 0; i <= degree; ++i) {
        const std::size_t j = degree - i;
        for (const bool sx : {false, true}) {
          if (i == 0 && sx) continue;
          for (const bool sy : {false, true}) {
            if (j == 0 && sy) continue;
            members_.push_back({TrigFactor{i, sx}, TrigFactor{j, sy}});
          }
        }
      }
    }
  }

  std::size_t size() const noexcept override { return members_.size(); }

  void evaluate(const Point& x, std::span<double> out) const override {
    for (std::size_t k = 0; k < members_.size(); ++k) {
      out[k] = 0.5 * (1.0 + members_[k].first(x[0]) * members_[k].second(x[1]));
    }
  }

  std::string description() const override {
    return "torus tensor trig products, total degree 1.." + std::to_string(max_degree_);
  }

  double lipschitz_bound() const noexcept override {
    return std::numbers::pi * static_cast<double>(max_degree_);
  }

 private:
  std::size_t max_degree_;
  std::vector<std::pair<TrigFactor, TrigFactor>> members_;
};

class BumpFamily final : public TestFamily {
 public:
  BumpFamily(StateSpace space, std::vector<Point> centers, double lipschitz)
      : space_(std::move(space)), centers_(std::move(centers)), lipschitz_(lipschitz) {}

  std::size_t size() const noexcept override { return centers_.size(); }

  void evaluate(const Point& x, std::span<double> out) const override {
    for (std::size_t k = 0; k < centers_.size(); ++k) {
      out[k] = std::max(0.0, 1.0 - lipschitz_ * space_.distance(x, centers_[k]));
    }
  }

  std::string description() const override {
    return std::to_string(centers_.size()) + " radial bumps, Lipschitz " +
           std::to_string(lipschitz_);
  }

  double lipschitz_bound() const noexcept override { return lipschitz_; }

 private:
  StateSpace space_;
  std::vector<Point> centers_;
  double lipschitz_;
};

// Vertices first so the heaviest weights separate the corners, then the
// barycenter, the 9 non-vertex edge points and 3 interior points of the
// quarter lattice.
std::vector<Point> simplex_bump_centers() {
  std::vector<Point> centers = {Point::barycentric(1, 0, 0), Point::barycentric(0, 1, 0),
                                Point::barycentric(0, 0, 1),
                                Point::barycentric(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)};
  const int edge[9][3] = {{3, 1, 0}, {0, 3, 1}, {1, 0, 3}, {2, 2, 0}, {0, 2, 2},
                          {2, 0, 2}, {1, 3, 0}, {0, 1, 3}, {3, 0, 1}};
  for (const auto& e : edge) {
    centers.push_back(Point::barycentric(e[0] / 4.0, e[1] / 4.0, e[2] / 4.0));
  }
  const int interior[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  for (const auto& e : interior) {
    centers.push_back(Point::barycentric(e[0] / 4.0, e[1] / 4.0, e[2] / 4.0));
  }
  return centers;
}

}  // namespace

std::shared_ptr<const TestFamily> circle_trig_family(std::size_t harmonics) {
  return std::make_shared<CircleTrigFamily>(harmonics);
}

std::shared_ptr<const TestFamily> interval_cosine_family(double lo, double hi, std::size_t count) {
  return std::make_shared<IntervalCosineFamily>(lo, hi, count);
}

std::shared_ptr<const TestFamily> torus_tensor_family(std::size_t max_degree) {
  return std::make_shared<TorusTensorFamily>(max_degree);
}

std::shared_ptr<const TestFamily> bump_family(const StateSpace& space, std::vector<Point> centers,
                                              double lipschitz) {
  return std::make_shared<BumpFamily>(space, std::move(centers), lipschitz);
}

WeakStarMetric::WeakStarMetric(StateSpace space, std::shared_ptr<const TestFamily> family)
    : space_(std::move(space)), family_(std::move(family)) {
  if (!family_ || family_->size() == 0) throw ParameterError("empty test family");
  weights_.resize(family_->size());
  double w = 1.0;
  for (double& weight : weights_) {
    w *= 0.5;
    weight = w;
  }
}

WeakStarMetric WeakStarMetric::default_for(const StateSpace& space) {
  switch (space.kind()) {
    case SpaceKind::circle: return {space, circle_trig_family(8)};
    case SpaceKind::interval: {
      const auto bounds = space.parameters();
      return {space, interval_cosine_family(bounds[0], bounds[1], 16)};
    }
    case SpaceKind::torus2: return {space, torus_tensor_family(4)};
    case SpaceKind::simplex3: return {space, bump_family(space, simplex_bump_centers(), 2.0)};
    case SpaceKind::planar_ball: {
      const auto [cx, cy, radius] = space.parameters();
      const double w = radius / 2.0;  // 4x4 lattice over the bounding square
      std::vector<Point> centers;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          centers.push_back(Point::planar(cx + (i - 1.5) * w, cy + (j - 1.5) * w));
        }
      }
      return {space, bump_family(space, std::move(centers), 1.0 / w)};
    }
  }
  throw ParameterError("no default test family for space");
}

double WeakStarMetric::distance(std::span<const double> a, std::span<const double> b) const {
  double total = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) total += weights_[k] * std::fabs(a[k] - b[k]);
  return total;
}

}  // namespace optstate
