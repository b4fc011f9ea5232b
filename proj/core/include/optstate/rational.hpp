#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace optstate {

/// Exact coordinate num/den on [0, 1) used by circle maps that admit exact
/// arithmetic. Always stored reduced with 0 <= num < den <= kMaxDenominator.
class Rational {
 public:
  static constexpr std::uint64_t kMaxDenominator = std::uint64_t{1} << 62;

  /// Reduces num/den modulo 1. Throws ParameterError if den is zero or too
  /// large after reduction.
  Rational(std::uint64_t num, std::uint64_t den);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  /// Deterministic conversion; correctly rounded when both parts fit in 53
  /// bits.
  double to_double() const noexcept;

  /// x -> 2x mod 1. Keeps the representation reduced without a gcd.
  Rational doubled() const noexcept;

  /// x + a mod 1, or nullopt if the reduced denominator would exceed
  /// kMaxDenominator.
  std::optional<Rational> plus(const Rational& a) const noexcept;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  struct Unchecked {};
  Rational(std::uint64_t num, std::uint64_t den, Unchecked) noexcept
      : num_(num), den_(den) {}

  std::uint64_t num_;
  std::uint64_t den_;
};

/// Parses "p/q" or a plain decimal "0.375" as an exact fraction in [0, 1).
/// Returns nullopt for anything else (values >= 1, exponents, signs).
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace optstate
