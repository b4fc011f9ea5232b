#include "optstate/rational.hpp"

#include <cctype>
#include <numeric>
#include <string>

#include "optstate/errors.hpp"

namespace optstate {

namespace {

constexpr std::uint64_t k53Bits = std::uint64_t{1} << 53;

std::optional<std::uint64_t> parse_digits(std::string_view text) {
  if (text.empty() || text.size() > 19) return std::nullopt;
  std::uint64_t value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  num %= den;
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (den_ > kMaxDenominator) {
    throw ParameterError("rational denominator " + std::to_string(den_) +
                         " exceeds 2^62");
  }
}

double Rational::to_double() const noexcept {
  if (num_ < k53Bits && den_ < k53Bits) {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  return static_cast<double>(static_cast<long double>(num_) /
                             static_cast<long double>(den_));
}

Rational Rational::doubled() const noexcept {
  // With den even, 2p/q = p/(q/2) and gcd(p, q/2) = 1 still holds.
  if ((den_ & 1U) == 0) {
    const std::uint64_t half = den_ >> 1;
    return Rational(num_ >= half ? num_ - half : num_, half, Unchecked{});
  }
  std::uint64_t twice = num_ << 1;
  if (twice >= den_) twice -= den_;
  return Rational(twice, den_, Unchecked{});
}

std::optional<Rational> Rational::plus(const Rational& a) const noexcept {
  __extension__ using u128 = unsigned __int128;
  const u128 den = static_cast<u128>(den_) * a.den_;
  u128 num = static_cast<u128>(num_) * a.den_ + static_cast<u128>(a.num_) * den_;
  num %= den;
  u128 x = num;
  u128 y = den;
  while (y != 0) {
    const u128 t = x % y;
    x = y;
    y = t;
  }
  const u128 g = x == 0 ? 1 : x;
  const u128 reduced_den = den / g;
  if (reduced_den > kMaxDenominator) return std::nullopt;
  return Rational(static_cast<std::uint64_t>(num / g),
                  static_cast<std::uint64_t>(reduced_den), Unchecked{});
}

std::optional<Rational> parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = parse_digits(text.substr(0, slash));
    const auto q = parse_digits(text.substr(slash + 1));
    if (!p || !q || *q == 0 || *p >= *q) return std::nullopt;
    const std::uint64_t g = std::gcd(*p, *q);
    if (*q / g > Rational::kMaxDenominator) return std::nullopt;
    return Rational(*p, *q);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty()) {
    const auto w = parse_digits(whole);
    if (!w || *w != 0) return std::nullopt;
  }
  if (dot != std::string_view::npos && frac.empty()) return std::nullopt;
  if (frac.size() > 18) return std::nullopt;
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::uint64_t num = 0;
  if (!frac.empty()) {
    const auto f = parse_digits(frac);
    if (!f) return std::nullopt;
    num = *f;
  }
  return Rational(num, den);
}

}  // namespace optstate
