#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tpkit {

/// Exact rational number with a canonical representation: the denominator is
/// positive and coprime with the numerator. Arithmetic is checked and throws
/// std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  bool is_zero() const { return num_ == 0; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  /// "p/q", or "p" when the value is an integer.
  std::string to_string() const;

  /// Approximation for rendering only; never used in the decision procedures.
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Accepts "n", "-n", "p/q" and plain decimals such as "3.9" (read exactly
  /// as 39/10). Anything else, including expressions and exponents, throws
  /// std::invalid_argument.
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(__int128 numerator, __int128 denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

Rational midpoint(const Rational& a, const Rational& b);

}  // namespace tpkit
