#include "tpkit/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace tpkit {

namespace {

__int128 wide_gcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

__int128 parse_digits(std::string_view s) {
  __int128 v = 0;
  for (char c : s) {
    v = v * 10 + (c - '0');
    if (v > std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("rational literal out of range");
    }
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(__int128 numerator, __int128 denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const __int128 g = wide_gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  Rational r;
  r.num_ = narrow(numerator);
  r.den_ = narrow(denominator);
  return r;
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational arithmetic overflow");
  }
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_,
                    static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_ - static_cast<__int128>(rhs.num_) * den_,
                    static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(static_cast<__int128>(num_) * rhs.num_, static_cast<__int128>(den_) * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<__int128>(num_) * rhs.den_, static_cast<__int128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
  const __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
  const __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  __int128 numerator = 0;
  __int128 denominator = 1;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = text.substr(0, slash);
    const auto q = text.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) {
      throw std::invalid_argument("malformed rational literal '" + original + "'");
    }
    numerator = parse_digits(p);
    denominator = parse_digits(q);
    if (denominator == 0) {
      throw std::invalid_argument("zero denominator in '" + original + "'");
    }
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) {
      throw std::invalid_argument("malformed decimal literal '" + original + "'");
    }
    if (frac.size() > 18) throw std::overflow_error("decimal literal too precise");
    numerator = parse_digits(whole);
    for (char c : frac) {
      numerator = numerator * 10 + (c - '0');
      denominator *= 10;
    }
  } else {
    if (!all_digits(text)) {
      throw std::invalid_argument("malformed rational literal '" + original + "'");
    }
    numerator = parse_digits(text);
  }
  return from_wide(negative ? -numerator : numerator, denominator);
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  return os << value.to_string();
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

}  // namespace tpkit
