#include "tpkit/interval.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace tpkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_natural(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("interval endpoint '" + std::string(s) + "' in '" +
                                std::string(whole) + "' is not a natural number");
  }
  return value;
}

bool is_infinity(std::string_view s) {
  s = trim(s);
  return s == "inf" || s == "+inf" || s == "oo" || s == "+oo" || s == "infinity" || s == "∞";
}

Rational to_rational(std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw std::overflow_error("interval endpoint too large");
  return Rational(static_cast<std::int64_t>(v));
}

}  // namespace

Interval Interval::make(std::uint64_t lo, bool lo_open, std::optional<std::uint64_t> hi,
                        bool hi_open) {
  if (!hi && !hi_open) throw std::invalid_argument("an infinite interval end must be open");
  if (hi) {
    if (lo > *hi) {
      throw std::invalid_argument("empty interval: lower endpoint exceeds upper endpoint");
    }
    if (lo == *hi && (lo_open || hi_open)) {
      throw std::invalid_argument("empty interval: point interval with an open side");
    }
  }
  Interval i;
  i.lo_ = lo;
  i.lo_open_ = lo_open;
  i.hi_ = hi;
  i.hi_open_ = hi_open;
  return i;
}

bool Interval::contains(const Rational& q) const {
  const Rational lo = to_rational(lo_);
  if (lo_open_ ? !(q > lo) : !(q >= lo)) return false;
  if (!hi_) return true;
  const Rational hi = to_rational(*hi_);
  return hi_open_ ? q < hi : q <= hi;
}

bool Interval::subset_of(const Interval& other) const {
  if (lo_ < other.lo_) return false;
  if (lo_ == other.lo_ && other.lo_open_ && !lo_open_) return false;
  if (!other.hi_) return true;
  if (!hi_) return false;
  if (*hi_ > *other.hi_) return false;
  if (*hi_ == *other.hi_ && other.hi_open_ && !hi_open_) return false;
  return true;
}

std::string Interval::to_string() const {
  std::string out = lo_open_ ? "]" : "[";
  out += std::to_string(lo_);
  out += ",";
  if (hi_) {
    out += std::to_string(*hi_);
    out += hi_open_ ? "[" : "]";
  } else {
    out += "inf[";
  }
  return out;
}

Interval Interval::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty interval expression");

  if (s.front() == '<' || s.front() == '>') {
    const bool greater = s.front() == '>';
    std::string_view rest = s.substr(1);
    bool inclusive = false;
    if (!rest.empty() && rest.front() == '=') {
      inclusive = true;
      rest.remove_prefix(1);
    }
    const std::uint64_t n = parse_natural(rest, s);
    if (greater) return inclusive ? at_least(n) : greater_than(n);
    return inclusive ? at_most(n) : less_than(n);
  }

  if (s.size() < 5 || (s.front() != '[' && s.front() != ']') ||
      (s.back() != '[' && s.back() != ']')) {
    throw std::invalid_argument("malformed interval '" + std::string(s) + "'");
  }
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("malformed interval '" + std::string(s) + "'");
  }
  const bool lo_open = s.front() == ']';
  const bool hi_open = s.back() == '[';
  const std::uint64_t lo = parse_natural(s.substr(1, comma - 1), s);
  const std::string_view hi_text = s.substr(comma + 1, s.size() - comma - 2);
  if (is_infinity(hi_text)) {
    if (!hi_open) throw std::invalid_argument("infinite end must be open in '" + std::string(s) + "'");
    return make(lo, lo_open, std::nullopt, true);
  }
  return make(lo, lo_open, parse_natural(hi_text, s), hi_open);
}

}  // namespace tpkit
