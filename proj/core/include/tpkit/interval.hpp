#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tpkit/rational.hpp"

namespace tpkit {

/// Non-empty interval of the non-negative reals whose endpoints are naturals
/// or infinity. An infinite upper end is always open. Empty intervals cannot be
/// constructed.
class Interval {
 public:
  /// Throws std::invalid_argument for empty intervals (lo > hi, or lo == hi
  /// with an open side) and for a closed infinite end.
  static Interval make(std::uint64_t lo, bool lo_open, std::optional<std::uint64_t> hi,
                       bool hi_open);

  static Interval closed(std::uint64_t lo, std::uint64_t hi) { return make(lo, false, hi, false); }
  static Interval at_least(std::uint64_t lo) { return make(lo, false, std::nullopt, true); }
  static Interval greater_than(std::uint64_t lo) { return make(lo, true, std::nullopt, true); }
  static Interval at_most(std::uint64_t hi) { return make(0, false, hi, false); }
  static Interval less_than(std::uint64_t hi) { return make(0, false, hi, true); }
  /// ]0,inf[ : strictly positive.
  static Interval positive() { return greater_than(0); }
  /// [0,inf[
  static Interval non_negative() { return at_least(0); }

  std::uint64_t lo() const { return lo_; }
  bool lo_open() const { return lo_open_; }
  const std::optional<std::uint64_t>& hi() const { return hi_; }
  bool hi_open() const { return hi_open_; }
  bool bounded() const { return hi_.has_value(); }

  bool contains(const Rational& q) const;

  /// Unbounded, or left-closed at 0: the class expressible as "~ n".
  bool is_zero_infty() const { return !bounded() || (lo_ == 0 && !lo_open_); }

  /// True when every point of *this lies in other.
  bool subset_of(const Interval& other) const;

  /// Canonical bracket notation: "[1,inf[", "]0,inf[", "[5,8]".
  std::string to_string() const;

  /// Bracket notation ("[a,b]", "]a,b[", "[a,inf[", "+inf" and "oo" accepted
  /// for infinity) or a comparison "<= n", "< n", ">= n", "> n". Throws
  /// std::invalid_argument on malformed or empty intervals.
  static Interval parse(std::string_view text);

  friend bool operator==(const Interval&, const Interval&) = default;

  /// [0,inf[
  Interval() = default;

 private:
  std::uint64_t lo_ = 0;
  bool lo_open_ = false;
  std::optional<std::uint64_t> hi_;
  bool hi_open_ = true;
};

}  // namespace tpkit
