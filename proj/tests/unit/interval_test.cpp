#include <gtest/gtest.h>

#include <stdexcept>
#include <string>

#include "fixtures.hpp"
#include "tpkit/interval.hpp"

namespace {

using tpkit::Interval;
using tpkit::Rational;

TEST(Interval, ContainsRespectsStrictness) {
  EXPECT_TRUE(Interval::positive().contains(Rational(1, 2)));
  EXPECT_FALSE(Interval::positive().contains(Rational(0)));
  EXPECT_TRUE(Interval::closed(5, 8).contains(Rational(7)));
  EXPECT_TRUE(Interval::closed(5, 8).contains(Rational(8)));
  EXPECT_FALSE(Interval::make(5, false, 8, true).contains(Rational(8)));
  EXPECT_FALSE(Interval::non_negative().contains(Rational(-1, 1000)));
}

TEST(Interval, ZeroInfinityClass) {
  EXPECT_TRUE(Interval::closed(0, 1).is_zero_infty());
  EXPECT_TRUE(Interval::at_least(1).is_zero_infty());
  EXPECT_FALSE(Interval::closed(1, 2).is_zero_infty());
  EXPECT_FALSE(Interval::make(0, true, 1, false).is_zero_infty());
}

TEST(Interval, EmptyIntervalsAreRejected) {
  EXPECT_THROW(Interval::make(3, false, 2, false), std::invalid_argument);
  EXPECT_THROW(Interval::make(2, true, 2, false), std::invalid_argument);
  EXPECT_THROW(Interval::make(2, false, 2, true), std::invalid_argument);
  EXPECT_NO_THROW(Interval::closed(2, 2));
  EXPECT_THROW(Interval::parse("]2,2]"), std::invalid_argument);
}

TEST(Interval, ParseBracketsAndComparisons) {
  EXPECT_EQ(Interval::parse(">= 1"), Interval::at_least(1));
  EXPECT_EQ(Interval::parse("> 0"), Interval::positive());
  EXPECT_EQ(Interval::parse("<= 1"), Interval::closed(0, 1));
  EXPECT_EQ(Interval::parse("< 3"), Interval::less_than(3));
  EXPECT_EQ(Interval::parse("[5,8]"), Interval::closed(5, 8));
  EXPECT_EQ(Interval::parse("]0,inf["), Interval::positive());
  EXPECT_EQ(Interval::parse("[1, +inf["), Interval::at_least(1));
  EXPECT_EQ(Interval::parse("[1,oo["), Interval::at_least(1));
  EXPECT_THROW(Interval::parse("[1,inf]"), std::invalid_argument);
  EXPECT_THROW(Interval::parse("[a,2]"), std::invalid_argument);
  EXPECT_THROW(Interval::parse("== 1"), std::invalid_argument);
}

TEST(Interval, ComparisonFormsAreInZeroInfinityClass) {
  for (const char* op : {"<", "<=", ">", ">="}) {
    for (int n = 0; n <= 5; ++n) {
      if (std::string(op) == "<" && n == 0) continue;  // "< 0" is empty
      EXPECT_TRUE(Interval::parse(std::string(op) + " " + std::to_string(n)).is_zero_infty()) << op << n;
    }
  }
}

TEST(Interval, ToStringRoundTrips) {
  for (const char* text : {"[1,inf[", "]0,inf[", "[5,8]", "]1,3[", "[0,0]"}) {
    EXPECT_EQ(Interval::parse(text).to_string(), text);
  }
}

// contains is monotone in inclusion: I subset of J and q in I imply q in J.
TEST(IntervalProperty, ContainsMonotoneUnderInclusion) {
  tpkit::fixtures::Rng rng(11);
  int checked = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const Interval i = tpkit::fixtures::random_interval(rng, 10);
    const Interval j = tpkit::fixtures::random_interval(rng, 10);
    if (!i.subset_of(j)) continue;
    ++checked;
    for (std::int64_t k = -2; k <= 48; ++k) {
      const Rational q(k, 4);
      if (i.contains(q)) {
        EXPECT_TRUE(j.contains(q)) << i.to_string() << " " << j.to_string() << " " << q;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

// subset_of agrees with pointwise inclusion on a quarter grid.
TEST(IntervalProperty, SubsetMatchesPointwiseInclusion) {
  tpkit::fixtures::Rng rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const Interval i = tpkit::fixtures::random_interval(rng, 6);
    const Interval j = tpkit::fixtures::random_interval(rng, 6);
    bool pointwise = true;
    for (std::int64_t k = 0; k <= 40 && pointwise; ++k) {
      const Rational q(k, 4);
      if (i.contains(q) && !j.contains(q)) pointwise = false;
    }
    // Unbounded I inside bounded J is impossible; the grid stops at 10.
    if (!i.bounded() && j.bounded()) pointwise = false;
    EXPECT_EQ(i.subset_of(j), pointwise) << i.to_string() << " " << j.to_string();
  }
}

}  // namespace
