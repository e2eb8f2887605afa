#include <gtest/gtest.h>

#include <limits>
#include <stdexcept>

#include "tpkit/rational.hpp"

namespace {

using tpkit::Rational;

TEST(Rational, CanonicalForm) {
  const Rational r(6, -4);
  EXPECT_EQ(r.numerator(), -3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(Rational(0, 7), Rational(0));
  EXPECT_THROW(Rational(1, 0), std::invalid_argument);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(-Rational(1, 5), Rational(-1, 5));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, OrderingIsExact) {
  EXPECT_LT(Rational(1, 3), Rational(334, 1000));
  EXPECT_GT(Rational(1), Rational(999, 1000));
  EXPECT_EQ(Rational(1) + Rational(1, 1000) <=> Rational(1001, 1000), std::strong_ordering::equal);
}

TEST(Rational, OverflowIsReported) {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + Rational(1), std::overflow_error);
  EXPECT_THROW(big * Rational(2), std::overflow_error);
}

TEST(Rational, ParseAcceptsExactForms) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3.9"), Rational(39, 10));
  EXPECT_EQ(Rational::parse("0.125"), Rational(1, 8));
}

TEST(Rational, ParseRejectsEverythingElse) {
  for (const char* bad : {"", "0.1+0.2", "1e3", "1/0", "abc", "1/", "/2", " 1", "1.", ".5", "--1", "1/-2"}) {
    EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, ToStringRoundTrips) {
  for (const Rational q : {Rational(0), Rational(5), Rational(-3, 7), Rational(139, 10)}) {
    EXPECT_EQ(Rational::parse(q.to_string()), q);
  }
  EXPECT_EQ(Rational(139, 10).to_string(), "139/10");
}

TEST(Rational, Midpoint) {
  EXPECT_EQ(tpkit::midpoint(Rational(1), Rational(6, 5)), Rational(11, 10));
}

}  // namespace
