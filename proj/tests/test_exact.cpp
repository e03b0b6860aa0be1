#include <gtest/gtest.h>

#include "besicovitch/exact.hpp"

using namespace besicovitch;

TEST(Exact, FloorAndCeilDivisionFollowMathematicalConvention) {
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(7, 2), 4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(mod_floor(-1, 5), 4);
  EXPECT_EQ(mod_floor(10, 5), 0);
}

TEST(Exact, FloorCeilFracOfRationals) {
  EXPECT_EQ(ifloor(make_rational(-1, 3)), -1);
  EXPECT_EQ(iceil(make_rational(-1, 3)), 0);
  EXPECT_EQ(ifloor(make_rational(6, 3)), 2);
  EXPECT_EQ(frac(make_rational(-1, 3)), make_rational(2, 3));
  EXPECT_EQ(frac(make_rational(7, 3)), make_rational(1, 3));
}

TEST(Exact, RationalsSerializeAsNumeratorOverDenominator) {
  EXPECT_EQ(to_string(Rational(3)), "3/1");
  EXPECT_EQ(to_string(make_rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(make_rational(10, 4)), "5/2");
}

TEST(Exact, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("1/7"), make_rational(1, 7));
  EXPECT_EQ(parse_rational("-4/6"), make_rational(-2, 3));
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("0.001"), make_rational(1, 1000));
  EXPECT_EQ(parse_rational("-1.25"), make_rational(-5, 4));
  EXPECT_EQ(parse_rational(".5"), make_rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1."), std::invalid_argument);
  EXPECT_THROW(parse_integer(""), std::invalid_argument);
}

TEST(Exact, ScaleMatchesPlainMultiplication) {
  for (int num = -20; num <= 20; ++num) {
    for (int den = 1; den <= 12; ++den) {
      Rational q = make_rational(num, den);
      for (int k = 0; k <= 30; ++k) {
        EXPECT_EQ(scale(q, k), q * Integer(k)) << num << "/" << den << " * " << k;
      }
    }
  }
}

TEST(Exact, PowersAndBitLength) {
  EXPECT_EQ(ipow(Integer(3), 5), 243);
  EXPECT_EQ(bit_length(Integer(1)), 1u);
  EXPECT_EQ(bit_length(Integer(255)), 8u);
  EXPECT_EQ(bit_length(Integer(256)), 9u);
}

TEST(Exact, ApproxLogHandlesIntegersBeyondDoubleRange) {
  Integer big = ipow(Integer(10), 400);
  EXPECT_NEAR(approx_log(big), 400 * std::log(10.0), 1e-9);
  EXPECT_NEAR(approx_log(Integer(12345)), std::log(12345.0), 1e-12);
}
