#include "doctest.h"

#include "foa/rational.hpp"

using foa::Rational;

TEST_CASE("rational arithmetic is exact") {
  Rational a(8, 1);
  Rational b(3, 1);
  Rational q = a / b;
  CHECK(q.num() == 8);
  CHECK(q.den() == 3);
  // 8/3 survives a round trip: (8/3) * 3 == 8
  CHECK(q * b == a);
  CHECK((q + q + q) == a);
}

TEST_CASE("normalization keeps den positive and reduced") {
  CHECK(Rational(4, -6) == Rational(-2, 3));
  CHECK(Rational(0, -5) == Rational(0, 1));
  CHECK(Rational(-4, -2) == Rational(2, 1));
}

TEST_CASE("ordering crosses denominators") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK_FALSE(Rational(2, 4) < Rational(1, 2));
}

TEST_CASE("parse accepts integers, fractions and decimals") {
  CHECK(*Rational::parse("12") == Rational(12, 1));
  CHECK(*Rational::parse("-3") == Rational(-3, 1));
  CHECK(*Rational::parse("8/3") == Rational(8, 3));
  CHECK(*Rational::parse("0.91") == Rational(91, 100));
  CHECK(*Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(*Rational::parse("2.50") == Rational(5, 2));
  CHECK_FALSE(Rational::parse("abc").has_value());
  CHECK_FALSE(Rational::parse("1/0").has_value());
  CHECK_FALSE(Rational::parse("").has_value());
  CHECK_FALSE(Rational::parse("1.").has_value());
}

TEST_CASE("str renders integers plainly and fractions exactly") {
  CHECK(Rational(7, 1).str() == "7");
  CHECK(Rational(8, 3).str() == "8/3");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(foa::join_rationals({Rational(1, 2), Rational(3, 1)}) == "1/2 3");
}

TEST_CASE("division by zero throws, zero numerator is fine") {
  CHECK_THROWS(Rational(1, 0));
  CHECK(Rational(0, 7) == Rational(0, 1));
}
