#include "boxlab/rational.hpp"
#include "boxlab/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace boxlab;

TEST_CASE("parse_rational accepts fractions, integers and exact decimals") {
  CHECK(parse_rational("5/8") == Rational(5, 8));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("007/010") == Rational(7, 10));
  CHECK(parse_rational("0.0625") == Rational(1, 16));
  CHECK(parse_rational("-1.5e-3") == Rational(-3, 2000));
  CHECK(parse_rational("2E2") == Rational(200));
  CHECK(parse_rational(" 6/4 ") == Rational(3, 2));
  CHECK(parse_rational("0.3") == Rational(3, 10));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
}

TEST_CASE("to_string prints reduced p/q") {
  CHECK(to_string(Rational(6, 8)) == "3/4");
  CHECK(to_string(Rational(-2)) == "-2");
}

TEST_CASE("exact_rational is the binary value of the double") {
  // Python: Fraction(0.1)
  CHECK(exact_rational(0.1) == Rational(Integer("3602879701896397"), Integer("36028797018963968")));
  CHECK(exact_rational(0.375) == Rational(3, 8));
}

TEST_CASE("limit_denominator matches the continued-fraction reference") {
  // Python: Fraction(math.pi).limit_denominator(n)
  CHECK(limit_denominator(exact_rational(M_PI), Integer(1000)) == Rational(355, 113));
  CHECK(limit_denominator(exact_rational(M_PI), Integer(100000)) == Rational(312689, 99532));
  CHECK(limit_denominator(exact_rational(-0.3333333333), Integer(1000)) == Rational(-1, 3));
  CHECK(limit_denominator(Rational(7, 9), Integer(1000)) == Rational(7, 9));
}

TEST_CASE("snap_rational snaps close values and keeps far ones exact") {
  CHECK(snap_rational(0.375 + 1e-12) == Rational(3, 8));
  CHECK(snap_rational(1.0 / 3.0) == Rational(1, 3));
  CHECK(snap_rational(0.0) == Rational(0));
  // No denominator <= 10 is within 1e-9 of sqrt(2)/2; the 17-digit decimal is kept.
  const double x = std::sqrt(0.5);
  Rational s = snap_rational(x, 10);
  CHECK(std::abs(to_double(s) - x) < 1e-16);
}

TEST_CASE("rational_sqrt recognises perfect squares") {
  Rational r;
  CHECK(rational_sqrt(Rational(9, 16), r));
  CHECK(r == Rational(3, 4));
  CHECK_FALSE(rational_sqrt(Rational(2), r));
  CHECK_FALSE(rational_sqrt(Rational(-1, 4), r));
}
