#include "doctest.h"
#include "error.hpp"
#include "rational.hpp"

using srk::Rational;

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("4/3") == Rational(4, 3));
  CHECK(Rational::parse("-1/2") == Rational(-1, 2));
  CHECK(Rational::parse(" 2/4 ") == Rational(1, 2));
  CHECK(Rational::parse("1.5") == Rational(3, 2));
  CHECK(Rational::parse("2.0") == Rational(2));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));

  CHECK_THROWS_AS(Rational::parse(""), srk::InvalidError);
  CHECK_THROWS_AS(Rational::parse("1/0"), srk::InvalidError);
  CHECK_THROWS_AS(Rational::parse("a/b"), srk::InvalidError);
  CHECK_THROWS_AS(Rational::parse("1//2"), srk::InvalidError);
}

TEST_CASE("canonical form and arithmetic") {
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(2, -4).den() == 2);
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational(1, 3) + Rational(2, 3) == Rational(1));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK((-Rational(1, 2)).num() == -1);
  CHECK(Rational(4, 3).str() == "4/3");
  CHECK(Rational(-5).str() == "-5");
  CHECK(Rational(1, 3).value() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("round to significant digits") {
  CHECK(srk::round_significant(1.0 / 3.0, 15) == doctest::Approx(0.333333333333333).epsilon(1e-16));
  CHECK(srk::round_significant(0.0, 15) == 0.0);
  CHECK(srk::round_significant(-5.0, 3) == -5.0);
  // increasing precision converges monotonically to the exact double
  double x = 2.0 / 3.0;
  for (int digits = 3; digits < 17; ++digits) {
    double lo = srk::round_significant(x, digits);
    double hi = srk::round_significant(x, digits + 1);
    CHECK(std::abs(hi - x) <= std::abs(lo - x));
  }
  CHECK(srk::round_significant(x, 17) == x);
}
