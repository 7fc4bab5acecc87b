#include <doctest.h>

#include <sstream>
#include <vector>

#include "ram/errors.hpp"
#include "ram/rational.hpp"

using ram::Rational;

TEST_CASE("parse accepts fractions and integers") {
  CHECK(Rational::parse("1/6") == Rational(1, 6));
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse("+7") == Rational(7));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("123456789012345678901234567890/3").str() ==
        "41152263004115226300411522630");
}

TEST_CASE("parse rejects malformed literals") {
  for (const char* bad : {"", "1/0", "1/-2", "0.5", "1e3", "a/b", "1//2", "/2", "1/", " 1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), ram::InputError);
  }
}

TEST_CASE("canonical rendering") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(0, 5).str() == "0");
  CHECK(Rational(3, -9).str() == "-1/3");
  std::ostringstream os;
  os << Rational(5, 12);
  CHECK(os.str() == "5/12");
}

TEST_CASE("exact arithmetic and ordering") {
  const Rational a(1, 6);
  const Rational b(1, 3);
  CHECK(a + b == Rational(1, 2));
  CHECK(b - a == a);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(1, 2));
  CHECK(-a == Rational(-1, 6));
  CHECK(a < b);
  CHECK(b > a);
  CHECK(a != b);
  CHECK(Rational(1, 3) + Rational(1, 3) + Rational(1, 3) == 1);
  CHECK_THROWS_AS(a / Rational(0), ram::InputError);
  CHECK_THROWS_AS(Rational(1, 0), ram::InputError);
}

TEST_CASE("sum of a span") {
  const std::vector<Rational> v{Rational(1, 6), Rational(1, 3), Rational(1, 2)};
  CHECK(ram::sum(v) == 1);
  CHECK(ram::sum(std::vector<Rational>{}) == 0);
}

TEST_CASE("predicates") {
  CHECK(Rational(0).is_zero());
  CHECK(Rational(3).is_integer());
  CHECK_FALSE(Rational(3, 2).is_integer());
  CHECK(Rational(-1, 2).sign() == -1);
  CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
  CHECK(Rational(6, 8).numerator_string() == "3");
  CHECK(Rational(6, 8).denominator_string() == "4");
}
