#include <doctest.h>

#include "chowcalc/error.hpp"
#include "chowcalc/rational.hpp"

using namespace chowcalc;

TEST_CASE("format writes integers bare and reduces fractions") {
  CHECK(format_rational(Rational(3)) == "3");
  CHECK(format_rational(Rational(-6, 4)) == "-3/2");
  CHECK(format_rational(Rational(0)) == "0");
}

TEST_CASE("parse accepts integers and p/q") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-7") == -7);
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK(parse_rational("-1/3") == Rational(-1, 3));
  CHECK(parse_rational("1/-3") == Rational(-1, 3));
}

TEST_CASE("parse rejects malformed input") {
  for (const char* bad : {"", "-", "1/", "/2", "1.5", "a", "1/0", "2//3"}) {
    CAPTURE(bad);
    try {
      (void)parse_rational(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
    }
  }
}

TEST_CASE("format and parse round-trip big values") {
  const Rational r(BigInt("-123456789012345678901234567890"), BigInt("98765432109876543210"));
  CHECK(parse_rational(format_rational(r)) == r);
}
