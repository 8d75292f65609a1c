#include <doctest.h>

#include "graphbench/errors.hpp"
#include "graphbench/numeric.hpp"

using namespace graphbench;

TEST_CASE("parse keeps integers exact") {
  auto v = Numeric::parse("42");
  CHECK(v.integral());
  CHECK(v.asInt() == 42);
  CHECK(Numeric::parse("-7").asInt() == -7);
  CHECK(Numeric::parse("0").zero());
  // beyond double's 53-bit mantissa, still exact
  CHECK(Numeric::parse("9007199254740993").asInt() == 9007199254740993LL);
}

TEST_CASE("parse promotes to double on floaty spellings") {
  CHECK(Numeric::parse("2.5").asFloat() == doctest::Approx(2.5));
  CHECK_FALSE(Numeric::parse("2.5").integral());
  CHECK(Numeric::parse("1e3").asFloat() == doctest::Approx(1000.0));
  CHECK(Numeric::parse("-0.25").asFloat() == doctest::Approx(-0.25));
  CHECK_FALSE(Numeric::parse("3.0").integral());
}

TEST_CASE("parse rejects garbage") {
  CHECK_THROWS_AS(Numeric::parse(""), DataFormatError);
  CHECK_THROWS_AS(Numeric::parse("abc"), DataFormatError);
  CHECK_THROWS_AS(Numeric::parse("12x"), DataFormatError);
  CHECK_THROWS_AS(Numeric::parse("1.2.3"), DataFormatError);
  CHECK_THROWS_AS(Numeric::parse(" 1"), DataFormatError);
}

TEST_CASE("render round-trips") {
  CHECK(Numeric::ofInt(17).render() == "17");
  CHECK(Numeric::ofInt(-3).render() == "-3");
  CHECK(Numeric::ofInt(0).render() == "0");
  // doubles render shortest round-trip, no trailing cruft
  auto f = Numeric::parse("0.5");
  CHECK(Numeric::parse(f.render()).asFloat() == 0.5);
  auto third = Numeric::ofFloat(1.0 / 3.0);
  CHECK(Numeric::parse(third.render()).asFloat() == 1.0 / 3.0);
}

TEST_CASE("integer arithmetic stays integral") {
  auto a = Numeric::ofInt(5);
  auto b = Numeric::ofInt(-2);
  CHECK(a.plus(b).asInt() == 3);
  CHECK(a.times(b).asInt() == -10);
  CHECK(a.max(b).asInt() == 5);
  CHECK(a.min(b).asInt() == -2);
  CHECK(a.plus(b).integral());
}

TEST_CASE("mixed arithmetic promotes") {
  auto a = Numeric::ofInt(5);
  auto f = Numeric::parse("0.5");
  CHECK(a.plus(f).asFloat() == doctest::Approx(5.5));
  CHECK_FALSE(a.plus(f).integral());
  CHECK(a.times(f).asFloat() == doctest::Approx(2.5));
  CHECK(a.max(f).asFloat() == doctest::Approx(5.0));
  CHECK(f.min(a).asFloat() == doctest::Approx(0.5));
}

TEST_CASE("asInt refuses doubles") {
  CHECK_THROWS_AS(Numeric::parse("2.5").asInt(), DataFormatError);
}

TEST_CASE("zero and equals") {
  CHECK(Numeric::ofInt(0).zero());
  CHECK(Numeric::ofFloat(0.0).zero());
  CHECK_FALSE(Numeric::ofInt(1).zero());
  CHECK(Numeric::ofInt(2).equals(Numeric::ofFloat(2.0)));
  CHECK_FALSE(Numeric::ofInt(2).equals(Numeric::ofInt(3)));
}
