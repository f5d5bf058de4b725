#include <doctest.h>

#include <cstdint>
#include <random>
#include <stdexcept>

#include "supergame/rational.hpp"

using supergame::Rational;
using supergame::parse_rational;
using supergame::to_string;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(-4, -8) == Rational(1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(3, 7) * Rational(7, 3) == Rational(1));
  CHECK(Rational(1) / Rational(3) == Rational(1, 3));
  CHECK(-Rational(3, 2) == Rational(-3, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);

  Rational acc;
  for (int i = 0; i < 10000; ++i) acc += Rational(1, 10000);
  CHECK(acc == Rational(1));
}

TEST_CASE("ordering is strict and exact") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-5, 2) < Rational(-2));
  CHECK(Rational(-1) < Rational(1, 1000000));
  CHECK(Rational(3, 2) > Rational(1));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(2, 4) >= Rational(1, 2));
  CHECK_FALSE(Rational(1, 3) < Rational(1, 3));
}

TEST_CASE("overflow is detected instead of wrapping") {
  Rational huge(INT64_MAX);
  CHECK_THROWS_AS(huge + huge, std::overflow_error);
  CHECK_THROWS_AS(huge * Rational(2), std::overflow_error);
  // reduction may rescue intermediate growth
  CHECK(Rational(INT64_MAX, 2) * Rational(2, INT64_MAX) == Rational(1));
}

TEST_CASE("parsing accepts integers, fractions and decimal strings") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("1.5") == Rational(3, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("6") == Rational(6));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("+3/6") == Rational(1, 2));
  CHECK(parse_rational("2.") == Rational(2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
}

TEST_CASE("parsing rejects malformed and degenerate input") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1 / 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("-"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
  CHECK_THROWS_AS(parse_rational("99999999999999999999999999999"), std::overflow_error);
}

TEST_CASE("to_string round-trips through parse_rational") {
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(to_string(Rational(4)) == "4");

  std::mt19937_64 rng(20240312);
  for (int i = 0; i < 500; ++i) {
    std::int64_t num = static_cast<std::int64_t>(rng() % 20001) - 10000;
    std::int64_t den = static_cast<std::int64_t>(rng() % 999) + 1;
    Rational value(num, den);
    CHECK(parse_rational(to_string(value)) == value);
  }
}
