#include <doctest.h>

#include "charges/rational.hpp"

using namespace charges;

TEST_CASE("parse_rational accepts canonical and reducible forms") {
  CHECK(parse_rational("3/5") == Rational(3, 5));
  CHECK(parse_rational("2") == Rational(2));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("+4") == Rational(4));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("0") == 0);
  CHECK(to_string(parse_rational("1/-2")) == "-1/2");
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("4/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("3/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2 /3"), std::invalid_argument);
}

TEST_CASE("to_string emits lowest terms without /1") {
  CHECK(to_string(Rational(2)) == "2");
  CHECK(to_string(Rational(3, 5)) == "3/5");
  CHECK(to_string(Rational(-1, 4)) == "-1/4");
  Rational r(6, 4);
  r.canonicalize();
  CHECK(to_string(r) == "3/2");
}

TEST_CASE("rational_pow handles signs and zero") {
  CHECK(rational_pow(Rational(3, 2), 3) == Rational(27, 8));
  CHECK(rational_pow(Rational(2), -2) == Rational(1, 4));
  CHECK(rational_pow(Rational(5), 0) == 1);
  CHECK(rational_pow(Rational(0), 0) == 1);
  CHECK(rational_pow(Rational(0), 3) == 0);
  CHECK(rational_pow(Rational(-2, 3), 2) == Rational(4, 9));
  CHECK(rational_pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK_THROWS_AS(rational_pow(Rational(0), -1), std::invalid_argument);
}

TEST_CASE("int_pow") {
  CHECK(int_pow(Integer(2), 10) == 1024);
  CHECK(int_pow(Integer(7), 0) == 1);
}

TEST_CASE("exact_root and exact_sqrt") {
  CHECK(exact_root(Integer(27), 3) == Integer(3));
  CHECK(exact_root(Integer(28), 3) == std::nullopt);
  CHECK(exact_root(Integer(0), 2) == Integer(0));
  CHECK(exact_root(Integer(1), 5) == Integer(1));
  CHECK(exact_root(Integer(-4), 2) == std::nullopt);

  CHECK(exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK(exact_sqrt(Rational(2)) == std::nullopt);
  CHECK(exact_sqrt(Rational(0)) == Rational(0));
  CHECK(exact_sqrt(Rational(-1)) == std::nullopt);
  CHECK(exact_sqrt(Rational(1, 9)) == Rational(1, 3));
}

TEST_CASE("primitive_root finds the largest power") {
  CHECK(primitive_root(Rational(4)) == std::pair(2ul, Rational(2)));
  CHECK(primitive_root(Rational(8)) == std::pair(3ul, Rational(2)));
  CHECK(primitive_root(Rational(64)) == std::pair(6ul, Rational(2)));
  CHECK(primitive_root(Rational(6)) == std::pair(1ul, Rational(6)));
  CHECK(primitive_root(Rational(2)) == std::pair(1ul, Rational(2)));
  CHECK(primitive_root(Rational(9, 4)) == std::pair(2ul, Rational(3, 2)));
  CHECK(primitive_root(Rational(16, 81)) == std::pair(4ul, Rational(2, 3)));
  CHECK(primitive_root(Rational(1, 2)) == std::pair(1ul, Rational(1, 2)));
  CHECK(primitive_root(Rational(1, 8)) == std::pair(3ul, Rational(1, 2)));
  CHECK_THROWS_AS(primitive_root(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(primitive_root(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(primitive_root(Rational(-4)), std::invalid_argument);
}

TEST_CASE("primitive_root inverts rational_pow for primitive bases") {
  for (const Rational& base :
       {Rational(2), Rational(3, 2), Rational(5), Rational(7, 3)}) {
    for (long k = 1; k <= 5; ++k) {
      auto [power, root] = primitive_root(rational_pow(base, k));
      CHECK(power == static_cast<unsigned long>(k));
      CHECK(root == base);
    }
  }
}
