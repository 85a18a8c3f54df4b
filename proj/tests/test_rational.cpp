#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <sigmap/rational.hpp>

using namespace sigmap;

TEST_CASE("rational_from_double is exact on representable values") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-0.75) == Rational(-3, 4));
  CHECK(rational_from_double(3.0) == Rational(3));
  CHECK(rational_from_double(0.0) == Rational(0));
  CHECK(to_double(rational_from_double(0.1)) == 0.1);
}

TEST_CASE("fraction strings round-trip") {
  CHECK(fraction_string(Rational(3, 8)) == "3/8");
  CHECK(fraction_string(Rational(-7, 2)) == "-7/2");
  CHECK(parse_fraction("3/8") == Rational(3, 8));
  CHECK(parse_fraction("-7/2") == Rational(-7, 2));
  CHECK(parse_fraction("5") == Rational(5));
  CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fraction("x"), std::invalid_argument);
}

TEST_CASE("sign_of") {
  CHECK(sign_of(Rational(1, 3)) == 1);
  CHECK(sign_of(Rational(-2)) == -1);
  CHECK(sign_of(Rational(0)) == 0);
}

TEST_CASE("cmp_sqrt decides sqrt(l) vs c*sqrt(f)") {
  CHECK(cmp_sqrt(Rational(9), Rational(2), Rational(2)) == 1);  // 3 vs 2.828...
  CHECK(cmp_sqrt(Rational(4), Rational(2), Rational(2)) == -1); // 2 vs 2.828...
  CHECK(cmp_sqrt(Rational(4), Rational(1), Rational(4)) == 0);  // 2 vs 2
  CHECK_THROWS_AS(cmp_sqrt(Rational(-1), Rational(1), Rational(2)), std::domain_error);
}

TEST_CASE("cmp_sqrt_sum decides sqrt(l) vs a*sqrt(g) + b*sqrt(f)") {
  CHECK(cmp_sqrt_sum(Rational(9), Rational(1), Rational(2), Rational(1), Rational(2)) == 1);
  CHECK(cmp_sqrt_sum(Rational(4), Rational(1), Rational(2), Rational(1), Rational(2)) == -1);
  CHECK(cmp_sqrt_sum(Rational(4), Rational(1), Rational(1), Rational(1), Rational(1)) == 0);
  CHECK(cmp_sqrt_sum(Rational(25), Rational(2), Rational(4), Rational(1), Rational(1)) == 0);
  // degenerate cross term falls back to the linear sign
  CHECK(cmp_sqrt_sum(Rational(1), Rational(2), Rational(0), Rational(1), Rational(4)) == -1);
  CHECK(cmp_sqrt_sum(Rational(9), Rational(2), Rational(0), Rational(1), Rational(4)) == 1);

  // randomized agreement with double arithmetic away from ties
  std::mt19937_64 gen(12345);
  auto draw = [&] {
    return Rational(static_cast<long>(gen() % 19), static_cast<long>(1 + gen() % 7));
  };
  for (int t = 0; t < 2000; ++t) {
    const Rational l = draw(), a = draw(), g = draw(), b = draw(), f = draw();
    const double lhs = std::sqrt(to_double(l));
    const double rhs =
        to_double(a) * std::sqrt(to_double(g)) + to_double(b) * std::sqrt(to_double(f));
    if (std::abs(lhs - rhs) < 1e-9) continue;
    CHECK(cmp_sqrt_sum(l, a, g, b, f) == (lhs > rhs ? 1 : -1));
  }
}
