#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "dlv/number.hpp"

using dlv::Number;

TEST_CASE("parse accepts integers, fractions and decimals") {
  auto a = Number::parse("3");
  REQUIRE(a);
  CHECK(a->exact());
  CHECK(a->str() == "3");

  auto b = Number::parse("-2/7");
  REQUIRE(b);
  CHECK(b->rational()->num == -2);
  CHECK(b->rational()->den == 7);

  auto c = Number::parse("0.125");
  REQUIRE(c);
  CHECK(c->value() == 0.125);

  auto d = Number::parse("1e-3");
  REQUIRE(d);
  CHECK(d->value() == doctest::Approx(1e-3));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_FALSE(Number::parse(""));
  CHECK_FALSE(Number::parse("inf"));
  CHECK_FALSE(Number::parse("1/0"));
  CHECK_FALSE(Number::parse("abc"));
}

TEST_CASE("rational arithmetic stays exact") {
  const Number s = Number(1, 3) + Number(1, 6);
  CHECK(s.exact());
  CHECK(s == Number(1, 2));
  CHECK(s.str() == "1/2");
  CHECK((Number(2, 3) * Number(9, 4)) == Number(3, 2));
  CHECK((Number(5) / Number(10)) == Number(1, 2));
  CHECK((-Number(3, 4)).str() == "-3/4");
  CHECK(Number(6, -8) == Number(-3, 4));
}

TEST_CASE("overflow drops to double") {
  const Number big(std::numeric_limits<std::int64_t>::max() / 2, 1);
  const Number p = big * Number(4);
  CHECK_FALSE(p.exact());
  CHECK(p.value() == doctest::Approx(4.0 * static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2)));
}

TEST_CASE("sqrt is exact on perfect squares") {
  const Number r = dlv::sqrt(Number(9, 4));
  CHECK(r.exact());
  CHECK(r == Number(3, 2));
  const Number q = dlv::sqrt(Number(2));
  CHECK_FALSE(q.exact());
  CHECK(q.value() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("sign, zero, abs and ordering") {
  CHECK(Number(0).is_zero());
  CHECK(Number(-3, 7).sign() == -1);
  CHECK(dlv::abs(Number(-3, 7)) == Number(3, 7));
  CHECK(Number(1, 3) < Number(1, 2));
  CHECK(Number(0.5) <= Number(1, 2));
  CHECK(dlv::near_equal(Number(0.1 + 0.2), Number(3, 10)));
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1e6, 1e6);
  for (int k = 0; k < 200; ++k) {
    const double v = U(rng) * std::pow(10.0, static_cast<int>(k % 20) - 10);
    CHECK(std::stod(dlv::format_double(v)) == v);
  }
  CHECK(dlv::format_double(0.5) == "0.5");
}
