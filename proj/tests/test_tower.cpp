#include "aalpha/tower.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace aalpha;

TEST_CASE("plain towers behave like intervals") {
  Tower a(3.0), b(4.5);
  CHECK(tadd(a, b).as_interval().contains(7.5));
  CHECK(tsub(b, a).as_interval().contains(1.5));
  CHECK(tmul(a, b).as_interval().contains(13.5));
  CHECK(texp(a).as_interval().contains(std::exp(3.0)));
  CHECK(tlog(b).as_interval().contains(std::log(4.5)));
  CHECK(certainly_lt(a, b));
  CHECK(!certainly_lt(b, a));
}

TEST_CASE("exp/log round trips across the overflow boundary") {
  Tower big = texp(Tower(800.0));  // e^800, beyond double
  CHECK(!big.plain());
  Tower back = tlog(big);
  CHECK(back.as_interval().contains(800.0));
  Tower bigger = texp(big);  // e^{e^800}
  Tower back2 = tlog(tlog(bigger));
  CHECK(back2.as_interval().contains(800.0));
}

TEST_CASE("normalization lowers representable towers") {
  Tower t(2, Interval(2.0, 2.0));  // exp(exp(2)) ~ 1618.7
  CHECK(t.plain());
  CHECK(t.as_interval().contains(std::exp(std::exp(2.0))));
}

TEST_CASE("ordering across scales") {
  Tower plain(1e300);
  Tower e800 = texp(Tower(800.0));
  Tower ee800 = texp(e800);
  CHECK(certainly_lt(plain, e800));
  CHECK(certainly_lt(e800, ee800));
  CHECK(!certainly_lt(ee800, e800));
  // value_le with equal heights compares mantissas
  CHECK(certainly_le(texp(Tower(750.0)), texp(Tower(760.0))));
}

TEST_CASE("absorbing addition stays sound") {
  Tower big = texp(Tower(800.0));
  Tower sum = tadd(big, Tower(5.0));
  // true value sits between big and 2 * big
  CHECK(certainly_le(big, sum));
  Tower twice = tmul(big, Tower(2.1));
  CHECK(certainly_le(sum, twice));

  Tower diff = tsub(big, Tower(5.0));
  Tower half = tmul(big, Tower(0.45));
  CHECK(certainly_le(half, diff));
  CHECK(certainly_le(diff, big));
}

TEST_CASE("randomized plain consistency") {
  std::mt19937_64 rng(3);
  auto u = [&](double a, double b) {
    return a + (b - a) * std::generate_canonical<double, 53>(rng);
  };
  for (int i = 0; i < 20000; ++i) {
    double x = u(0.1, 500.0), y = u(0.1, 500.0);
    Tower tx{Interval(x)}, ty{Interval(y)};
    CHECK(tadd(tx, ty).as_interval().contains(x + y));
    CHECK(tmul(tx, ty).as_interval().contains(x * y));
    if (x > y + 1e-9) CHECK(certainly_lt(ty, tx));
  }
}

TEST_CASE("saturated view reports double range honestly") {
  Tower huge = texp(texp(Tower(100.0)));
  Interval v = huge.as_interval();
  CHECK(v.lo >= 1e308);
  CHECK(std::isinf(v.hi));
}
