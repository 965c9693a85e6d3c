#include "aalpha/interval.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace aalpha;

TEST_CASE("basic arithmetic encloses the exact image") {
  Interval a(1.0, 2.0), b(-0.5, 0.25);
  Interval s = a + b;
  CHECK(s.lo <= 0.5);
  CHECK(s.hi >= 2.25);
  Interval p = a * b;
  CHECK(p.lo <= -1.0);
  CHECK(p.hi >= 0.5);
  Interval d = a / Interval(4.0);
  CHECK(d.contains(0.3));
  CHECK(d.contains(0.5));
}

TEST_CASE("division by an interval containing zero saturates") {
  Interval r = recip(Interval(-1.0, 1.0));
  CHECK(std::isinf(r.lo));
  CHECK(std::isinf(r.hi));
  Interval q = recip(Interval(0.0, 0.5));
  CHECK(q.lo >= 2.0 - 1e-12);
  CHECK(std::isinf(q.hi));
}

TEST_CASE("randomized containment of midpoint arithmetic") {
  std::mt19937_64 rng(7);
  auto u = [&](double a, double b) {
    return a + (b - a) * std::generate_canonical<double, 53>(rng);
  };
  for (int i = 0; i < 20000; ++i) {
    double x = u(-50.0, 50.0), y = u(-50.0, 50.0);
    Interval ix(x), iy(y);
    CHECK((ix + iy).contains(x + y));
    CHECK((ix - iy).contains(x - y));
    CHECK((ix * iy).contains(x * y));
    if (std::abs(y) > 1e-6) CHECK((ix / iy).contains(x / y));
    if (x > 0) CHECK(ilog(ix).contains(std::log(x)));
    if (x < 300) CHECK(iexp(ix).contains(std::exp(x)));
    CHECK(sqr(ix).contains(x * x));
  }
}

TEST_CASE("sinpi and cospi reduce huge and tiny arguments") {
  CHECK(sinpi(0.0) == 0.0);
  CHECK(sinpi(1.0) == 0.0);
  CHECK(sinpi(0.5) == 1.0);
  CHECK(cospi(1.0) == -1.0);
  // a tiny argument keeps full relative accuracy
  double t = 1e-300;
  CHECK(sinpi(t) == doctest::Approx(3.14159265358979e-300).epsilon(1e-12));
  // exact periodicity on the integer lattice
  CHECK(sinpi(2.0 + 0.125) == doctest::Approx(sinpi(0.125)).epsilon(1e-15));
  CHECK(cospi(1e9 + 0.25) == doctest::Approx(cospi(0.25)).epsilon(1e-12));
}

TEST_CASE("interval trig contains pointwise values and extrema") {
  std::mt19937_64 rng(11);
  auto u = [&](double a, double b) {
    return a + (b - a) * std::generate_canonical<double, 53>(rng);
  };
  for (int i = 0; i < 5000; ++i) {
    double c = u(-8.0, 8.0), w = u(0.0, 0.7);
    Interval iv(c, c + w);
    Interval sc = sinpi(iv), cc = cospi(iv);
    for (int k = 0; k <= 10; ++k) {
      double x = std::clamp(c + w * k / 10.0, iv.lo, iv.hi);
      CHECK(sc.contains(sinpi(x)));
      CHECK(cc.contains(cospi(x)));
    }
  }
  // interval straddling a maximum must reach it
  CHECK(sinpi(Interval(0.4, 0.6)).hi == 1.0);
  CHECK(cospi(Interval(0.9, 1.1)).lo == -1.0);
  // tiny interval around zero still contains the true tiny values
  Interval tiny = sinpi(Interval(1e-300, 2e-300));
  CHECK(tiny.contains(4e-300));
  CHECK(tiny.lo > 3.1e-300);
}

TEST_CASE("frac wraps correctly") {
  Interval f = ifrac(Interval(2.25, 2.5));
  CHECK(f.contains(0.3));
  CHECK(!f.contains(0.6));
  Interval wrapped = ifrac(Interval(2.9, 3.1));
  CHECK(wrapped.lo == 0.0);
  CHECK(wrapped.hi == 1.0);
}
