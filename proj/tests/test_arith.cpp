#include "aalpha/arith.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace aalpha;

namespace {

// closed-form sum for a one-digit periodic stream: all levels equal g, so
// B = log(1/g) * (1 + g + g^2 + ...) = log(1/g)/(1 - g)
double golden_brjuno_oracle() {
  double g = (3.0 - std::sqrt(5.0)) / 2.0;
  return std::log(1.0 / g) / (1.0 - g);
}

DigitStream golden() { return DigitStream::periodic(1, -1, {{3, -1}}); }
DigitStream silver() { return DigitStream::periodic(0, 1, {{2, 1}}); }

}  // namespace

TEST_CASE("partial sums converge to the periodic closed form") {
  AlphaContext ctx = enclose_alphas(golden(), 40, 20);
  double oracle = golden_brjuno_oracle();
  CHECK(oracle == doctest::Approx(1.5572).epsilon(1e-3));  // frozen reference

  double prev = 0.0;
  for (int terms : {1, 2, 4, 8, 16, 30}) {
    BrjunoSum s = brjuno(ctx, 0, terms);
    // monotone nondecreasing in the term count
    CHECK(s.partial.as_interval().hi >= prev - 1e-15);
    prev = s.partial.as_interval().lo;
    REQUIRE(s.tail_bound.has_value());
    Interval full = s.enclosure_with_tail();
    CHECK(full.contains(oracle));
  }
  BrjunoSum s30 = brjuno(ctx, 0, 30);
  CHECK(s30.enclosure_with_tail().width() < 1e-8);
}

TEST_CASE("a single term is exactly the first log") {
  AlphaContext ctx = enclose_alphas(golden(), 8, 20);
  BrjunoSum s = brjuno(ctx, 0, 1);
  Interval L0 = ctx.log_alpha_inv[0].as_interval();
  CHECK(s.partial.as_interval().overlaps(L0));
  CHECK(s.terms.size() == 1);
}

TEST_CASE("shifted bases reuse deeper levels") {
  AlphaContext ctx = enclose_alphas(silver(), 30, 20);
  BrjunoSum s2 = brjuno(ctx, 2, 8);
  CHECK(s2.base_level == 2);
  // for the one-digit periodic stream every base gives the same value
  BrjunoSum s0 = brjuno(ctx, 0, 8);
  CHECK(s0.enclosure_with_tail().overlaps(s2.enclosure_with_tail()));
}

TEST_CASE("divergence certificate drives the partial sums past any bound") {
  DigitStream e = DigitStream::growth("expinv", {{"seed", 100}});
  AlphaContext ctx = enclose_alphas(e, 20, 2);
  BrjunoSum s = brjuno(ctx, 0, 16);
  CHECK(s.divergent_certified);
  CHECK(!s.tail_bound.has_value());
  // t_0 = log(100.x) ~ 4.6, every further term within [min_term, max_term]
  CHECK(s.partial.as_interval().lo > 10.0);
  for (size_t k = 1; k < s.terms.size(); ++k) {
    CHECK(s.terms[k].hi >= e.tail().min_term);
    CHECK(s.terms[k].lo <= e.tail().max_term);
  }
}

TEST_CASE("comparison map h matches its reference values") {
  // junction point: h(log(1/a)) = 1/a
  CHECK(yoccoz_h(0.25, std::log(4.0)) == doctest::Approx(4.0).epsilon(1e-14));
  // below the junction the map is the exponential
  CHECK(yoccoz_h(0.381966, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  // linear branch at the golden parameter
  CHECK(yoccoz_h(0.381966, 1.0) == doctest::Approx(2.7164).epsilon(1e-3));
}

TEST_CASE("inverse map g and the round trip") {
  CHECK(yoccoz_g(0.25, 4.0) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(yoccoz_g(0.1, 100.0) == doctest::Approx(11.302585092994046).epsilon(1e-12));
  std::mt19937_64 rng(17);
  auto u = [&](double a, double b) {
    return a + (b - a) * std::generate_canonical<double, 53>(rng);
  };
  for (int i = 0; i < 100; ++i) {
    double a = u(0.01, 0.499), y = u(-4.0, 50.0);
    CHECK(std::abs(yoccoz_g(a, yoccoz_h(a, y)) - y) < 1e-10);
  }
  CHECK_THROWS_AS(yoccoz_g(0.25, 0.0), Error);
}

TEST_CASE("h stays between y + 1 and e^y and is increasing") {
  std::mt19937_64 rng(23);
  auto u = [&](double a, double b) {
    return a + (b - a) * std::generate_canonical<double, 53>(rng);
  };
  for (int i = 0; i < 20000; ++i) {
    double a = u(0.001, 0.499), y = u(-20.0, 60.0);
    double h = yoccoz_h(a, y);
    CHECK(h >= y + 1.0 - 1e-12);
    CHECK(h <= std::exp(y) * (1.0 + 1e-12) + 1e-300);
    CHECK(yoccoz_h(a, y + 1e-6) >= h);
  }
}

TEST_CASE("interval forms contain the scalar maps") {
  std::mt19937_64 rng(29);
  auto u = [&](double a, double b) {
    return a + (b - a) * std::generate_canonical<double, 53>(rng);
  };
  for (int i = 0; i < 5000; ++i) {
    double a = u(0.01, 0.499), y = u(-5.0, 40.0);
    CHECK(yoccoz_h(Interval(a), Interval(y)).contains(yoccoz_h(a, y)));
    if (y > 0.1)
      CHECK(yoccoz_g(Interval(a), Interval(y)).contains(yoccoz_g(a, y)));
  }
}

TEST_CASE("iterate criterion: golden stream satisfied at m = 2") {
  AlphaContext ctx = enclose_alphas(golden(), 40, 20);
  HermanVerdict v = herman_check_h(ctx, 0, 12);
  CHECK(v.kind == HermanVerdict::Kind::SatisfiedAt);
  CHECK(v.index == 2);
  REQUIRE(v.witness.size() >= 2);
  CHECK(v.witness[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v.witness[1] == doctest::Approx(2.7164).epsilon(1e-3));
  CHECK(v.bounds[1] == doctest::Approx(1.5572).epsilon(1e-3));
}

TEST_CASE("iterate criterion satisfied for every start of a periodic stream") {
  AlphaContext ctx = enclose_alphas(silver(), 40, 20);
  for (int n = 0; n < 6; ++n) {
    HermanVerdict v = herman_check_h(ctx, n, n + 10);
    CHECK(v.kind == HermanVerdict::Kind::SatisfiedAt);
  }
}

TEST_CASE("iterate criterion fails along the sub-geometric band rule") {
  DigitStream q = DigitStream::growth("expsqrt", {{"seed", 43}});
  AlphaContext ctx = enclose_alphas(q, 16, 2);
  HermanVerdict v = herman_check_h(ctx, 0, 12);
  CHECK(v.kind == HermanVerdict::Kind::FailedUpTo);
  CHECK(v.index == 12);
  // first iterates: 1, e, e^e, ... always below the first-term bound
  CHECK(v.witness[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(v.witness[1] == doctest::Approx(2.71828).epsilon(1e-6));
  CHECK(v.bounds[0] == doctest::Approx(std::log(703.0)).epsilon(1e-2));
}

TEST_CASE("divergent streams never satisfy the iterate criterion") {
  DigitStream e = DigitStream::growth("expinv", {{"seed", 100}});
  AlphaContext ctx = enclose_alphas(e, 16, 2);
  HermanVerdict v = herman_check_h(ctx, 0, 12);
  CHECK(v.kind == HermanVerdict::Kind::FailedUpTo);
}

TEST_CASE("half-plane criterion: golden satisfied quickly, huge x trivial") {
  AlphaContext ctx = enclose_alphas(golden(), 40, 20);
  HermanVerdict v = herman_check_y(ctx, 0.05, 30);
  CHECK(v.kind == HermanVerdict::Kind::SatisfiedAt);
  CHECK(v.index <= 30);
  CHECK(v.index >= 1);

  HermanVerdict big = herman_check_y(ctx, 50.0, 10);
  CHECK(big.kind == HermanVerdict::Kind::SatisfiedAt);
  CHECK(big.index == 0);
}

TEST_CASE("half-plane criterion fails on the band rule and agrees with h") {
  DigitStream q = DigitStream::growth("expsqrt", {{"seed", 43}});
  AlphaContext ctx = enclose_alphas(q, 16, 2);
  HermanVerdict v = herman_check_y(ctx, 0.01, 12);
  CHECK(v.kind == HermanVerdict::Kind::FailedUpTo);
}

TEST_CASE("discrepancy between the map composites stays bounded") {
  AlphaContext ctx = enclose_alphas(golden(), 30, 20);
  // one-step case is finite
  double d1 = y_vs_g_discrepancy(ctx, 0, 1, 10.0);
  CHECK(std::isfinite(d1));
  double d10 = y_vs_g_discrepancy(ctx, 0, 10, 10.0);
  CHECK(std::isfinite(d10));
  CHECK(d10 < 4.0);  // frozen after first run; well under the proof's 10 D_1

  // sweep over the defined region: finite and stable as m grows
  double sup = 0.0;
  for (double y : {1.0, 10.0, 100.0}) {
    for (int gap = 2; gap <= 15; ++gap) {
      try {
        sup = std::max(sup, y_vs_g_discrepancy(ctx, 0, gap, y));
      } catch (const Error& e) {
        CHECK(e.code() == Errc::NonPositiveInput);  // chain left g's domain
      }
    }
  }
  CHECK(std::isfinite(sup));
  CHECK(sup < 4.0);
}

TEST_CASE("verdicts agree wherever both criteria certify") {
  std::vector<DigitStream> streams = {
      golden(), silver(), DigitStream::growth("expsqrt", {{"seed", 43}}),
      DigitStream::growth("expinv", {{"seed", 100}}),
      DigitStream::growth("doubling", {{"N", 10}})};
  for (const DigitStream& s : streams) {
    AlphaContext ctx = enclose_alphas(
        s, (int)std::min<long>(30, s.available_depth() - 2), 2);
    int hor = std::min(12, ctx.depth - 2);
    HermanVerdict h = herman_check_h(ctx, 0, hor);
    HermanVerdict y = herman_check_y(ctx, 0.01, hor);
    bool h_cert = h.kind != HermanVerdict::Kind::UnresolvedUpTo;
    bool y_cert = y.kind != HermanVerdict::Kind::UnresolvedUpTo;
    if (h_cert && y_cert) {
      bool h_yes = h.kind == HermanVerdict::Kind::SatisfiedAt;
      bool y_yes = y.kind == HermanVerdict::Kind::SatisfiedAt;
      CHECK(h_yes == y_yes);
    }
  }
}

TEST_CASE("depth exhaustion raises") {
  AlphaContext ctx = enclose_alphas(golden(), 6, 4);
  CHECK_THROWS_AS(brjuno(ctx, 0, 10), Error);
  CHECK_THROWS_AS(herman_check_h(ctx, 0, 10), Error);
}
