#include "aalpha/model.hpp"

#include "aalpha/verify.hpp"
#include "aalpha/ymap.hpp"

#include <doctest.h>

#include <cmath>

using namespace aalpha;

namespace {

DigitStream golden() { return DigitStream::periodic(1, -1, {{3, -1}}); }
DigitStream silver() { return DigitStream::periodic(0, 1, {{2, 1}}); }

}  // namespace

TEST_CASE("base profile is the constant strip boundary") {
  AlphaContext ctx = enclose_alphas(golden(), 6, 20);
  BoundaryProfile p = profile_base(ctx, 0, 128);
  CHECK(p.level == 0);
  CHECK(p.depth == 0);
  CHECK(p.samples() == 129);
  for (double v : p.values) CHECK(v == -1.0);
  CHECK(p.escaped_fraction() == 0.0);
  CHECK(p.alpha_inv.contains(1.0 / 0.3819660112501051));
}

TEST_CASE("first refinement reproduces the vertical-image curve") {
  // stream with alpha near 1/10 so the curve peaks near the known value
  DigitStream ten = DigitStream::periodic(0, 1, {{10, 1}});
  AlphaContext ctx = enclose_alphas(ten, 6, 24);
  double a = ctx.alpha[1].mid();
  BoundaryProfile base = profile_base(ctx, 1, 256);
  BoundaryProfile p = profile_refine(ctx, 0, base);
  CHECK(p.level == 0);
  CHECK(p.depth == 1);
  // profile max against the direct formula at the mid-strip point
  double peak = vertical_image(a, 1.0 / (2.0 * a) - 0.5, -1.0);
  CHECK(p.max_value() == doctest::Approx(peak).epsilon(1e-3));
  // pointwise: sample x pulls from x'/alpha on the depth-0 boundary
  for (int i = 0; i <= 256; i += 17) {
    double x = i / 256.0;
    double direct = vertical_image(a, x / a, -1.0);
    CHECK(std::abs(p.values[(size_t)i] - direct) <= p.errs[(size_t)i] + 2e-3);
  }
}

TEST_CASE("block boundaries agree from both sides") {
  for (double r : {0.381966, 0.414214, 0.099}) {
    for (double y : {-1.0, 0.0, 2.5}) {
      double left = vertical_image(r, 1.0 / r, y);   // right edge of a block
      double right = vertical_image(r, 0.0, y);      // left edge of the next
      CHECK(left == doctest::Approx(right).epsilon(1e-12));
    }
  }
}

TEST_CASE("refinements only lift the boundary") {
  AlphaContext ctx = enclose_alphas(golden(), 12, 24);
  BoundaryProfile prev = profile_base(ctx, 0, 256);
  for (int top = 1; top <= 5; ++top) {
    BoundaryProfile cur = profile_base(ctx, top, 256);
    for (int lev = top - 1; lev >= 0; --lev) cur = profile_refine(ctx, lev, cur);
    for (size_t i = 0; i < cur.samples(); ++i)
      CHECK(cur.values[i] >=
            prev.values[i] - 2.0 * (prev.errs[i] + cur.errs[i]) - 1e-3);
    prev = cur;
  }
}

TEST_CASE("periodic seam: value(0) equals value(1) within tolerance") {
  AlphaContext ctx = enclose_alphas(golden(), 12, 24);
  BoundaryProfile p = profile_base(ctx, 5, 512);
  for (int lev = 4; lev >= -1; --lev) {
    p = profile_refine(ctx, lev, p);
    double tol = 2.0 * (p.errs.front() + p.errs.back()) + 2e-3;
    CHECK(std::abs(p.values.front() - p.values.back()) <= tol);
  }
}

TEST_CASE("the base point stays pinned at zero") {
  AlphaContext ctx = enclose_alphas(silver(), 16, 24);
  BoundaryProfile p = profile_base(ctx, 10, 256);
  for (int lev = 9; lev >= -1; --lev) p = profile_refine(ctx, lev, p);
  size_t i0 = ctx.stream.head_eps() < 0 ? 0 : p.samples() - 1;
  CHECK(std::abs(p.values[i0]) <= p.errs[i0] + 1e-6);
}

TEST_CASE("envelopes bracket and tighten on the golden stream") {
  AlphaContext ctx = enclose_alphas(golden(), 30, 24);
  EnvelopePair pair = profile_limit(ctx, -1, 20, 512);
  CHECK(pair.lower.level == -1);
  CHECK(pair.upper.level == -1);
  CHECK(pair.lower.depth == 20);
  // bracketing with room for the certified errors
  for (size_t i = 0; i < pair.lower.samples(); ++i) {
    CHECK(pair.upper.values[i] + pair.upper.errs[i] >=
          pair.lower.values[i] - pair.lower.errs[i] - 1e-12);
  }
  // the base angle brackets zero
  CHECK(pair.lower.values[0] - pair.lower.errs[0] <= 1e-6);
  CHECK(pair.upper.values[0] + pair.upper.errs[0] >= -1e-6);
  // the gap shrinks with J
  EnvelopePair p5 = profile_limit(ctx, -1, 5, 512);
  EnvelopePair p10 = profile_limit(ctx, -1, 10, 512);
  CHECK(pair_gap_sup(p10) < pair_gap_sup(p5));
  CHECK(pair_gap_sup(pair) < pair_gap_sup(p10) + 1e-12);
}

TEST_CASE("divergent stream: escape fraction positive and monotone in depth") {
  DigitStream e = DigitStream::growth("expinv", {{"seed", 100}});
  AlphaContext ctx = enclose_alphas(e, 14, 2);
  double prev = 0.0;
  for (int J : {3, 5, 8, 10}) {
    EnvelopePair pair = profile_limit(ctx, -1, J, 512, 0.6);
    double frac = pair.lower.escaped_fraction();
    CHECK(frac >= prev - 1e-12);
    if (J >= 3) CHECK(frac > 0.0);
    prev = frac;
    // upper envelope carries no finite certificate on a divergent stream
    CHECK(pair.upper.unbounded[pair.upper.samples() / 2] == 1);
  }
}

TEST_CASE("grid pullback matches the set-based construction at depth 2") {
  for (DigitStream s : {golden(), silver()}) {
    AlphaContext ctx = enclose_alphas(s, 8, 24);
    BoundaryProfile p = profile_base(ctx, 1, 64);
    p = profile_refine(ctx, 0, p);
    p = profile_refine(ctx, -1, p);
    CloudEnvelope cloud = cloud_boundary(ctx, -1, 2, 64);
    double sup = cloud_vs_profile_sup(cloud, p);
    CHECK(sup <= 2.0 / 64.0);
  }
}

TEST_CASE("endpoint marks land on the rotation orbit") {
  AlphaContext ctx = enclose_alphas(golden(), 24, 24);
  EnvelopePair pair = profile_limit(ctx, 0, 16, 512);
  auto marks = endpoints(ctx, 0, 64, pair);
  REQUIRE(marks.size() == 64);
  CHECK(marks[0].angle == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(marks[0].bracket.contains(0.0));
  CHECK(marks[1].angle == doctest::Approx(0.3819660112501051).epsilon(1e-9));
  // orbit points sit on the boundary: brackets meet the envelope brackets
  for (const auto& m : marks) {
    double lo = pair.lower.at(m.angle) - pair.lower.err_max() - 1e-3;
    double hi = pair.upper.at(m.angle) + pair.upper.err_max() + 1e-3;
    CHECK(m.bracket.hi >= lo);
    CHECK(m.bracket.lo <= hi + 1.0);
  }
}

TEST_CASE("level maxima track the shifted sums uniformly") {
  AlphaContext ctx = enclose_alphas(golden(), 30, 24);
  double worst = 0.0;
  for (int n = -1; n <= 5; ++n) {
    EnvelopePair pair = profile_limit(ctx, n, 14, 256);
    worst = std::max(worst, max_vs_brjuno(ctx, n, pair));
  }
  CHECK(worst < 2.0);  // frozen constant; see the acceptance sweep
}

TEST_CASE("profile JSON round-trips") {
  AlphaContext ctx = enclose_alphas(golden(), 10, 24);
  BoundaryProfile p = profile_base(ctx, 2, 64);
  p = profile_refine(ctx, 1, p);
  std::string j = p.to_json();
  BoundaryProfile q = BoundaryProfile::from_json(j);
  CHECK(q.level == p.level);
  CHECK(q.depth == p.depth);
  CHECK(q.values == p.values);
  CHECK(q.errs == p.errs);
  CHECK(q.to_json() == j);
}

TEST_CASE("level and argument validation") {
  AlphaContext ctx = enclose_alphas(golden(), 6, 20);
  BoundaryProfile p = profile_base(ctx, 2, 64);
  CHECK_THROWS_AS(profile_refine(ctx, 0, p), Error);     // level mismatch
  CHECK_THROWS_AS(profile_base(ctx, 9, 64), Error);      // beyond depth
  CHECK_THROWS_AS(profile_base(ctx, 0, 2), Error);       // too coarse
  CHECK_THROWS_AS(profile_limit(ctx, -1, 9, 64), Error); // depth exhausted
}
