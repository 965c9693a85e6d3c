#include "aalpha/classify.hpp"

#include <doctest.h>

#include <cmath>

using namespace aalpha;

namespace {

ClassifyPolicy quick_policy() {
  ClassifyPolicy p;
  p.depth = 30;
  p.guard = 20;
  p.horizon = 12;
  p.envelope_J = 10;
  p.resolution = 256;
  return p;
}

}  // namespace

TEST_CASE("golden stream classifies as a Jordan curve") {
  DigitStream g = DigitStream::periodic(1, -1, {{3, -1}});
  ModelClass mc = classify(g, quick_policy());
  CHECK(mc.verdict == ModelClass::Verdict::JordanCurve);
  CHECK(mc.herman_certified_yes);
  CHECK(!mc.brjuno_divergent);
}

TEST_CASE("divergent growth stream classifies as a Cantor bouquet") {
  DigitStream e = DigitStream::growth("expinv", {{"seed", 100}});
  ClassifyPolicy p = quick_policy();
  p.depth = 16;
  p.guard = 2;
  p.cap = 0.6;
  ModelClass mc = classify(e, p);
  CHECK(mc.verdict == ModelClass::Verdict::CantorBouquet);
  CHECK(mc.brjuno_divergent);
  CHECK(mc.brjuno_partial.lo > 10.0);
}

TEST_CASE("band-rule stream classifies as a one-sided hairy circle") {
  DigitStream q = DigitStream::growth("expsqrt", {{"seed", 43}});
  ClassifyPolicy p = quick_policy();
  p.depth = 16;
  p.guard = 2;
  ModelClass mc = classify(q, p);
  CHECK(mc.verdict == ModelClass::Verdict::HairyCircle);
  CHECK(mc.herman_certified_no);
  CHECK(mc.brjuno_tail_certified);
}

TEST_CASE("real streams stay undetermined without tail certificates") {
  DigitStream r = DigitStream::parse(
      "real:0.61803398874989484820458683436563811772;prec=128;depth=24");
  ClassifyPolicy p = quick_policy();
  p.depth = 20;
  p.guard = 4;
  ModelClass mc = classify(r, p);
  CHECK(mc.verdict == ModelClass::Verdict::Undetermined);
}

TEST_CASE("classification is deterministic") {
  DigitStream g = DigitStream::periodic(1, -1, {{3, -1}});
  ModelClass a = classify(g, quick_policy());
  ModelClass b = classify(g, quick_policy());
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("gap profile of a Jordan stream hugs the unit circle") {
  DigitStream g = DigitStream::periodic(1, -1, {{3, -1}});
  AlphaContext ctx = enclose_alphas(g, 30, 20);
  EnvelopePair pair = profile_limit(ctx, -1, 20, 512);
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::HairyCircle);
  CHECK(gp.resolution == 512);
  double rmax = 0.0;
  for (int k = 0; k < gp.resolution; ++k) {
    CHECK(!gp.capped[(size_t)k]);
    CHECK(gp.inner[(size_t)k] == 1.0);
    CHECK(gp.outer[(size_t)k] >= 1.0 - 1e-12);
    rmax = std::max(rmax, gp.outer[(size_t)k]);
  }
  CHECK(rmax - 1.0 <= std::expm1(6.2832 * pair_gap_sup(pair)) + 1e-9);
}

TEST_CASE("gap profile angle orientation flips the boundary coordinate") {
  DigitStream g = DigitStream::periodic(1, -1, {{3, -1}});
  AlphaContext ctx = enclose_alphas(g, 20, 20);
  EnvelopePair pair = profile_limit(ctx, -1, 10, 64);
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::HairyCircle);
  // angle k/res reads the pair at sample (res - k) mod res
  double gap17 = pair.upper.values[64 - 17] - pair.lower.values[64 - 17];
  if (gap17 < 0) gap17 = 0;
  CHECK(gp.outer[17] == doctest::Approx(std::exp(6.283185307179586 * gap17)));
}

TEST_CASE("zero gap means radius exactly one") {
  EnvelopePair pair;
  pair.lower.level = -1;
  pair.lower.resolution = 8;
  pair.lower.values.assign(9, 0.25);
  pair.lower.errs.assign(9, 0.0);
  pair.lower.escaped.assign(9, 0);
  pair.lower.unbounded.assign(9, 0);
  pair.upper = pair.lower;
  pair.upper.upper_kind = true;
  pair.gap_bound = 0.0;
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::HairyCircle);
  for (double r : gp.outer) CHECK(r == 1.0);
}

TEST_CASE("bouquet orientation: larger heights move hair tips inward") {
  EnvelopePair pair;
  pair.lower.level = -1;
  pair.lower.resolution = 4;
  pair.lower.values = {0.0, 1.0, 2.0, 0.5, 0.0};
  pair.lower.errs.assign(5, 0.0);
  pair.lower.escaped = {0, 0, 1, 0, 0};
  pair.lower.unbounded.assign(5, 0);
  pair.lower.cap = 2.0;
  pair.upper = pair.lower;
  pair.gap_bound = 0.1;
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::Bouquet);
  CHECK(gp.inner[0] == 0.0);
  CHECK(gp.outer[0] == doctest::Approx(1.0));
  // capped sample: marker with the radius collapsed toward zero
  CHECK(gp.capped[2] == 1);
  CHECK(gp.outer[2] < 1e-5);
  // deeper boundary -> smaller radius
  CHECK(gp.outer[3] < gp.outer[1]);
}

TEST_CASE("validation report flags the degenerate Jordan case") {
  DigitStream g = DigitStream::periodic(1, -1, {{3, -1}});
  AlphaContext ctx = enclose_alphas(g, 30, 20);
  EnvelopePair pair = profile_limit(ctx, -1, 20, 512);
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::HairyCircle);
  ValidationReport rep = validate_topology(gp);
  CHECK(rep.degenerate_all_minimal);
  CHECK(rep.min_set_window <= 10.0 / 512.0);
}

TEST_CASE("validation windows on a hairy stream") {
  DigitStream q = DigitStream::growth("expsqrt", {{"seed", 43}});
  AlphaContext ctx = enclose_alphas(q, 14, 2);
  EnvelopePair pair = profile_limit(ctx, -1, 8, 512);
  GapProfile gp = gap_profile(pair, GapProfile::Normalization::HairyCircle);
  ValidationReport rep = validate_topology(gp);
  CHECK(rep.minimal_count > 0);
  CHECK(std::isfinite(rep.min_set_window));
}

TEST_CASE("verdict names serialize") {
  CHECK(std::string(verdict_name(ModelClass::Verdict::JordanCurve)) == "JordanCurve");
  CHECK(std::string(verdict_name(ModelClass::Verdict::Undetermined)) == "Undetermined");
}
