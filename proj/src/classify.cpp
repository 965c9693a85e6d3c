#include "aalpha/classify.hpp"

#include "aalpha/jsonfmt.hpp"

#include <algorithm>
#include <cmath>

namespace aalpha {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925287;

}  // namespace

GapProfile gap_profile(const EnvelopePair& pair, GapProfile::Normalization mode) {
  if (pair.lower.level != -1)
    raise(Errc::WrongLevel, "gap profiles are built from level -1 pairs");
  int res = pair.lower.resolution;
  GapProfile g;
  g.normalization = mode;
  g.resolution = res;
  g.stream_hash = pair.lower.stream_hash;
  g.inner.resize((size_t)res);
  g.outer.resize((size_t)res);
  g.capped.assign((size_t)res, 0);
  double max_err_r = 0.0;

  for (int k = 0; k < res; ++k) {
    // theta = k/res -> boundary coordinate x = (-theta) mod 1, sample res - k
    size_t j = (size_t)((res - k) % res);
    size_t idx = (size_t)k;
    if (mode == GapProfile::Normalization::HairyCircle) {
      g.inner[idx] = 1.0;
      bool bad = pair.upper.unbounded[j] || pair.upper.escaped[j] ||
                 pair.lower.escaped[j] || pair.lower.unbounded[j];
      if (bad) {
        g.capped[idx] = 1;
        g.outer[idx] = kInf;
        continue;
      }
      double gap = pair.upper.values[j] - pair.lower.values[j];
      if (gap < 0.0) gap = 0.0;
      double e = pair.upper.errs[j] + pair.lower.errs[j];
      g.outer[idx] = std::exp(kTwoPi * gap);
      max_err_r = std::max(max_err_r, g.outer[idx] * std::expm1(kTwoPi * e));
    } else {
      g.inner[idx] = 0.0;
      if (pair.lower.escaped[j]) {
        // hair certified out to the cap: radius markers collapse toward 0
        g.capped[idx] = 1;
        g.outer[idx] = std::exp(-kTwoPi * pair.lower.values[j]);
        continue;
      }
      g.outer[idx] = std::exp(-kTwoPi * pair.lower.values[j]);
      double e = pair.lower.errs[j];
      max_err_r = std::max(max_err_r, g.outer[idx] * std::expm1(kTwoPi * e));
    }
  }
  g.err = max_err_r;
  g.gap_bound_r = std::isfinite(pair.gap_bound)
                      ? std::expm1(kTwoPi * pair.gap_bound)
                      : kInf;
  return g;
}

namespace {

// smallest cyclic window (in samples) such that every window contains a
// member of the index set
long max_cyclic_gap(const std::vector<size_t>& idx, int res) {
  if (idx.empty()) return -1;
  long worst = 0;
  for (size_t i = 0; i + 1 < idx.size(); ++i)
    worst = std::max(worst, (long)idx[i + 1] - (long)idx[i]);
  worst = std::max(worst, (long)idx.front() + res - (long)idx.back());
  return worst;
}

}  // namespace

ValidationReport validate_topology(const GapProfile& g, int window) {
  if (g.outer.empty()) raise(Errc::EmptyProfile, "empty gap profile");
  int res = g.resolution;
  ValidationReport rep;

  // minimal set: hair length within noise of the floor
  std::vector<size_t> minimal, complement;
  bool hairy = g.normalization == GapProfile::Normalization::HairyCircle;
  double tol_r = std::isfinite(g.gap_bound_r) ? 3.0 * g.gap_bound_r : kInf;
  for (int k = 0; k < res; ++k) {
    bool is_min;
    if (hairy) {
      is_min = !g.capped[(size_t)k] && g.outer[(size_t)k] <= 1.0 + tol_r;
    } else {
      // bouquet: the "minimal" set is the capped family (hairs filling the ray)
      is_min = g.capped[(size_t)k] != 0;
    }
    (is_min ? minimal : complement).push_back((size_t)k);
    if (g.capped[(size_t)k]) ++rep.capped_count;
  }
  rep.minimal_count = minimal.size();
  long mg = max_cyclic_gap(minimal, res);
  long cg = max_cyclic_gap(complement, res);
  rep.min_set_window = mg < 0 ? kInf : (double)(mg + 1) / (double)res;
  rep.complement_window = cg < 0 ? kInf : (double)(cg + 1) / (double)res;
  rep.degenerate_all_minimal = complement.empty();

  // one-sided limsup symmetry on the saturated radii
  double defect = 0.0;
  auto radius = [&](int k) {
    double v = g.outer[(size_t)((k % res + res) % res)];
    return std::isfinite(v) ? v : 0.0;  // capped hairy samples excluded below
  };
  for (int k = 0; k < res; ++k) {
    double right = 0, left = 0, local = radius(k);
    for (int d = 1; d <= window; ++d) {
      right = std::max(right, radius(k + d));
      left = std::max(left, radius(k - d));
      local = std::max(local, std::max(radius(k + d), radius(k - d)));
    }
    defect = std::max(defect, std::max(local - std::max(right, radius(k)),
                                       local - std::max(left, radius(k))));
  }
  rep.limsup_defect = defect;
  return rep;
}

// ---- classification --------------------------------------------------------

const char* verdict_name(ModelClass::Verdict v) {
  switch (v) {
    case ModelClass::Verdict::JordanCurve: return "JordanCurve";
    case ModelClass::Verdict::HairyCircle: return "HairyCircle";
    case ModelClass::Verdict::CantorBouquet: return "CantorBouquet";
    case ModelClass::Verdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

ModelClass classify(const DigitStream& stream, const ClassifyPolicy& policy) {
  ModelClass out;
  out.policy = policy;
  out.stream_spec = stream.spec_string();

  // clamp the working depth to what the source certifies
  long avail = stream.available_depth();
  int depth = policy.depth;
  int guard = policy.guard;
  if ((long)depth + guard > avail) {
    guard = (int)std::min<long>(guard, std::max<long>(0, avail - depth));
    if ((long)depth + guard > avail) depth = (int)(avail - guard);
  }
  if (depth < 2) {
    out.reason = "source certifies too few digits";
    return out;
  }
  AlphaContext ctx = enclose_alphas(stream, depth, guard);

  // Brjuno side
  int bterms = std::min(policy.brjuno_terms, ctx.depth - 1);
  BrjunoSum bs = brjuno(ctx, 0, bterms);
  out.brjuno_partial = bs.partial.as_interval();
  out.brjuno_divergent =
      bs.divergent_certified && out.brjuno_partial.lo > policy.divergence_threshold;
  out.brjuno_tail_certified = bs.tail_bound.has_value();

  // Herman side
  int horizon = std::min(policy.horizon, ctx.depth - 2);
  out.herman_h = herman_check_h(ctx, 0, horizon);
  out.herman_y = herman_check_y(ctx, policy.herman_y_threshold, horizon);

  const TailCertificate& tc = stream.tail();
  if (stream.kind() == StreamKind::Periodic) {
    // periodicity reduces the all-starts quantifier to one period
    bool all_sat = true;
    long p = stream.period();
    for (long n0 = 0; n0 < p && all_sat; ++n0) {
      HermanVerdict v = herman_check_h(ctx, (int)n0, std::min(ctx.depth - 2, (int)(n0 + horizon)));
      all_sat = v.kind == HermanVerdict::Kind::SatisfiedAt;
    }
    out.herman_certified_yes = all_sat;
  } else if (stream.kind() == StreamKind::Growth) {
    if (tc.herman_holds_by_growth &&
        out.herman_h.kind == HermanVerdict::Kind::SatisfiedAt)
      out.herman_certified_yes = true;
    if (tc.herman_fails_monotone &&
        out.herman_h.kind == HermanVerdict::Kind::FailedUpTo)
      out.herman_certified_no = true;
    if (out.brjuno_divergent) out.herman_certified_no = true;
  }

  // geometric evidence
  int J = std::min(policy.envelope_J, ctx.depth - 2);
  EnvelopePair pair = profile_limit(ctx, -1, J, policy.resolution, policy.cap,
                                    policy.c12_working);
  out.gap_sup = pair_gap_sup(pair);
  out.gap_bound = pair.gap_bound;
  out.escaped_fraction = pair.lower.escaped_fraction();

  // verdict from certificates only
  if (out.brjuno_divergent) {
    out.verdict = ModelClass::Verdict::CantorBouquet;
    out.reason = "certified divergent Brjuno sum";
  } else if (out.herman_certified_yes) {
    out.verdict = ModelClass::Verdict::JordanCurve;
    out.reason = stream.kind() == StreamKind::Periodic
                     ? "iterate criterion satisfied for a full period of starts"
                     : "iterate criterion satisfied with growth certificate";
  } else if (out.herman_certified_no && out.brjuno_tail_certified) {
    out.verdict = ModelClass::Verdict::HairyCircle;
    out.reason = "convergent Brjuno sum with certified iterate failure";
  } else {
    out.verdict = ModelClass::Verdict::Undetermined;
    out.reason = "no certificate at this depth/horizon";
  }

  // cross-checks: geometry may only demote
  if (out.verdict == ModelClass::Verdict::JordanCurve &&
      std::isfinite(out.gap_bound) && out.gap_sup > 3.0 * out.gap_bound + 1e-12) {
    out.verdict = ModelClass::Verdict::Undetermined;
    out.reason = "envelope gap exceeds its certified bound";
  }
  if (out.verdict == ModelClass::Verdict::CantorBouquet &&
      out.brjuno_partial.lo <= policy.divergence_threshold) {
    out.verdict = ModelClass::Verdict::Undetermined;
    out.reason = "partial sums below the divergence threshold";
  }
  return out;
}

// ---- serialization ---------------------------------------------------------

namespace {

std::string herman_json(const HermanVerdict& v) {
  std::string kind = v.kind == HermanVerdict::Kind::SatisfiedAt ? "SatisfiedAt"
                     : v.kind == HermanVerdict::Kind::FailedUpTo ? "FailedUpTo"
                                                                 : "UnresolvedUpTo";
  std::string out = "{\"kind\":" + json_str(kind);
  out += ",\"index\":" + std::to_string(v.index);
  out += ",\"witness\":" + json_double_array(v.witness);
  out += ",\"bounds\":" + json_double_array(v.bounds);
  out += "}";
  return out;
}

}  // namespace

std::string GapProfile::to_json() const {
  std::string out = "{";
  out += "\"normalization\":" +
         json_str(normalization == Normalization::HairyCircle ? "HairyCircle" : "Bouquet");
  out += ",\"resolution\":" + std::to_string(resolution);
  out += ",\"err\":" + json_str(fmt_double(err));
  out += ",\"gap_bound_r\":" + json_str(fmt_double(gap_bound_r));
  out += ",\"stream_hash\":" + json_str(stream_hash);
  out += ",\"inner\":" + json_double_array(inner);
  out += ",\"outer\":" + json_double_array(outer);
  out += ",\"capped\":" + json_u8_array(capped);
  out += "}";
  return out;
}

std::string ValidationReport::to_json() const {
  std::string out = "{";
  out += "\"min_set_window\":" + json_str(fmt_double(min_set_window));
  out += ",\"complement_window\":" + json_str(fmt_double(complement_window));
  out += ",\"limsup_defect\":" + json_str(fmt_double(limsup_defect));
  out += ",\"degenerate_all_minimal\":" +
         std::string(degenerate_all_minimal ? "true" : "false");
  out += ",\"minimal_count\":" + std::to_string(minimal_count);
  out += ",\"capped_count\":" + std::to_string(capped_count);
  out += "}";
  return out;
}

std::string ModelClass::to_json() const {
  std::string out = "{";
  out += "\"verdict\":" + json_str(verdict_name(verdict));
  out += ",\"reason\":" + json_str(reason);
  out += ",\"stream\":" + json_str(stream_spec);
  out += ",\"policy\":{";
  out += "\"depth\":" + std::to_string(policy.depth);
  out += ",\"guard\":" + std::to_string(policy.guard);
  out += ",\"horizon\":" + std::to_string(policy.horizon);
  out += ",\"envelope_J\":" + std::to_string(policy.envelope_J);
  out += ",\"resolution\":" + std::to_string(policy.resolution);
  out += ",\"cap\":" + json_str(fmt_double(policy.cap));
  out += ",\"c12_working\":" + json_str(fmt_double(policy.c12_working));
  out += ",\"herman_y_threshold\":" + json_str(fmt_double(policy.herman_y_threshold));
  out += ",\"divergence_threshold\":" + json_str(fmt_double(policy.divergence_threshold));
  out += ",\"brjuno_terms\":" + std::to_string(policy.brjuno_terms);
  out += "}";
  out += ",\"brjuno\":{\"partial\":" + json_interval(brjuno_partial);
  out += ",\"divergent\":" + std::string(brjuno_divergent ? "true" : "false");
  out += ",\"tail_certified\":" + std::string(brjuno_tail_certified ? "true" : "false");
  out += "}";
  out += ",\"herman\":{\"iterate\":" + herman_json(herman_h);
  out += ",\"halfplane\":" + herman_json(herman_y);
  out += ",\"certified_yes\":" + std::string(herman_certified_yes ? "true" : "false");
  out += ",\"certified_no\":" + std::string(herman_certified_no ? "true" : "false");
  out += "}";
  out += ",\"gap\":{\"sup\":" + json_str(fmt_double(gap_sup));
  out += ",\"bound\":" + json_str(fmt_double(gap_bound));
  out += ",\"escaped_fraction\":" + json_str(fmt_double(escaped_fraction));
  out += "}";
  out += "}";
  return out;
}

}  // namespace aalpha
