#include "aalpha/arith.hpp"

#include "aalpha/ymap.hpp"

#include <algorithm>
#include <cmath>

namespace aalpha {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Interval intersect_or(const Interval& a, const Interval& b) {
  double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo <= hi) return {lo, hi};
  return b;  // disjoint only through saturation artifacts; trust the certificate
}

// Closed-form B(alpha_j) for periodic streams: one period of weighted terms
// plus the same sum geometrically repeated, B = S_p / (1 - w_p).
Interval periodic_closed_form(const AlphaContext& ctx, int j) {
  int p = (int)ctx.stream.period();
  if (p == 0) raise(Errc::ConfigError, "closed form needs a periodic stream");
  if (ctx.depth < j + p)
    raise(Errc::DepthExhausted, "periodic closed form needs a full period");
  Interval sum(0.0);
  Interval w(1.0);
  for (int k = 0; k < p; ++k) {
    Interval L = ctx.log_alpha_inv[(size_t)(j + k)].as_interval();
    sum = sum + w * L;
    w = w * ctx.alpha[(size_t)(j + k)];
  }
  Interval denom = Interval(1.0) - w;
  return sum / denom;
}

}  // namespace

Interval BrjunoSum::enclosure_with_tail() const {
  Interval p = partial.as_interval();
  if (divergent_certified) return {p.lo, kInf};
  if (tail_bound) return {p.lo, detail::up(p.hi + tail_bound->hi)};
  return {p.lo, kInf};
}

BrjunoSum brjuno(const AlphaContext& ctx, int base_n, int term_count) {
  if (base_n < 0 || term_count < 1) raise(Errc::ConfigError, "bad brjuno arguments");
  if (ctx.depth < base_n + term_count)
    raise(Errc::DepthExhausted,
          "need " + std::to_string(base_n + term_count) + " levels, have " +
              std::to_string(ctx.depth));

  const TailCertificate& tc = ctx.stream.tail();
  BrjunoSum out;
  out.base_level = base_n;
  out.term_count = term_count;
  out.divergent_certified = (tc.brjuno == TailCertificate::Brjuno::Divergent);

  Tower partial(0.0);
  Tower wsum(0.0);  // log of 1/weight accumulated along the base
  for (int k = 0; k < term_count; ++k) {
    const Tower& L = ctx.log_alpha_inv[(size_t)(base_n + k)];
    Tower term = texp(tsub(tlog(L), wsum));
    if (out.divergent_certified && base_n + k >= tc.min_term_from) {
      Interval cert(tc.min_term, tc.max_term);
      Interval got = term.as_interval();
      term = Tower(intersect_or(got, cert));
    }
    partial = tadd(partial, term);
    out.terms.push_back(term.as_interval());
    wsum = tadd(wsum, L);
  }
  out.partial = partial;

  // tail certificates
  if (ctx.stream.kind() == StreamKind::Periodic &&
      ctx.depth >= base_n + term_count + (int)ctx.stream.period()) {
    // weight at the cut times the closed-form remainder value
    Interval w(1.0);
    for (int k = 0; k < term_count; ++k) w = w * ctx.alpha[(size_t)(base_n + k)];
    Interval rem = periodic_closed_form(ctx, base_n + term_count);
    out.tail_bound = w * rem;
  } else if (tc.brjuno == TailCertificate::Brjuno::GeometricTail &&
             base_n + term_count - 1 >= tc.geo_from && tc.geo_ratio < 1.0) {
    Interval last = out.terms.back();
    double hi = detail::up(last.hi * tc.geo_ratio / (1.0 - tc.geo_ratio));
    if (!std::isfinite(hi)) hi = kInf;
    out.tail_bound = Interval(0.0, hi);
  }
  return out;
}

BrjunoEnclosure brjuno_enclosure(const AlphaContext& ctx, int n, int budget) {
  int terms = std::min(budget, ctx.depth - n);
  if (terms < 1) raise(Errc::DepthExhausted, "no terms available at base " + std::to_string(n));
  BrjunoSum s = brjuno(ctx, n, terms);
  BrjunoEnclosure out;
  out.divergent = s.divergent_certified;
  out.lo = s.partial;
  if (s.tail_bound && !s.divergent_certified) {
    out.hi = tadd(s.partial, Tower(*s.tail_bound));
  } else {
    out.hi = Tower::inf();
  }
  return out;
}

// ---- Yoccoz maps -----------------------------------------------------------

double yoccoz_h(double alpha, double y) {
  double L = std::log(1.0 / alpha);
  if (y >= L) return (y - L + 1.0) / alpha;
  return std::exp(y);
}

double yoccoz_g(double alpha, double y) {
  if (!(y > 0.0)) raise(Errc::NonPositiveInput, "g is defined on (0, inf)");
  double ia = 1.0 / alpha;
  if (y >= ia) return alpha * y + std::log(ia) - 1.0;
  return std::log(y);
}

Interval yoccoz_h(const Interval& alpha, const Interval& y) {
  Interval L = ilog(recip(alpha));
  Interval lin = recip(alpha) * (y - L + 1.0);
  Interval expb = iexp(y);
  if (y.lo >= L.hi) return lin;
  if (y.hi <= L.lo) return expb;
  // straddling the junction: h is sandwiched by y+1 and e^y
  return hull(y + 1.0, expb);
}

Interval yoccoz_g(const Interval& alpha, const Interval& y) {
  if (!(y.lo > 0.0)) raise(Errc::NonPositiveInput, "g is defined on (0, inf)");
  Interval ia = recip(alpha);
  Interval lin = alpha * y + ilog(ia) - 1.0;
  Interval logb = ilog(y);
  if (y.lo >= ia.hi) return lin;
  if (y.hi <= ia.lo) return logb;
  return hull(lin, logb);
}

Tower yoccoz_h_tower(const Interval& alpha, const Tower& log_alpha_inv, const Tower& v) {
  const Tower& L = log_alpha_inv;
  bool below = certainly_le(v, L);
  bool above = certainly_le(L, v);
  if (below && !above) return texp(v);
  if (above && !below) {
    Tower shifted = tadd(tsub(v, L), Tower(1.0));
    return tmul(shifted, texp(L));
  }
  // straddling: bounded by y+1 below and e^y above
  (void)alpha;
  return thull(tadd(v, Tower(1.0)), texp(v));
}

// ---- Herman criterion ------------------------------------------------------

HermanVerdict herman_check_h(const AlphaContext& ctx, int start_n, int horizon_M) {
  if (start_n < 0 || horizon_M <= start_n)
    raise(Errc::ConfigError, "need horizon > start >= 0");
  if (ctx.depth < horizon_M + 1)
    raise(Errc::DepthExhausted, "context depth below horizon + budget");

  HermanVerdict out{HermanVerdict::Kind::UnresolvedUpTo, horizon_M, {}, {}};
  Tower v(0.0);
  bool all_below = true;
  for (int m = start_n + 1; m <= horizon_M; ++m) {
    v = yoccoz_h_tower(ctx.alpha[(size_t)(m - 1)], ctx.log_alpha_inv[(size_t)(m - 1)], v);
    BrjunoEnclosure B = brjuno_enclosure(ctx, m, ctx.depth - m);
    out.witness.push_back(v.as_interval().mid());
    out.bounds.push_back(B.lo.as_interval().mid());
    if (!B.hi.is_inf() && certainly_le(B.hi, v)) {
      out.kind = HermanVerdict::Kind::SatisfiedAt;
      out.index = m;
      return out;
    }
    if (!certainly_lt(v, B.lo)) all_below = false;
  }
  out.kind = all_below ? HermanVerdict::Kind::FailedUpTo : HermanVerdict::Kind::UnresolvedUpTo;
  out.index = horizon_M;
  return out;
}

namespace {

// One certified composite step: t' = 2 pi Im Y_{alpha_k}(i t / 2 pi).
Tower y_imag_step(const AlphaContext& ctx, int k, const Tower& t) {
  const Interval& r = ctx.alpha[(size_t)k];
  const Tower& L = ctx.log_alpha_inv[(size_t)k];
  const Interval two_pi = 2.0 * ipi();
  if (t.plain() && t.m.hi <= 1e15) {
    Interval y = t.m / two_pi;
    if (y.lo < -1.0) y.lo = -1.0;
    Interval im = y_imag_certified(r, L, r, y);
    return Tower(im * two_pi);
  }
  // tower-scale height: the image tracks the inverse comparison map within
  // additive envelopes derived from the modulus bounds
  //   r t <= |num| <= 4 pi r + e r t   (t <= 1/r)
  //   0.63 <= |e^{-3 pi r - r t} - e^{-i pi r}| <= 1.37   (t >= 1/r),
  // with pi r / 2 <= |den| <= 4 pi r throughout.
  Tower inv_r = texp(L);
  bool logb = certainly_le(t, inv_r);
  bool linb = certainly_le(inv_r, t);
  Tower log_path = tadd(tlog(t), Tower(Interval(-2.54, 2.29)));
  if (logb && !linb) return log_path;
  Tower at = texp(tsub(tlog(t), L));
  Tower lin_path = tadd(tadd(at, L), Tower(Interval(-2.99, -0.14)));
  if (linb && !logb) return lin_path;
  return thull(log_path, lin_path);
}

}  // namespace

HermanVerdict herman_check_y(const AlphaContext& ctx, double threshold_x, int horizon_M) {
  if (!(threshold_x > 0.0)) raise(Errc::ConfigError, "threshold must be positive");
  if (ctx.depth < horizon_M + 2)
    raise(Errc::DepthExhausted, "context depth below horizon + 2");
  const Interval two_pi = 2.0 * ipi();
  Interval gate = two_pi * Interval(threshold_x);

  HermanVerdict out{HermanVerdict::Kind::UnresolvedUpTo, horizon_M, {}, {}};
  bool all_above = true;
  for (int m = 0; m <= horizon_M; ++m) {
    BrjunoEnclosure B = brjuno_enclosure(ctx, m + 1, ctx.depth - (m + 1));
    if (B.divergent) {
      // seed is +inf: by convention the composite is never certified <= x here
      out.witness.push_back(kInf);
      out.bounds.push_back(B.lo.as_interval().mid());
      continue;
    }
    Tower t = thull(B.lo, B.hi);
    if (t.plain() && std::isinf(t.m.hi)) {
      // no tail certificate: unresolved at this m
      all_above = false;
      out.witness.push_back(t.m.lo / 6.283185307179586);
      out.bounds.push_back(B.lo.as_interval().mid());
      continue;
    }
    for (int k = m; k >= 0; --k) t = y_imag_step(ctx, k, t);
    Interval ti = t.as_interval();
    out.witness.push_back(ti.mid() / 6.283185307179586);
    out.bounds.push_back(B.lo.as_interval().mid());
    if (ti.hi <= gate.lo) {
      out.kind = HermanVerdict::Kind::SatisfiedAt;
      out.index = m;
      return out;
    }
    if (!(ti.lo > gate.hi)) all_above = false;
  }
  out.kind = all_above ? HermanVerdict::Kind::FailedUpTo : HermanVerdict::Kind::UnresolvedUpTo;
  out.index = horizon_M;
  return out;
}

double y_vs_g_discrepancy(const AlphaContext& ctx, int n, int m, double y) {
  if (!(m > n && n >= 0)) raise(Errc::ConfigError, "need m > n >= 0");
  if (!(y >= 1.0)) raise(Errc::DomainViolation, "y must be >= 1");
  if (ctx.depth < m + 1) raise(Errc::DepthExhausted, "levels beyond context depth");
  double g = y;
  double im = y / 6.283185307179586476925287;
  for (int k = m; k >= n; --k) {
    double a = ctx.alpha[(size_t)k].mid();
    if (a < 1e-10)
      raise(Errc::DomainViolation, "level map parameter below plain precision");
    g = yoccoz_g(a, g);
    im = y_imag_theta(a, a, im);
  }
  return std::abs(6.283185307179586476925287 * im - g);
}

}  // namespace aalpha
