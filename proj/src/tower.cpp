#include "aalpha/tower.hpp"

#include <cstdio>

namespace aalpha {

namespace {

constexpr double kLowerable = 709.0;  // exp(709) still fits in double
const double kInf = std::numeric_limits<double>::infinity();

double sat_exp_dn(double x, int k) {
  double t = x;
  for (int i = 0; i < k; ++i) {
    if (t > kLowerable) return std::numeric_limits<double>::max();
    t = detail::dn(std::exp(t));
  }
  return t;
}

double sat_exp_up(double x, int k) {
  double t = x;
  for (int i = 0; i < k; ++i) {
    t = std::exp(t);
    if (std::isinf(t)) return kInf;
    t = detail::up(t);
  }
  return t;
}

// exp^k1(x1) <= exp^k2(x2), endpoint scalars.
bool value_le(int k1, double x1, int k2, double x2) {
  while (k1 > 0 && k2 > 0) { --k1; --k2; }
  if (k1 == 0 && k2 == 0) return x1 <= x2;
  if (k1 == 0) {
    double t = sat_exp_dn(x2, k2);
    return x1 <= t;  // t saturates at DBL_MAX; finite x1 still compares soundly
  }
  double t = sat_exp_up(x1, k1);
  return t <= x2;
}

bool value_lt(int k1, double x1, int k2, double x2) {
  while (k1 > 0 && k2 > 0) { --k1; --k2; }
  if (k1 == 0 && k2 == 0) return x1 < x2;
  if (k1 == 0) return x1 < sat_exp_dn(x2, k2);
  return sat_exp_up(x1, k1) < x2;
}

// Widen hi by a factor <= 2 at value level; sound for any positive tower.
void widen_hi_x2(Tower& t) {
  if (t.k == 0) {
    t.m.hi = detail::up(t.m.hi * 2.0);
    if (std::isinf(t.m.hi)) { t.k = 1; t.m.hi = kLowerable + 1.0; }
    return;
  }
  if (t.k == 1) {
    t.m.hi = detail::up(t.m.hi + 0.6932);
    return;
  }
  // k >= 2: adding log2 one level down is far below one ulp of m.hi > 709.
  t.m.hi = detail::up(detail::up(t.m.hi));
}

// Shrink lo by a factor >= 1/2 at value level.
void widen_lo_half(Tower& t) {
  if (t.k == 0) {
    t.m.lo = detail::dn(t.m.lo * 0.5);
    return;
  }
  if (t.k == 1) {
    t.m.lo = detail::dn(t.m.lo - 0.6932);
    return;
  }
  t.m.lo = detail::dn(detail::dn(t.m.lo));
}

}  // namespace

Interval Tower::as_interval() const {
  if (k == 0) return m;
  return {sat_exp_dn(m.lo, k), sat_exp_up(m.hi, k)};
}

void Tower::normalize() {
  while (k > 0 && m.hi <= kLowerable) {
    m = iexp(m);
    --k;
  }
}

std::string Tower::str() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "exp^%d(%s)", k, to_string(m).c_str());
  return buf;
}

bool certainly_lt(const Tower& a, const Tower& b) {
  return value_lt(a.k, a.m.hi, b.k, b.m.lo);
}
bool certainly_le(const Tower& a, const Tower& b) {
  return value_le(a.k, a.m.hi, b.k, b.m.lo);
}
bool overlaps(const Tower& a, const Tower& b) {
  return !certainly_lt(a, b) && !certainly_lt(b, a);
}

Tower texp(const Tower& a) {
  // lo may underflow to 0; that is still a valid enclosure
  if (a.k == 0 && a.m.hi <= kLowerable) return Tower(iexp(a.m));
  return Tower(a.k + 1, a.m);
}

Tower tlog(const Tower& a) {
  if (a.k >= 1) {
    Tower r(a.k - 1, a.m);
    return r;
  }
  return Tower(ilog(a.m));
}

Tower thull(const Tower& a, const Tower& b) {
  if (a.k == 0 && b.k == 0) return Tower(hull(a.m, b.m));
  // Positive scales only from here on; lift both to the same height.
  Tower x = a, y = b;
  while (x.k < y.k) x = Tower(x.k + 1, ilog(x.m));
  while (y.k < x.k) y = Tower(y.k + 1, ilog(y.m));
  return Tower(x.k, hull(x.m, y.m));
}

Tower tadd(const Tower& a, const Tower& b) {
  if (a.is_inf() || b.is_inf()) return Tower::inf();
  if (a.k == 0 && b.k == 0) {
    Interval r = a.m + b.m;
    if (!std::isinf(r.hi)) return Tower(r);
    // positive overflow: redo through logs
    if (a.m.lo > 0.0 && b.m.lo > 0.0) {
      Tower big = certainly_le(a, b) ? b : a;
      widen_hi_x2(big);
      Tower lo_part(Interval(std::max(a.m.lo, b.m.lo), std::max(a.m.lo, b.m.lo)));
      return thull(lo_part, big);
    }
    return Tower(r);  // saturated endpoint, still an enclosure
  }
  // A genuine tower plus something: a+b is between max(a,b) and 2*max(a,b)
  // provided both are nonnegative; a small negative addend is absorbed by
  // halving the lower endpoint.
  const Tower& big = certainly_le(a, b) ? b : a;
  const Tower& small = certainly_le(a, b) ? a : b;
  Tower r = big;
  bool small_nonneg = (small.k >= 1) || small.m.lo >= 0.0;
  if (small_nonneg) {
    widen_hi_x2(r);
    // lower bound max(a,b).lo is already r.m.lo
    return r;
  }
  // small may be negative; sound as long as |small| <= big.lo/2 at value level
  Tower abs_small(iabs(small.m));
  Tower half = big;
  widen_lo_half(half);
  if (certainly_le(abs_small, half)) {
    Tower out = big;
    widen_lo_half(out);
    widen_hi_x2(out);
    return out;
  }
  // fall back to saturated plain arithmetic
  return Tower(big.as_interval() + small.as_interval());
}

Tower tsub(const Tower& a, const Tower& b) {
  if (a.k == 0 && b.k == 0) return Tower(a.m - b.m);
  // a - b with b dominated: result in [a.lo/2, a.hi]
  Tower half = a;
  widen_lo_half(half);
  bool b_nonneg = (b.k >= 1) || b.m.lo >= 0.0;
  if (b_nonneg && certainly_le(b, half)) {
    Tower out = a;
    widen_lo_half(out);
    return out;
  }
  if (!b_nonneg && a.k >= 1) {
    // subtracting a (possibly negative) plain value: bounded by add of |b|
    Tower abs_b(iabs(b.m));
    if (certainly_le(abs_b, half)) {
      Tower out = a;
      widen_lo_half(out);
      widen_hi_x2(out);
      return out;
    }
  }
  return Tower(a.as_interval() - b.as_interval());
}

Tower tmul(const Tower& a, const Tower& b) {
  if (a.k == 0 && b.k == 0) {
    Interval r = a.m * b.m;
    if (!std::isinf(r.hi) && !std::isinf(r.lo)) return Tower(r);
    if (a.m.lo > 0.0 && b.m.lo > 0.0)
      return texp(tadd(Tower(ilog(a.m)), Tower(ilog(b.m))));
    return Tower(r);
  }
  return texp(tadd(tlog(a), tlog(b)));
}

}  // namespace aalpha
