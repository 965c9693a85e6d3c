#include "aalpha/interval.hpp"

#include <cstdio>

namespace aalpha {

using detail::dn;
using detail::up;

Interval operator*(const Interval& a, const Interval& b) {
  double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  // 0 * inf produces NaN; such products contribute 0 to the exact hull.
  auto fix = [](double x) { return std::isnan(x) ? 0.0 : x; };
  p1 = fix(p1); p2 = fix(p2); p3 = fix(p3); p4 = fix(p4);
  return {dn(std::min(std::min(p1, p2), std::min(p3, p4))),
          up(std::max(std::max(p1, p2), std::max(p3, p4)))};
}

Interval recip(const Interval& a) {
  if (a.lo <= 0.0 && a.hi >= 0.0) {
    if (a.lo == 0.0 && a.hi == 0.0) return Interval::whole();
    if (a.lo == 0.0) return {dn(1.0 / a.hi), std::numeric_limits<double>::infinity()};
    if (a.hi == 0.0) return {-std::numeric_limits<double>::infinity(), up(1.0 / a.lo)};
    return Interval::whole();
  }
  return {dn(1.0 / a.hi), up(1.0 / a.lo)};
}

Interval operator/(const Interval& a, const Interval& b) { return a * recip(b); }

Interval sqr(const Interval& a) {
  double l = std::abs(a.lo), h = std::abs(a.hi);
  double mn = std::min(l, h), mx = std::max(l, h);
  if (a.lo <= 0.0 && a.hi >= 0.0) mn = 0.0;
  return {dn(mn * mn), up(mx * mx)};
}

Interval isqrt(const Interval& a) {
  double l = a.lo < 0.0 ? 0.0 : a.lo;
  return {dn(std::sqrt(l)), up(std::sqrt(a.hi))};
}

Interval iexp(const Interval& a) {
  return {dn(std::exp(a.lo)), up(std::exp(a.hi))};
}

Interval ilog(const Interval& a) {
  double l = a.lo <= 0.0 ? -std::numeric_limits<double>::infinity() : dn(std::log(a.lo));
  double h = a.hi <= 0.0 ? -std::numeric_limits<double>::infinity() : up(std::log(a.hi));
  return {l, h};
}

Interval ilog1p(const Interval& a) {
  double l = a.lo <= -1.0 ? -std::numeric_limits<double>::infinity() : dn(std::log1p(a.lo));
  return {l, up(std::log1p(a.hi))};
}

Interval iexpm1(const Interval& a) { return {dn(std::expm1(a.lo)), up(std::expm1(a.hi))}; }

Interval iabs(const Interval& a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return -a;
  return {0.0, std::max(-a.lo, a.hi)};
}

double sinpi(double u) {
  // Exact range reduction on the integer lattice keeps tiny arguments tiny.
  double r = std::fmod(u, 2.0);     // r in (-2, 2)
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;           // r in [-1, 1]
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;       // r in [-1/2, 1/2], sin unchanged
  if (r == 0.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(3.14159265358979323846 * r);
}

double cospi(double u) { return sinpi(u + 0.5); }

Interval cospi(const Interval& u) {
  if (!(u.hi - u.lo < 2.0)) return {-1.0, 1.0};
  double va = cospi(u.lo), vb = cospi(u.hi);
  double lo = std::min(va, vb), hi = std::max(va, vb);
  // Interior extrema of cos(pi u) sit at integers u = k.
  for (double k = std::ceil(u.lo); k <= u.hi; k += 1.0) {
    double v = (std::fmod(k, 2.0) == 0.0) ? 1.0 : -1.0;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // One-ulp outward slack for the libm endpoint evaluations.
  return {std::max(-1.0, dn(lo)), std::min(1.0, up(hi))};
}

Interval sinpi(const Interval& u) {
  if (!(u.hi - u.lo < 2.0)) return {-1.0, 1.0};
  double va = sinpi(u.lo), vb = sinpi(u.hi);
  double lo = std::min(va, vb), hi = std::max(va, vb);
  // Interior extrema of sin(pi u) sit at half-integers u = m + 1/2.
  double k = std::floor(u.lo - 0.5) + 1.5;  // smallest half-integer > u.lo... or equal
  if (k - 1.0 >= u.lo) k -= 1.0;
  for (; k <= u.hi; k += 1.0) {
    double m = k - 0.5;
    double v = (std::fmod(m, 2.0) == 0.0) ? 1.0 : -1.0;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {std::max(-1.0, dn(lo)), std::min(1.0, up(hi))};
}

Interval ifrac(const Interval& a) {
  if (!(a.hi - a.lo < 1.0)) return {0.0, 1.0};
  double fl = a.lo - std::floor(a.lo);
  double fh = a.hi - std::floor(a.hi);
  if (fh < fl) return {0.0, 1.0};  // wraps an integer
  return {fl, up(fh)};
}

Interval ipi() {
  const double p = 3.14159265358979323846;
  return {dn(p), up(p)};
}

std::string to_string(const Interval& a) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", a.lo, a.hi);
  return buf;
}

}  // namespace aalpha
