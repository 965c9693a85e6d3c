#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace aalpha {

// Closed interval with double endpoints. All arithmetic rounds outward by one
// ulp per operation, so every op is a valid enclosure of the exact image.
// Division by an interval containing 0 and log of an interval touching 0
// saturate to infinite endpoints rather than throwing.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double x) : lo(x), hi(x) {}
  Interval(double l, double h) : lo(l), hi(h) {}

  static Interval whole() {
    return {-std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
  }

  double mid() const {
    if (std::isinf(lo) || std::isinf(hi)) return std::isinf(lo) ? hi : lo;
    return 0.5 * (lo + hi);
  }
  double width() const { return hi - lo; }
  double rad() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool is_point() const { return lo == hi; }
  bool valid() const { return lo <= hi && !std::isnan(lo) && !std::isnan(hi); }

  // Certified order: true only when every point of *this relates to every
  // point of rhs.
  bool certainly_lt(const Interval& o) const { return hi < o.lo; }
  bool certainly_le(const Interval& o) const { return hi <= o.lo; }
  bool certainly_ge(const Interval& o) const { return lo >= o.hi; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

namespace detail {
inline double dn(double x) {
  if (std::isinf(x)) return x;
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
  if (std::isinf(x)) return x;
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace detail

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}
inline Interval hull(const Interval& a, double x) {
  return {std::min(a.lo, x), std::max(a.hi, x)};
}

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator+(const Interval& a, const Interval& b) {
  return {detail::dn(a.lo + b.lo), detail::up(a.hi + b.hi)};
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return {detail::dn(a.lo - b.hi), detail::up(a.hi - b.lo)};
}

Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, double s) { return a + Interval(s); }
inline Interval operator+(double s, const Interval& a) { return Interval(s) + a; }
inline Interval operator-(const Interval& a, double s) { return a - Interval(s); }
inline Interval operator-(double s, const Interval& a) { return Interval(s) - a; }
inline Interval operator*(const Interval& a, double s) { return a * Interval(s); }
inline Interval operator*(double s, const Interval& a) { return Interval(s) * a; }
inline Interval operator/(const Interval& a, double s) { return a / Interval(s); }
inline Interval operator/(double s, const Interval& a) { return Interval(s) / a; }

// Reciprocal; an argument containing 0 yields infinite endpoints.
Interval recip(const Interval& a);
Interval sqr(const Interval& a);
Interval isqrt(const Interval& a);
Interval iexp(const Interval& a);
// log saturates: lo <= 0 maps the lower endpoint to -inf.
Interval ilog(const Interval& a);
Interval ilog1p(const Interval& a);
Interval iexpm1(const Interval& a);
Interval iabs(const Interval& a);

// cos(pi*u) and sin(pi*u) as interval maps; argument in units of pi so the
// range reduction is exact for |u| < 2^52.
Interval cospi(const Interval& u);
Interval sinpi(const Interval& u);
double cospi(double u);
double sinpi(double u);

// Fractional part {x} in [0,1). For intervals of width >= 1 returns [0,1].
Interval ifrac(const Interval& a);

// pi as a two-sided enclosure.
Interval ipi();

std::string to_string(const Interval& a);

}  // namespace aalpha
