#pragma once

#include "aalpha/interval.hpp"

#include <string>

namespace aalpha {

// Saturating enclosure for magnitudes beyond double range.
//
// A Tower holds an integer height k >= 0 and an interval m, and represents
// the interval exp^k(m) (k-fold exponential applied endpoint-wise). Height 0
// is plain interval arithmetic and may be negative; heights >= 1 represent
// values that can dwarf DBL_MAX, e.g. digit logarithms of hyper-exponential
// growth laws. Normalization keeps heights minimal: whenever exp(m) fits in
// double range the height is lowered, so plain-scale values always compare
// and combine exactly as Interval would.
//
// Additions and subtractions absorb a dominated operand into a certified
// widening of the dominant one; all operations produce valid enclosures.
struct Tower {
  int k = 0;
  Interval m;

  Tower() = default;
  explicit Tower(double x) : k(0), m(x) {}
  explicit Tower(const Interval& iv) : k(0), m(iv) {}
  Tower(int kk, const Interval& mm) : k(kk), m(mm) { normalize(); }

  static Tower inf() {
    return Tower(0, Interval(std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()));
  }

  bool plain() const { return k == 0; }
  bool is_inf() const { return k == 0 && std::isinf(m.lo) && m.lo > 0; }

  // Plain-interval view; saturates to [DBL_MAX, inf] when the value exceeds
  // double range.
  Interval as_interval() const;

  // Lower both endpoints' height as far as representable.
  void normalize();

  std::string str() const;
};

// value-level comparisons (certified; ties at equal enclosures are not decided)
bool certainly_lt(const Tower& a, const Tower& b);
bool certainly_le(const Tower& a, const Tower& b);
bool overlaps(const Tower& a, const Tower& b);

Tower texp(const Tower& a);
// log of a (certified positive) tower; raises the plain log for k == 0.
Tower tlog(const Tower& a);
Tower tadd(const Tower& a, const Tower& b);
Tower tsub(const Tower& a, const Tower& b);   // a - b
Tower tmul(const Tower& a, const Tower& b);   // both certainly positive unless plain
Tower thull(const Tower& a, const Tower& b);

}  // namespace aalpha
