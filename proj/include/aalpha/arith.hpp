#pragma once

#include "aalpha/cfrac.hpp"
#include "aalpha/interval.hpp"
#include "aalpha/tower.hpp"

#include <optional>
#include <vector>

namespace aalpha {

// Partial Brjuno sum at a base level: sum_{k=0}^{m-1} w_{k-1} log(1/alpha_{n+k})
// with w_{k-1} the product of the k alphas above the base (w_{-1} = 1).
struct BrjunoSum {
  int base_level = 0;
  int term_count = 0;
  Tower partial;                    // tower-capable running enclosure
  std::vector<Interval> terms;      // plain (saturated) views of each term
  std::optional<Interval> tail_bound;
  bool divergent_certified = false; // source certifies B = +inf

  // Plain view of partial + tail (upper endpoint +inf without a certificate).
  Interval enclosure_with_tail() const;
};

BrjunoSum brjuno(const AlphaContext& ctx, int base_n, int term_count);

// Full B(alpha_n) enclosure for comparisons: lower = partial, upper = partial
// plus certified tail (or +inf when the source carries no tail certificate).
struct BrjunoEnclosure {
  Tower lo;
  Tower hi;           // is_inf() when no finite certificate exists
  bool divergent = false;
};

BrjunoEnclosure brjuno_enclosure(const AlphaContext& ctx, int n, int budget);

// Yoccoz's comparison maps. h is the C^1 junction of e^y with the linear
// continuation of slope 1/alpha above y = log(1/alpha); g is its inverse.
double yoccoz_h(double alpha, double y);
double yoccoz_g(double alpha, double y);  // throws NonPositiveInput for y <= 0
Interval yoccoz_h(const Interval& alpha, const Interval& y);
Interval yoccoz_g(const Interval& alpha, const Interval& y);
Tower yoccoz_h_tower(const Interval& alpha, const Tower& log_alpha_inv, const Tower& v);

struct HermanVerdict {
  enum class Kind { SatisfiedAt, FailedUpTo, UnresolvedUpTo } kind;
  long index = 0;                 // witness m, or the horizon M
  std::vector<double> witness;    // compared values per step (saturated midpoints)
  std::vector<double> bounds;     // the B enclosult midpoints they were compared to
};

// Iterates v_n = 0, v_{k+1} = h_{alpha_k}(v_k), certified against B(alpha_m)
// enclosures. Satisfied requires the iterate's lower bound to dominate the
// upper B enclosure; overlapping enclosures stay unresolved.
HermanVerdict herman_check_h(const AlphaContext& ctx, int start_n, int horizon_M);

// Equivalent criterion through the half-plane maps: composite image of the
// purely imaginary seed i B(alpha_{m+1})/(2pi), compared against x.
HermanVerdict herman_check_y(const AlphaContext& ctx, double threshold_x, int horizon_M);

// |2pi Im Y_n ... Y_m(i y / 2pi)  -  g_{alpha_n} ... g_{alpha_m}(y)|.
// Throws NonPositiveInput when the g chain leaves (0, inf).
double y_vs_g_discrepancy(const AlphaContext& ctx, int n, int m, double y);

}  // namespace aalpha
