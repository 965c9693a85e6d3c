#pragma once

#include "aalpha/arith.hpp"
#include "aalpha/cfrac.hpp"
#include "aalpha/interval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aalpha {

// Grid sampling of a level's lower-boundary function.
//
// Boundary functions repeat with period one across their full domain
// [0, 1/alpha_n], so profiles are stored on the fundamental domain [0, 1]
// (resolution + 1 samples); alpha_inv records the true domain length, which
// exceeds double range for hyper-exponential streams. Sample i carries an
// enclosure [values[i] - errs[i], values[i] + errs[i]] of the true boundary
// height at i/resolution, with two qualifications:
//   escaped[i]   certifies height >= cap; values[i] is then a lower bound
//   unbounded[i] no finite upper bound is tracked at this sample
struct BoundaryProfile {
  int level = 0;
  int depth = 0;
  int resolution = 0;
  Interval alpha_inv{1.0, 1.0};
  double cap = 50.0;
  bool upper_kind = false;  // profile bounds the upper function h* from above
  std::vector<double> values;
  std::vector<double> errs;
  std::vector<uint8_t> escaped;
  std::vector<uint8_t> unbounded;
  std::string stream_hash;

  size_t samples() const { return values.size(); }
  double err_max() const;
  double max_value() const;              // over non-escaped samples
  double escaped_fraction() const;
  // plain linear interpolation of values at reduced position s in [0, 1]
  double at(double s) const;

  std::string to_json() const;
  static BoundaryProfile from_json(const std::string& text);
};

// Bracketing pair: lower approximates the increasing limit h_n from below,
// upper dominates the upper regularization h_n^* (given an adequate seed
// constant; adequacy is monitored by max_vs_brjuno sweeps, not assumed).
struct EnvelopePair {
  BoundaryProfile lower;
  BoundaryProfile upper;
  double gap_bound = 0.0;  // certified noise scale of (upper - lower)
};

// Depth-0 profile: the region is the full half-plane strip, boundary -1.
BoundaryProfile profile_base(const AlphaContext& ctx, int n, int resolution,
                             double cap = 50.0);

// One pullback step: profile at level n (depth child.depth + 1) from the
// profile at level n + 1, per-sample through the vertical-line images.
BoundaryProfile profile_refine(const AlphaContext& ctx, int n,
                               const BoundaryProfile& child,
                               double c12_working = 2.0);

// J-fold refinement from level n + J down to n plus the dominated upper
// envelope seeded at the Brjuno-based level bound.
EnvelopePair profile_limit(const AlphaContext& ctx, int n, int J, int resolution,
                           double cap = 50.0, double c12_working = 2.0);

struct EndpointMark {
  double angle = 0.0;   // x_m = {m alpha_n}
  Interval bracket;     // envelope heights at the angle
  bool escaped = false;
};

// Orbit angles of the level rotation with their boundary-height brackets.
std::vector<EndpointMark> endpoints(const AlphaContext& ctx, int n, int count,
                                    const EnvelopePair& pair);

// | max of the lower envelope - B(alpha_{n+1})/(2 pi) |, the sweep statistic
// for the level-max constant.
double max_vs_brjuno(const AlphaContext& ctx, int n, const EnvelopePair& pair);

// sup over samples of (upper - lower) values, ignoring escaped/unbounded.
double pair_gap_sup(const EnvelopePair& pair);

}  // namespace aalpha
