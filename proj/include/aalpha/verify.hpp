#pragma once

#include "aalpha/cfrac.hpp"
#include "aalpha/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aalpha {

// Randomized property suites over the half-plane maps and comparison maps.
// Seeded generator; the seed is recorded in the report for reproducibility.
struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;   // worst observed residual / excess
  double bound = 0.0;   // allowed bound
  long samples = 0;
};

std::vector<PropertyResult> run_property_suites(uint64_t seed, bool extended);
std::string properties_table(const std::vector<PropertyResult>& results,
                             uint64_t seed);

// Brute-force set-based construction of a level's lower boundary: dense
// point clouds of the base strip pushed through the block decomposition of
// the signed half-plane maps, lower-enveloped per bin. Deliberately
// independent of the grid pullback in profile_refine; used to cross-check it.
struct CloudEnvelope {
  double x0 = 0.0, x1 = 1.0;  // domain covered
  int bins = 0;
  std::vector<double> heights;  // lower envelope per bin center
};

CloudEnvelope cloud_boundary(const AlphaContext& ctx, int level, int depth_j,
                             int bins_per_unit, int points_per_bin = 24);

// sup over profile samples of |cloud - profile| (profile on the fundamental
// domain, cloud on the full domain reduced mod 1).
double cloud_vs_profile_sup(const CloudEnvelope& cloud, const BoundaryProfile& p);

}  // namespace aalpha
