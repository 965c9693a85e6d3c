#pragma once

#include "aalpha/arith.hpp"
#include "aalpha/model.hpp"

#include <string>
#include <vector>

namespace aalpha {

// Radial hair data derived from a level -1 envelope pair. Angle theta maps to
// boundary coordinate x = (-theta) mod 1; heights turn into radii through
// w -> e^{-2 pi Im w}.
struct GapProfile {
  enum class Normalization { HairyCircle, Bouquet };
  Normalization normalization = Normalization::HairyCircle;
  int resolution = 0;
  std::vector<double> inner;    // 1 for hairy circles, 0 for bouquets
  std::vector<double> outer;    // hair tip radius per angle k/resolution
  std::vector<uint8_t> capped;  // hair certified to run its full ray
  double err = 0.0;             // radii error bound (R units)
  double gap_bound_r = 0.0;     // envelope noise scale mapped to R units
  std::string stream_hash;

  std::string to_json() const;
};

GapProfile gap_profile(const EnvelopePair& pair, GapProfile::Normalization mode);

// Quantitative grid statistics for the hairy-circle / bouquet conditions:
// density of the minimal set, density of its complement, and one-sided
// limsup symmetry. Statistics, not boolean proofs.
struct ValidationReport {
  double min_set_window = 0.0;        // smallest angle window hitting the minimal set
  double complement_window = 0.0;     // same for its complement
  double limsup_defect = 0.0;         // worst one-sided limsup asymmetry
  bool degenerate_all_minimal = false;  // Jordan case: complement empty
  size_t minimal_count = 0;
  size_t capped_count = 0;

  std::string to_json() const;
};

ValidationReport validate_topology(const GapProfile& g, int window = 8);

struct ClassifyPolicy {
  int depth = 40;
  int guard = 24;
  int horizon = 12;
  int envelope_J = 12;
  int resolution = 512;
  double cap = 50.0;
  double c12_working = 2.0;
  double herman_y_threshold = 0.01;
  double divergence_threshold = 10.0;
  int brjuno_terms = 24;
};

struct ModelClass {
  enum class Verdict { JordanCurve, HairyCircle, CantorBouquet, Undetermined };
  Verdict verdict = Verdict::Undetermined;
  std::string reason;

  // evidence chain
  std::string stream_spec;
  ClassifyPolicy policy;
  Interval brjuno_partial;
  bool brjuno_divergent = false;
  bool brjuno_tail_certified = false;
  HermanVerdict herman_h{HermanVerdict::Kind::UnresolvedUpTo, 0, {}, {}};
  HermanVerdict herman_y{HermanVerdict::Kind::UnresolvedUpTo, 0, {}, {}};
  bool herman_certified_yes = false;
  bool herman_certified_no = false;
  double gap_sup = 0.0;
  double gap_bound = 0.0;
  double escaped_fraction = 0.0;

  std::string to_json() const;
};

const char* verdict_name(ModelClass::Verdict v);

// Arithmetic certificates drive the verdict; grid geometry is recorded as
// evidence and can only demote a verdict to Undetermined, never flip it.
ModelClass classify(const DigitStream& stream, const ClassifyPolicy& policy);

}  // namespace aalpha
