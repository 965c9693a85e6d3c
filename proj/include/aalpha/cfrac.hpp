#pragma once

#include "aalpha/errors.hpp"
#include "aalpha/interval.hpp"
#include "aalpha/tower.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace aalpha {

// One level of the nearest-integer expansion: the integer part a_n >= 2 and
// the sign eps_{n+1} coupling it to the next level. Digits produced by
// hyper-exponential growth rules can exceed any integer type; those carry
// exact == false and are fully described by the log_a enclosure.
struct Digit {
  long long a = 0;
  bool exact = true;
  Tower log_a;       // enclosure of log a_n
  int eps_next = -1; // +1 or -1
};

enum class StreamKind { Periodic, Growth, Real };

// Tail behaviour certified by the symbolic structure of a source. Finite
// prefixes alone never earn certificates; these flags carry the metadata the
// classification layer is allowed to trust.
struct TailCertificate {
  bool infinite = false;                    // source emits digits forever
  std::optional<long long> min_digit_tail;  // certified min of a_n over the tail (n >= 1)
  enum class Brjuno { Unknown, GeometricTail, Divergent } brjuno = Brjuno::Unknown;
  double geo_ratio = 0.0;   // GeometricTail: term ratio bound, valid from geo_from
  long geo_from = 0;
  double min_term = 0.0;    // Divergent: every Brjuno term >= min_term from min_term_from
  double max_term = 0.0;    // Divergent: matching upper bound on those terms
  long min_term_from = 0;
  bool herman_fails_monotone = false;  // rule guarantees the iterate deficit only worsens
  bool herman_holds_by_growth = false; // rule guarantees eventual dominance from every start
};

class DigitStream {
 public:
  // Periodic stream: head (a_{-1}, eps_0), repeating body of (a_n, eps_{n+1}).
  static DigitStream periodic(long long a_head, int eps0,
                              std::vector<std::pair<long long, int>> body);
  // Registered growth rule; params are rule-specific (seed, N, ...).
  static DigitStream growth(const std::string& rule_id,
                            const std::map<std::string, double>& params,
                            long long a_head = 0, int eps0 = 1);
  // Truncated expansion of a real input; digits beyond certified_depth are
  // never emitted.
  static DigitStream real(long long a_head, int eps0, std::vector<Digit> digits,
                          std::string decimal, int prec_bits);

  // `periodic:head=(1,-1);body=[(3,-1)]`, `real:0.41421;prec=128`,
  // `growth:expsqrt;seed=43`
  static DigitStream parse(const std::string& spec);

  long long head_a() const;
  int head_eps() const;          // eps_0
  StreamKind kind() const;
  long period() const;           // body length for periodic streams, else 0

  // n-th digit pair (a_n, eps_{n+1}); throws DigitsExhausted past the end.
  const Digit& digit(long n) const;
  // eps_n for n >= 0 (eps_0 is the head sign).
  int eps(long n) const;
  long available_depth() const;  // LONG_MAX for unbounded sources
  long certified_depth() const;  // == available_depth for symbolic sources

  const TailCertificate& tail() const;

  std::string spec_string() const;   // canonical mini-language form
  std::string to_json() const;
  std::string hash() const;          // stable content hash of spec_string

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
  explicit DigitStream(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

// Certified enclosures of the level sequence alpha_n and the products
// beta_n = alpha_0 ... alpha_n, derived from a digit prefix by the backward
// recurrence alpha_n = 1/(a_n + eps_{n+1} alpha_{n+1}) seeded with [0, 1/2].
// Immutable after construction.
struct AlphaContext {
  DigitStream stream;
  int depth = 0;
  int guard = 0;
  std::vector<Interval> alpha;        // alpha[n], n = 0..depth-1, inside (0, 1/2)
  std::vector<Interval> beta;         // beta[n] = prod alpha_0..alpha_n
  std::vector<Tower> log_alpha_inv;   // L_n = log(1/alpha_n); tower-capable
  std::vector<Tower> log_beta_inv;    // log(1/beta_n)

  const Interval& alpha_at(int n) const {
    if (n < 0 || n >= depth) raise(Errc::DepthExhausted, "alpha level " + std::to_string(n), n);
    return alpha[n];
  }
  const Tower& log_alpha_inv_at(int n) const {
    if (n < 0 || n >= depth) raise(Errc::DepthExhausted, "alpha level " + std::to_string(n), n);
    return log_alpha_inv[n];
  }
  int eps(long n) const { return stream.eps(n); }
};

// Backward interval evaluation of the first `depth` levels using `guard`
// extra digits to sharpen the seed.
AlphaContext enclose_alphas(const DigitStream& stream, int depth, int guard);

// Enclosure of the represented number a_{-1} + eps_0 alpha_0.
Interval evaluate(const DigitStream& stream, int depth);

// Nearest-integer-distance expansion of a decimal input at a given binary
// precision. Digits are certified for every real in the input's precision
// ball; throws once a digit becomes ambiguous.
DigitStream expand(const std::string& decimal, int prec_bits, int depth);

struct HighTypeResult {
  enum class Kind { Yes, NoAt, UnknownBeyond } kind;
  long index = 0;  // violating index / checked depth
};

HighTypeResult is_high_type(const DigitStream& stream, long long N, int depth);

}  // namespace aalpha
