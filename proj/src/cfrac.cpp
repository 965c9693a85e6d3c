#include "aalpha/cfrac.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace aalpha {

namespace {

constexpr int kGrowthDepth = 200;       // precomputed growth-law prefix
constexpr double kExactExpCap = 42.0;   // exp(42) < 2^62, safe for exact digits

std::string fmt_ll(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", v);
  return buf;
}

std::string fmt_param(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return fmt_ll((long long)v);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::RationalInput: return "RationalInput";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::HalfIntegerAmbiguity: return "HalfIntegerAmbiguity";
    case Errc::DigitsExhausted: return "DigitsExhausted";
    case Errc::DepthExhausted: return "DepthExhausted";
    case Errc::NonPositiveInput: return "NonPositiveInput";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case Errc::DivergentBrjuno: return "DivergentBrjuno";
    case Errc::DivergentUpperSeed: return "DivergentUpperSeed";
    case Errc::WrongLevel: return "WrongLevel";
    case Errc::EmptyProfile: return "EmptyProfile";
    case Errc::ConfigError: return "ConfigError";
    case Errc::CacheCorrupt: return "CacheCorrupt";
  }
  return "Error";
}

struct DigitStream::Impl {
  StreamKind kind = StreamKind::Periodic;
  long long a_head = 0;
  int eps0 = -1;

  // periodic
  std::vector<std::pair<long long, int>> body;

  // growth
  std::string rule;
  std::map<std::string, double> params;
  std::vector<Digit> growth_digits;

  // real
  std::string decimal;
  int prec_bits = 0;
  std::vector<Digit> real_digits;

  TailCertificate tail;
  mutable Digit scratch;  // periodic digit cache slot (value-returned copies)
};

namespace {

Digit make_exact_digit(long long a, int eps_next) {
  Digit d;
  d.a = a;
  d.exact = true;
  double la = std::log((double)a);
  d.log_a = Tower(Interval(detail::dn(la), detail::up(la)));
  d.eps_next = eps_next;
  return d;
}

// ---- growth rules -------------------------------------------------------

// doubling: a_n = N * 2^n
void build_doubling(DigitStream::Impl& im) {
  long long N = (long long)im.params.at("N");
  if (N < 2) raise(Errc::ConfigError, "doubling rule needs N >= 2");
  im.growth_digits.reserve(kGrowthDepth);
  for (int n = 0; n < kGrowthDepth; ++n) {
    if (n < 62 && N <= (LLONG_MAX >> (n + 1))) {
      im.growth_digits.push_back(make_exact_digit(N << n, -1));
    } else {
      Digit d;
      d.exact = false;
      double la = std::log((double)N) + n * 0.6931471805599453;
      d.log_a = Tower(Interval(detail::dn(detail::dn(la)), detail::up(detail::up(la))));
      d.eps_next = -1;
      im.growth_digits.push_back(d);
    }
  }
  im.tail.infinite = true;
  im.tail.min_digit_tail = 2 * N;
  im.tail.brjuno = TailCertificate::Brjuno::GeometricTail;
  // t_{k+1}/t_k = alpha_k L_{k+1}/L_k <= (1/(2N-1)) * 2
  im.tail.geo_ratio = 2.0 / (double)(2 * N - 1);
  im.tail.geo_from = 1;
  im.tail.herman_holds_by_growth = true;
}

// expinv: a_0 = seed, a_{n+1} = round(exp(prod_{i<=n} a_i)).
// Every Brjuno term of this stream sits in [exp(-c), exp(c)] with
// c = sum 1/a_i <= 1.3/seed, so partial sums grow linearly: B = +inf.
void build_expinv(DigitStream::Impl& im) {
  long long seed = (long long)im.params.at("seed");
  if (seed < 3) raise(Errc::ConfigError, "expinv rule needs seed >= 3");
  im.growth_digits.reserve(kGrowthDepth);
  im.growth_digits.push_back(make_exact_digit(seed, -1));
  // running product P_n = prod a_i as a tower enclosure
  Tower P = Tower(Interval((double)seed));
  for (int n = 1; n < kGrowthDepth; ++n) {
    Digit d;
    d.eps_next = -1;
    if (P.plain() && P.m.hi <= kExactExpCap) {
      long long a = (long long)std::llround(std::exp(P.m.mid()));
      d = make_exact_digit(a, -1);
      P = tmul(P, Tower(Interval((double)a)));
    } else {
      d.exact = false;
      d.a = 0;
      // log a_{n+1} = P_n up to the rounding of a to an integer, which is
      // far below one ulp at this scale.
      Tower la = P;
      la.m.lo = detail::dn(la.m.lo);
      la.m.hi = detail::up(la.m.hi);
      d.log_a = la;
      P = tmul(P, texp(la));
    }
    im.growth_digits.push_back(d);
  }
  im.tail.infinite = true;
  im.tail.min_digit_tail = im.growth_digits[1].a > 0 ? im.growth_digits[1].a
                                                     : (long long)1 << 62;
  im.tail.brjuno = TailCertificate::Brjuno::Divergent;
  // every term equals exp(-sum log(1 + eps alpha/a)) with |sum| <= 1.3/seed
  double c = 1.3 / (double)seed;
  im.tail.min_term = std::exp(-c) * 0.999;
  im.tail.max_term = std::exp(c) * 1.001;
  im.tail.min_term_from = 1;
  im.tail.herman_fails_monotone = true;  // divergent B dominates every iterate
}

// expsqrt: a_0 = seed, a_{n+1} = round(exp(sqrt(a_n))).
// Digit logs grow like exp(L_n/2), so the Brjuno tail is summable while the
// iterated-exponential criterion falls ever further behind.
void build_expsqrt(DigitStream::Impl& im) {
  long long seed = (long long)im.params.at("seed");
  if (seed < 9) raise(Errc::ConfigError, "expsqrt rule needs seed >= 9");
  im.growth_digits.reserve(kGrowthDepth);
  im.growth_digits.push_back(make_exact_digit(seed, -1));
  // S_n = sqrt(a_n) as a tower enclosure: log a_{n+1} = S_n (up to rounding)
  Tower S = Tower(isqrt(Interval((double)seed)));
  for (int n = 1; n < kGrowthDepth; ++n) {
    Digit d;
    d.eps_next = -1;
    if (S.plain() && S.m.hi <= kExactExpCap) {
      long long a = (long long)std::llround(std::exp(S.m.mid()));
      d = make_exact_digit(a, -1);
      S = Tower(isqrt(Interval((double)a)));
    } else {
      d.exact = false;
      d.a = 0;
      Tower la = S;
      la.m.lo = detail::dn(la.m.lo);
      la.m.hi = detail::up(la.m.hi);
      d.log_a = la;
      // sqrt(a_{n+1}) = exp(log(a_{n+1}) / 2)
      Tower half = la.plain() ? Tower(la.m * Interval(0.5))
                              : tmul(la, Tower(Interval(0.5)));
      S = texp(half);
    }
    im.growth_digits.push_back(d);
  }
  im.tail.infinite = true;
  im.tail.min_digit_tail = im.growth_digits[1].a;
  im.tail.brjuno = TailCertificate::Brjuno::GeometricTail;
  // t_{k+1}/t_k = alpha_k sqrt(a_k)/L_k <= 1.05/sqrt(a_1) for k >= 1
  im.tail.geo_ratio = 1.05 / std::sqrt((double)im.growth_digits[1].a);
  im.tail.geo_from = 1;
  im.tail.herman_fails_monotone = true;
}

void build_growth(DigitStream::Impl& im) {
  if (im.rule == "doubling") return build_doubling(im);
  if (im.rule == "expinv") return build_expinv(im);
  if (im.rule == "expsqrt") return build_expsqrt(im);
  raise(Errc::ConfigError, "unknown growth rule '" + im.rule + "'");
}

}  // namespace

DigitStream DigitStream::periodic(long long a_head, int eps0,
                                  std::vector<std::pair<long long, int>> body) {
  if (body.empty()) raise(Errc::ConfigError, "periodic stream needs a nonempty body");
  for (auto& [a, e] : body) {
    if (a < 2) raise(Errc::ConfigError, "digit a_n must be >= 2");
    if (e != 1 && e != -1) raise(Errc::ConfigError, "sign must be +1 or -1");
  }
  if (eps0 != 1 && eps0 != -1) raise(Errc::ConfigError, "sign must be +1 or -1");
  auto im = std::make_shared<Impl>();
  im->kind = StreamKind::Periodic;
  im->a_head = a_head;
  im->eps0 = eps0;
  im->body = std::move(body);
  im->tail.infinite = true;
  long long mn = LLONG_MAX;
  for (auto& [a, e] : im->body) mn = std::min(mn, a);
  im->tail.min_digit_tail = mn;
  return DigitStream(std::move(im));
}

DigitStream DigitStream::growth(const std::string& rule_id,
                                const std::map<std::string, double>& params,
                                long long a_head, int eps0) {
  auto im = std::make_shared<Impl>();
  im->kind = StreamKind::Growth;
  im->a_head = a_head;
  im->eps0 = eps0;
  im->rule = rule_id;
  im->params = params;
  build_growth(*im);
  return DigitStream(std::move(im));
}

DigitStream DigitStream::real(long long a_head, int eps0, std::vector<Digit> digits,
                              std::string decimal, int prec_bits) {
  auto im = std::make_shared<Impl>();
  im->kind = StreamKind::Real;
  im->a_head = a_head;
  im->eps0 = eps0;
  im->real_digits = std::move(digits);
  im->decimal = std::move(decimal);
  im->prec_bits = prec_bits;
  return DigitStream(std::move(im));
}

long long DigitStream::head_a() const { return impl_->a_head; }
int DigitStream::head_eps() const { return impl_->eps0; }
StreamKind DigitStream::kind() const { return impl_->kind; }
long DigitStream::period() const {
  return impl_->kind == StreamKind::Periodic ? (long)impl_->body.size() : 0;
}
const TailCertificate& DigitStream::tail() const { return impl_->tail; }

const Digit& DigitStream::digit(long n) const {
  if (n < 0) raise(Errc::DigitsExhausted, "negative digit index", n);
  switch (impl_->kind) {
    case StreamKind::Periodic: {
      size_t i = (size_t)(n % (long)impl_->body.size());
      auto& [a, e] = impl_->body[i];
      impl_->scratch = make_exact_digit(a, e);
      return impl_->scratch;
    }
    case StreamKind::Growth:
      if (n >= (long)impl_->growth_digits.size())
        raise(Errc::DigitsExhausted, "growth prefix bound", n);
      return impl_->growth_digits[(size_t)n];
    case StreamKind::Real:
      if (n >= (long)impl_->real_digits.size())
        raise(Errc::DigitsExhausted,
              "digit beyond certified depth " + std::to_string(impl_->real_digits.size()), n);
      return impl_->real_digits[(size_t)n];
  }
  raise(Errc::DigitsExhausted, "unreachable", n);
}

int DigitStream::eps(long n) const {
  if (n == 0) return impl_->eps0;
  return digit(n - 1).eps_next;
}

long DigitStream::available_depth() const {
  switch (impl_->kind) {
    case StreamKind::Periodic: return LONG_MAX;
    case StreamKind::Growth: return (long)impl_->growth_digits.size();
    case StreamKind::Real: return (long)impl_->real_digits.size();
  }
  return 0;
}

long DigitStream::certified_depth() const { return available_depth(); }

std::string DigitStream::spec_string() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case StreamKind::Periodic: {
      os << "periodic:head=(" << impl_->a_head << "," << (impl_->eps0 > 0 ? "+1" : "-1")
         << ");body=[";
      for (size_t i = 0; i < impl_->body.size(); ++i) {
        if (i) os << ",";
        os << "(" << impl_->body[i].first << ","
           << (impl_->body[i].second > 0 ? "+1" : "-1") << ")";
      }
      os << "]";
      break;
    }
    case StreamKind::Growth: {
      os << "growth:" << impl_->rule;
      for (auto& [k, v] : impl_->params) os << ";" << k << "=" << fmt_param(v);
      break;
    }
    case StreamKind::Real:
      os << "real:" << impl_->decimal << ";prec=" << impl_->prec_bits;
      break;
  }
  return os.str();
}

std::string DigitStream::to_json() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case StreamKind::Periodic: {
      os << "{\"kind\":\"periodic\",\"head\":[" << impl_->a_head << ","
         << impl_->eps0 << "],\"body\":[";
      for (size_t i = 0; i < impl_->body.size(); ++i) {
        if (i) os << ",";
        os << "[" << impl_->body[i].first << "," << impl_->body[i].second << "]";
      }
      os << "]}";
      break;
    }
    case StreamKind::Growth: {
      os << "{\"kind\":\"growth\",\"rule\":\"" << impl_->rule << "\",\"params\":{";
      bool first = true;
      for (auto& [k, v] : impl_->params) {
        if (!first) os << ",";
        first = false;
        os << "\"" << k << "\":" << fmt_param(v);
      }
      os << "},\"head\":[" << impl_->a_head << "," << impl_->eps0 << "]}";
      break;
    }
    case StreamKind::Real:
      os << "{\"kind\":\"real\",\"decimal\":\"" << impl_->decimal
         << "\",\"prec\":" << impl_->prec_bits << ",\"head\":[" << impl_->a_head
         << "," << impl_->eps0 << "]}";
      break;
  }
  return os.str();
}

std::string DigitStream::hash() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(spec_string()));
  return buf;
}

// ---- mini-language parser -----------------------------------------------

namespace {

long long parse_ll(const std::string& s) {
  size_t pos = 0;
  long long v = std::stoll(s, &pos);
  if (pos != s.size()) raise(Errc::ConfigError, "bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::pair<long long, int> parse_pair(const std::string& s) {
  if (s.size() < 5 || s.front() != '(' || s.back() != ')')
    raise(Errc::ConfigError, "expected (a,eps) pair, got '" + s + "'");
  auto inner = split(s.substr(1, s.size() - 2), ',');
  if (inner.size() != 2) raise(Errc::ConfigError, "expected (a,eps) pair, got '" + s + "'");
  return {parse_ll(inner[0]), (int)parse_ll(inner[1])};
}

}  // namespace

DigitStream DigitStream::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) raise(Errc::ConfigError, "stream spec needs 'kind:...'");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  auto fields = split(rest, ';');
  if (kind == "periodic") {
    long long ah = 0;
    int e0 = -1;
    std::vector<std::pair<long long, int>> body;
    for (auto& f : fields) {
      auto eq = f.find('=');
      if (eq == std::string::npos) raise(Errc::ConfigError, "bad field '" + f + "'");
      std::string key = f.substr(0, eq), val = f.substr(eq + 1);
      if (key == "head") {
        auto [a, e] = parse_pair(val);
        ah = a;
        e0 = e;
      } else if (key == "body") {
        if (val.size() < 2 || val.front() != '[' || val.back() != ']')
          raise(Errc::ConfigError, "body must be [(a,e),...]");
        for (auto& p : split(val.substr(1, val.size() - 2), ',')) {
          if (!p.empty()) body.push_back(parse_pair(p));
        }
      } else {
        raise(Errc::ConfigError, "unknown periodic field '" + key + "'");
      }
    }
    return periodic(ah, e0, std::move(body));
  }
  if (kind == "growth") {
    if (fields.empty()) raise(Errc::ConfigError, "growth spec needs a rule id");
    std::string rule = fields[0];
    std::map<std::string, double> params;
    long long ah = 0;
    int e0 = 1;
    for (size_t i = 1; i < fields.size(); ++i) {
      auto eq = fields[i].find('=');
      if (eq == std::string::npos) raise(Errc::ConfigError, "bad field '" + fields[i] + "'");
      std::string key = fields[i].substr(0, eq), val = fields[i].substr(eq + 1);
      if (key == "head") {
        auto [a, e] = parse_pair(val);
        ah = a;
        e0 = e;
      } else {
        params[key] = std::stod(val);
      }
    }
    return growth(rule, params, ah, e0);
  }
  if (kind == "real") {
    if (fields.empty()) raise(Errc::ConfigError, "real spec needs a decimal");
    std::string dec = fields[0];
    int prec = 128;
    int depth = 40;
    for (size_t i = 1; i < fields.size(); ++i) {
      auto eq = fields[i].find('=');
      if (eq == std::string::npos) raise(Errc::ConfigError, "bad field '" + fields[i] + "'");
      std::string key = fields[i].substr(0, eq), val = fields[i].substr(eq + 1);
      if (key == "prec") prec = (int)parse_ll(val);
      else if (key == "depth") depth = (int)parse_ll(val);
      else raise(Errc::ConfigError, "unknown real field '" + key + "'");
    }
    return expand(dec, prec, depth);
  }
  raise(Errc::ConfigError, "unknown stream kind '" + kind + "'");
}

// ---- backward enclosure ---------------------------------------------------

AlphaContext enclose_alphas(const DigitStream& stream, int depth, int guard) {
  if (depth < 1) raise(Errc::ConfigError, "depth must be >= 1");
  long need = (long)depth + guard;
  if (stream.available_depth() < need)
    raise(Errc::DigitsExhausted,
          "need " + std::to_string(need) + " digits, have " +
              std::to_string(stream.available_depth()));

  AlphaContext ctx{stream, depth, guard, {}, {}, {}, {}};
  int total = depth + guard;
  std::vector<Interval> alpha((size_t)total);
  std::vector<Tower> lai((size_t)total);

  Interval cur(0.0, 0.5);  // seed: alpha_{total-1} known only to lie in [0, 1/2]
  for (int n = total - 1; n >= 0; --n) {
    const Digit& d = stream.digit(n);
    int eps_next = d.eps_next;
    if (d.exact) {
      Interval denom = Interval((double)d.a) +
                       (eps_next > 0 ? cur : -cur);
      Interval a_n = recip(denom);
      a_n = Interval(std::max(a_n.lo, 0.0), std::min(a_n.hi, 0.5));
      alpha[(size_t)n] = a_n;
      lai[(size_t)n] = Tower(ilog(denom));
    } else {
      // astronomically large digit: alpha_n = 1/(a_n + eps*alpha_{n+1})
      Tower la = d.log_a;
      // widen by log(1 + alpha/a) <= 1/a, far below one ulp at this scale
      la.m.lo = detail::dn(la.m.lo);
      la.m.hi = detail::up(la.m.hi);
      lai[(size_t)n] = la;
      Interval lin = la.as_interval();
      double hi = std::exp(-lin.lo) + std::numeric_limits<double>::denorm_min();
      alpha[(size_t)n] = Interval(0.0, detail::up(hi));
    }
    cur = alpha[(size_t)n];
  }

  ctx.alpha.assign(alpha.begin(), alpha.begin() + depth);
  ctx.log_alpha_inv.assign(lai.begin(), lai.begin() + depth);
  ctx.beta.resize((size_t)depth);
  ctx.log_beta_inv.resize((size_t)depth);
  Interval b(1.0);
  Tower lb(0.0);
  for (int n = 0; n < depth; ++n) {
    b = b * ctx.alpha[(size_t)n];
    lb = tadd(lb, ctx.log_alpha_inv[(size_t)n]);
    ctx.beta[(size_t)n] = b;
    ctx.log_beta_inv[(size_t)n] = lb;
  }
  return ctx;
}

Interval evaluate(const DigitStream& stream, int depth) {
  if (depth < 1) raise(Errc::ConfigError, "depth must be >= 1");
  AlphaContext ctx = enclose_alphas(stream, 1, depth - 1);
  Interval a0 = ctx.alpha[0];
  Interval head((double)stream.head_a());
  return stream.head_eps() > 0 ? head + a0 : head - a0;
}

// ---- real input expansion -------------------------------------------------

namespace {

struct Mpf {
  mpfr_t v;
  explicit Mpf(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Mpf() { mpfr_clear(v); }
  Mpf(const Mpf&) = delete;
  Mpf& operator=(const Mpf&) = delete;
};

}  // namespace

DigitStream expand(const std::string& decimal, int prec_bits, int depth) {
  if (prec_bits < 16 || prec_bits > 1 << 20)
    raise(Errc::ConfigError, "precision must be in [16, 2^20] bits");
  if (depth < 1) raise(Errc::ConfigError, "depth must be >= 1");
  mpfr_prec_t wp = prec_bits + 64;

  Mpf xlo(wp), xhi(wp), t(wp);
  auto slash = decimal.find('/');
  if (slash != std::string::npos) {
    // exact rational p/q: only directed division widens the enclosure
    long long p = parse_ll(decimal.substr(0, slash));
    long long q = parse_ll(decimal.substr(slash + 1));
    if (q == 0) raise(Errc::ConfigError, "zero denominator in '" + decimal + "'");
    mpfr_set_si(t.v, p, MPFR_RNDN);
    mpfr_div_si(xlo.v, t.v, q, MPFR_RNDD);
    mpfr_div_si(xhi.v, t.v, q, MPFR_RNDU);
  } else {
    if (mpfr_set_str(xlo.v, decimal.c_str(), 10, MPFR_RNDD) != 0 &&
        mpfr_nan_p(xlo.v))
      raise(Errc::ConfigError, "cannot parse decimal '" + decimal + "'");
    mpfr_set_str(xhi.v, decimal.c_str(), 10, MPFR_RNDU);
    // precision ball of the input: half an ulp at prec_bits
    mpfr_abs(t.v, xlo.v, MPFR_RNDU);
    mpfr_mul_2si(t.v, t.v, -(long)prec_bits, MPFR_RNDU);
    mpfr_sub(xlo.v, xlo.v, t.v, MPFR_RNDD);
    mpfr_add(xhi.v, xhi.v, t.v, MPFR_RNDU);
  }

  // head: alpha = a_head + eps0 * alpha_0 with alpha_0 = d(alpha, Z)
  Mpf mid(wp);
  mpfr_add(mid.v, xlo.v, xhi.v, MPFR_RNDN);
  mpfr_div_2ui(mid.v, mid.v, 1, MPFR_RNDN);
  long long a_head = (long long)mpfr_get_si(mid.v, MPFR_RNDN);
  Mpf flo(wp), fhi(wp);  // current level enclosure [flo, fhi]
  mpfr_sub_si(flo.v, xlo.v, a_head, MPFR_RNDD);
  mpfr_sub_si(fhi.v, xhi.v, a_head, MPFR_RNDU);
  int eps0;
  if (mpfr_sgn(flo.v) > 0 && mpfr_sgn(fhi.v) > 0) {
    eps0 = 1;
  } else if (mpfr_sgn(flo.v) < 0 && mpfr_sgn(fhi.v) < 0) {
    eps0 = -1;
    mpfr_swap(flo.v, fhi.v);
    mpfr_neg(flo.v, flo.v, MPFR_RNDD);
    mpfr_neg(fhi.v, fhi.v, MPFR_RNDU);
  } else {
    raise(Errc::RationalInput, "input is an integer within working precision", 0);
  }
  // now [flo, fhi] encloses alpha_0 > 0

  std::vector<Digit> digits;
  Mpf rlo(wp), rhi(wp), half(wp);
  mpfr_set_d(half.v, 0.5, MPFR_RNDN);
  for (int n = 0; n < depth; ++n) {
    if (mpfr_cmp(flo.v, fhi.v) > 0 || mpfr_sgn(flo.v) <= 0)
      raise(Errc::RationalInput, "level value reached zero", n);
    if (mpfr_cmp_d(fhi.v, 0.5) > 0)
      raise(Errc::PrecisionExhausted, "level enclosure escaped (0, 1/2)", n - 1);
    // reciprocal: [1/fhi, 1/flo]
    mpfr_ui_div(rlo.v, 1, fhi.v, MPFR_RNDD);
    mpfr_ui_div(rhi.v, 1, flo.v, MPFR_RNDU);
    // digit = nearest integer to the midpoint
    mpfr_add(mid.v, rlo.v, rhi.v, MPFR_RNDN);
    mpfr_div_2ui(mid.v, mid.v, 1, MPFR_RNDN);
    long long a = (long long)mpfr_get_si(mid.v, MPFR_RNDN);
    // enclosure must stay inside (a - 1/2, a + 1/2)
    mpfr_sub_si(rlo.v, rlo.v, a, MPFR_RNDD);
    mpfr_sub_si(rhi.v, rhi.v, a, MPFR_RNDU);
    // now [rlo, rhi] encloses 1/alpha_n - a_n = eps_{n+1} alpha_{n+1}
    if (mpfr_cmp_d(rlo.v, -0.5) <= 0 || mpfr_cmp_d(rhi.v, 0.5) >= 0) {
      Mpf w(wp);
      mpfr_sub(w.v, rhi.v, rlo.v, MPFR_RNDU);
      if (mpfr_cmp_d(w.v, 1e-9) < 0)
        raise(Errc::HalfIntegerAmbiguity, "reciprocal sits on a half-integer", n);
      raise(Errc::PrecisionExhausted, "digit ambiguous at this precision", n - 1);
    }
    int eps_next;
    if (mpfr_sgn(rlo.v) > 0 && mpfr_sgn(rhi.v) > 0) {
      eps_next = 1;
    } else if (mpfr_sgn(rlo.v) < 0 && mpfr_sgn(rhi.v) < 0) {
      eps_next = -1;
      mpfr_swap(rlo.v, rhi.v);
      mpfr_neg(rlo.v, rlo.v, MPFR_RNDD);
      mpfr_neg(rhi.v, rhi.v, MPFR_RNDU);
    } else {
      raise(Errc::RationalInput, "level " + std::to_string(n + 1) + " contains zero", n + 1);
    }
    if (a < 2) raise(Errc::PrecisionExhausted, "digit below 2", n - 1);
    digits.push_back(make_exact_digit(a, eps_next));
    mpfr_set(flo.v, rlo.v, MPFR_RNDD);
    mpfr_set(fhi.v, rhi.v, MPFR_RNDU);
  }
  return DigitStream::real(a_head, eps0, std::move(digits), decimal, prec_bits);
}

// ---- high type -------------------------------------------------------------

HighTypeResult is_high_type(const DigitStream& stream, long long N, int depth) {
  if (N < 2) raise(Errc::ConfigError, "high-type bound must be >= 2");
  long avail = std::min((long)depth, stream.available_depth());
  for (long n = 0; n < avail; ++n) {
    const Digit& d = stream.digit(n);
    if (d.exact && d.a < N) return {HighTypeResult::Kind::NoAt, n};
  }
  const TailCertificate& tc = stream.tail();
  if (tc.infinite && tc.min_digit_tail) {
    if (*tc.min_digit_tail >= N) return {HighTypeResult::Kind::Yes, avail};
    // a below-bound digit recurs in the tail; report its first index
    long n = 0;
    while (true) {
      const Digit& d = stream.digit(n);
      if (d.exact && d.a < N) return {HighTypeResult::Kind::NoAt, n};
      ++n;
    }
  }
  return {HighTypeResult::Kind::UnknownBeyond, avail};
}

}  // namespace aalpha
