#include "aalpha/model.hpp"

#include "aalpha/jsonfmt.hpp"
#include "aalpha/ymap.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace aalpha {

namespace {

const double kInf = std::numeric_limits<double>::infinity();
constexpr double kValueCeil = 1e300;  // saturation for certified-huge heights

double sat(double v) { return std::min(std::max(v, -kValueCeil), kValueCeil); }

}  // namespace

double BoundaryProfile::err_max() const {
  double m = 0.0;
  for (size_t i = 0; i < errs.size(); ++i)
    if (!escaped[i] && !unbounded[i]) m = std::max(m, errs[i]);
  return m;
}

double BoundaryProfile::max_value() const {
  double m = -kInf;
  for (size_t i = 0; i < values.size(); ++i)
    if (!escaped[i] && !unbounded[i]) m = std::max(m, values[i]);
  return m;
}

double BoundaryProfile::escaped_fraction() const {
  if (values.empty()) return 0.0;
  size_t c = 0;
  for (uint8_t f : escaped) c += f ? 1 : 0;
  return (double)c / (double)values.size();
}

double BoundaryProfile::at(double s) const {
  if (values.empty()) raise(Errc::EmptyProfile, "no samples");
  s -= std::floor(s);
  double pos = s * resolution;
  size_t k = (size_t)std::min((double)resolution - 1.0, std::floor(pos));
  double f = pos - (double)k;
  return values[k] * (1.0 - f) + values[k + 1] * f;
}

BoundaryProfile profile_base(const AlphaContext& ctx, int n, int resolution,
                             double cap) {
  if (n < 0) raise(Errc::ConfigError, "base profiles start at level 0");
  if (n >= ctx.depth) raise(Errc::DepthExhausted, "level beyond context depth", n);
  if (resolution < 8) raise(Errc::ResolutionTooCoarse, "resolution below 8 per unit");
  BoundaryProfile p;
  p.level = n;
  p.depth = 0;
  p.resolution = resolution;
  p.alpha_inv = recip(ctx.alpha[(size_t)n]);
  p.cap = cap;
  p.values.assign((size_t)resolution + 1, -1.0);
  p.errs.assign((size_t)resolution + 1, 0.0);
  p.escaped.assign((size_t)resolution + 1, 0);
  p.unbounded.assign((size_t)resolution + 1, 0);
  p.stream_hash = ctx.stream.hash();
  return p;
}

namespace {

struct SampleBracket {
  double lo = 0.0;
  double hi = 0.0;  // +inf when no finite upper bound applies
};

// Bracket of the child boundary over samples k0..k1 (already clamped),
// widened by the local oscillation as the interpolation modulus.
SampleBracket child_bracket(const BoundaryProfile& c, long k0, long k1,
                            double finite_bound) {
  SampleBracket b{kInf, -kInf};
  bool need_bound = false;
  for (long k = k0; k <= k1; ++k) {
    size_t i = (size_t)std::clamp(k, 0L, (long)c.resolution);
    double lo_i = c.escaped[i] ? c.values[i] : c.values[i] - c.errs[i];
    b.lo = std::min(b.lo, lo_i);
    if (c.escaped[i] || c.unbounded[i])
      need_bound = true;
    else
      b.hi = std::max(b.hi, c.values[i] + c.errs[i]);
  }
  if (need_bound) b.hi = std::max(b.hi, finite_bound);
  if (b.hi < b.lo) b.hi = b.lo;
  // interpolation modulus: the true boundary may overshoot linear
  // interpolation by the scale of the local oscillation
  if (std::isfinite(b.hi)) {
    double osc = 0.0;
    for (long k = k0 - 1; k <= k1; ++k) {
      long ka = std::clamp(k, 0L, (long)c.resolution);
      long kb = std::clamp(k + 1, 0L, (long)c.resolution);
      if (c.escaped[(size_t)ka] || c.escaped[(size_t)kb]) continue;
      if (c.unbounded[(size_t)ka] || c.unbounded[(size_t)kb]) continue;
      osc = std::max(osc, std::abs(c.values[(size_t)kb] - c.values[(size_t)ka]));
    }
    b.lo -= 0.5 * osc;
    b.hi += 0.5 * osc;
  }
  b.lo = std::max(b.lo, -1.0);
  return b;
}

SampleBracket global_bracket(const BoundaryProfile& c, double finite_bound) {
  return child_bracket(c, 0, c.resolution, finite_bound);
}

}  // namespace

BoundaryProfile profile_refine(const AlphaContext& ctx, int n,
                               const BoundaryProfile& child, double c12_working) {
  if (child.level != n + 1)
    raise(Errc::LevelMismatch,
          "child at level " + std::to_string(child.level) + ", expected " +
              std::to_string(n + 1));
  if (n < -1) raise(Errc::ConfigError, "levels start at -1");
  int map_idx = n + 1;
  if (map_idx >= ctx.depth)
    raise(Errc::DepthExhausted, "map level beyond context depth", map_idx);
  if (child.resolution < 8) raise(Errc::ResolutionTooCoarse, "resolution below 8");
  if (child.values.size() != (size_t)child.resolution + 1)
    raise(Errc::ConfigError, "malformed child profile");

  const Interval& r = ctx.alpha[(size_t)map_idx];
  const Tower& L = ctx.log_alpha_inv[(size_t)map_idx];
  if (r.lo > 1e-8 && r.width() > 0.2 * r.lo)
    raise(Errc::ResolutionTooCoarse, "alpha enclosure too wide to bracket positions");
  int eps = ctx.eps(map_idx);
  int res = child.resolution;
  double cap = child.cap;

  // finite level bound for the child when its Brjuno enclosure certifies one
  double child_bound = kInf;
  if (map_idx + 1 < ctx.depth) {
    BrjunoEnclosure B = brjuno_enclosure(ctx, map_idx + 1, ctx.depth - (map_idx + 1));
    if (!B.hi.is_inf()) {
      Interval bh = B.hi.as_interval();
      if (std::isfinite(bh.hi))
        child_bound = detail::up(bh.hi / 6.283185307179586) + c12_working;
    }
  }

  BoundaryProfile out;
  out.level = n;
  out.depth = child.depth + 1;
  out.resolution = res;
  out.alpha_inv = (n >= 0) ? recip(ctx.alpha[(size_t)n]) : Interval(1.0, 1.0);
  out.cap = cap;
  out.upper_kind = child.upper_kind;
  out.stream_hash = child.stream_hash;
  out.values.resize((size_t)res + 1);
  out.errs.resize((size_t)res + 1);
  out.escaped.assign((size_t)res + 1, 0);
  out.unbounded.assign((size_t)res + 1, 0);

  SampleBracket gb = global_bracket(child, child_bound);
  Interval inv_r = recip(r);

  for (int i = 0; i <= res; ++i) {
    double x = (double)i / (double)res;
    bool exact_zero = (eps < 0) ? (i == 0) : (i == res);
    Interval u = (eps < 0) ? r + Interval(2.0 * x) : r + Interval(2.0 * (1.0 - x));
    SampleBracket ybr;
    if (exact_zero) {
      ybr = child_bracket(child, 0, 0, child_bound);
    } else {
      Interval t = (eps < 0) ? Interval(x) * inv_r : Interval(1.0 - x) * inv_r;
      if (!std::isfinite(t.lo) || !std::isfinite(t.hi) || !(t.width() < 0.45)) {
        // source position effectively equidistributed: whole-period bracket
        ybr = gb;
      } else {
        double fl = std::floor(t.lo);
        double slo = t.lo - fl, shi = t.hi - fl;
        if (shi <= 1.0) {
          ybr = child_bracket(child, (long)std::floor(slo * res),
                              (long)std::ceil(shi * res), child_bound);
        } else {
          // position interval wraps the period seam
          SampleBracket a =
              child_bracket(child, (long)std::floor(slo * res), res, child_bound);
          SampleBracket b =
              child_bracket(child, 0, (long)std::ceil((shi - 1.0) * res), child_bound);
          ybr.lo = std::min(a.lo, b.lo);
          ybr.hi = std::max(a.hi, b.hi);
        }
      }
    }
    Interval im = y_imag_certified(r, L, u, Interval(ybr.lo, ybr.hi));
    size_t idx = (size_t)i;
    if (im.lo >= cap) {
      out.values[idx] = sat(im.lo);
      out.errs[idx] = 0.0;
      out.escaped[idx] = 1;
    } else if (std::isinf(im.hi)) {
      out.values[idx] = sat(im.lo);
      out.errs[idx] = 0.0;
      out.unbounded[idx] = 1;
    } else {
      out.values[idx] = im.mid();
      out.errs[idx] = detail::up(im.rad());
    }
  }
  return out;
}

EnvelopePair profile_limit(const AlphaContext& ctx, int n, int J, int resolution,
                           double cap, double c12_working) {
  if (J < 1 || n < -1) raise(Errc::ConfigError, "need J >= 1 and level >= -1");
  if (ctx.depth < n + J + 1)
    raise(Errc::DepthExhausted,
          "need context depth " + std::to_string(n + J + 1) + ", have " +
              std::to_string(ctx.depth));

  EnvelopePair out;

  BoundaryProfile low = profile_base(ctx, n + J, resolution, cap);
  for (int lev = n + J - 1; lev >= n; --lev)
    low = profile_refine(ctx, lev, low, c12_working);
  out.lower = std::move(low);

  // upper seed: the Brjuno-based bound on the level maximum
  BoundaryProfile up = profile_base(ctx, n + J, resolution, cap);
  up.upper_kind = true;
  double U = kInf;
  {
    BrjunoEnclosure B = brjuno_enclosure(ctx, n + J + 1, ctx.depth - (n + J + 1));
    if (!B.hi.is_inf()) {
      Interval bh = B.hi.as_interval();
      if (std::isfinite(bh.hi))
        U = detail::up(bh.hi / 6.283185307179586) + c12_working;
    }
  }
  if (std::isfinite(U)) {
    std::fill(up.values.begin(), up.values.end(), U);
  } else {
    // divergent or uncertified upper seed: no finite dominating constant
    std::fill(up.values.begin(), up.values.end(), -1.0);
    std::fill(up.unbounded.begin(), up.unbounded.end(), 1);
  }
  for (int lev = n + J - 1; lev >= n; --lev)
    up = profile_refine(ctx, lev, up, c12_working);
  out.upper = std::move(up);

  if (std::isfinite(U)) {
    double seed_excess = std::pow(0.9, J) * (U + 1.0);
    out.gap_bound = seed_excess + out.lower.err_max() + out.upper.err_max();
  } else {
    out.gap_bound = kInf;
  }
  return out;
}

std::vector<EndpointMark> endpoints(const AlphaContext& ctx, int n, int count,
                                    const EnvelopePair& pair) {
  if (n >= ctx.depth) raise(Errc::DepthExhausted, "level beyond context depth", n);
  if (pair.lower.values.empty()) raise(Errc::EmptyProfile, "need a computed pair");
  std::vector<EndpointMark> out;
  out.reserve((size_t)count);
  Interval rot = (n >= 0) ? ctx.alpha[(size_t)n]
                          : (ctx.stream.head_eps() > 0 ? ctx.alpha[0] : -ctx.alpha[0]);
  int res = pair.lower.resolution;
  for (int m = 0; m < count; ++m) {
    Interval ang = ifrac(Interval((double)m) * rot);
    double a = ang.mid();
    if (a < 0.0) a += 1.0;
    long k0 = (long)std::floor(ang.lo * res);
    long k1 = (long)std::ceil(ang.hi * res);
    SampleBracket lo_b = child_bracket(pair.lower, k0, k1, kInf);
    SampleBracket hi_b = child_bracket(pair.upper, k0, k1, kInf);
    EndpointMark mark;
    mark.angle = a;
    mark.bracket = Interval(lo_b.lo, std::isfinite(hi_b.hi) ? hi_b.hi : kInf);
    for (long k = k0; k <= k1; ++k) {
      size_t i = (size_t)std::clamp(k, 0L, (long)res);
      if (pair.lower.escaped[i]) mark.escaped = true;
    }
    out.push_back(mark);
  }
  return out;
}

double max_vs_brjuno(const AlphaContext& ctx, int n, const EnvelopePair& pair) {
  if (n + 1 >= ctx.depth) raise(Errc::DepthExhausted, "need level n + 1", n + 1);
  BrjunoEnclosure B = brjuno_enclosure(ctx, n + 1, ctx.depth - (n + 1));
  if (B.hi.is_inf())
    raise(Errc::DivergentBrjuno, "no convergent sum at level " + std::to_string(n + 1));
  Interval lo_iv = B.lo.as_interval(), hi_iv = B.hi.as_interval();
  double mid = 0.5 * (lo_iv.lo + hi_iv.hi) / 6.283185307179586;
  return std::abs(pair.lower.max_value() - mid);
}

double pair_gap_sup(const EnvelopePair& pair) {
  double sup = 0.0;
  bool any = false;
  for (size_t i = 0; i < pair.lower.values.size(); ++i) {
    if (pair.lower.escaped[i] || pair.lower.unbounded[i]) continue;
    if (pair.upper.escaped[i] || pair.upper.unbounded[i]) continue;
    sup = std::max(sup, pair.upper.values[i] - pair.lower.values[i]);
    any = true;
  }
  return any ? sup : kInf;
}

// ---- serialization ---------------------------------------------------------

std::string BoundaryProfile::to_json() const {
  std::string out = "{";
  out += "\"level\":" + std::to_string(level);
  out += ",\"depth\":" + std::to_string(depth);
  out += ",\"resolution\":" + std::to_string(resolution);
  out += ",\"alpha_inv\":" + json_interval(alpha_inv);
  out += ",\"cap\":" + json_str(fmt_double(cap));
  out += ",\"err\":" + json_str(fmt_double(err_max()));
  out += ",\"upper\":" + std::string(upper_kind ? "true" : "false");
  out += ",\"stream_hash\":" + json_str(stream_hash);
  out += ",\"values\":" + json_double_array(values);
  out += ",\"errs\":" + json_double_array(errs);
  out += ",\"flags\":" + json_u8_array(escaped);
  out += ",\"unbounded\":" + json_u8_array(unbounded);
  out += "}";
  return out;
}

namespace {

double parse_num(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    return std::stod(s);
  }
  return j.get<double>();
}

}  // namespace

BoundaryProfile BoundaryProfile::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BoundaryProfile p;
  p.level = j.at("level").get<int>();
  p.depth = j.at("depth").get<int>();
  p.resolution = j.at("resolution").get<int>();
  p.alpha_inv = Interval(parse_num(j.at("alpha_inv")[0]), parse_num(j.at("alpha_inv")[1]));
  p.cap = parse_num(j.at("cap"));
  p.upper_kind = j.at("upper").get<bool>();
  p.stream_hash = j.at("stream_hash").get<std::string>();
  for (auto& v : j.at("values")) p.values.push_back(parse_num(v));
  for (auto& v : j.at("errs")) p.errs.push_back(parse_num(v));
  for (auto& v : j.at("flags")) p.escaped.push_back((uint8_t)v.get<int>());
  for (auto& v : j.at("unbounded")) p.unbounded.push_back((uint8_t)v.get<int>());
  if (p.values.size() != (size_t)p.resolution + 1 || p.errs.size() != p.values.size() ||
      p.escaped.size() != p.values.size() || p.unbounded.size() != p.values.size())
    raise(Errc::CacheCorrupt, "profile arrays inconsistent with resolution");
  return p;
}

}  // namespace aalpha
