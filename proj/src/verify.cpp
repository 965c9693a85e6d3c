#include "aalpha/verify.hpp"

#include "aalpha/arith.hpp"
#include "aalpha/ymap.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace aalpha {

namespace {

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(uint64_t seed) : rng(seed) {}
  double uniform(double a, double b) {
    return a + (b - a) * std::generate_canonical<double, 53>(rng);
  }
  double radius() {
    // mostly generic r, with a tail of small parameters
    if (uniform(0.0, 1.0) < 0.8) return uniform(1e-3, 0.499);
    return std::pow(10.0, uniform(-8.0, -3.0));
  }
};

}  // namespace

std::vector<PropertyResult> run_property_suites(uint64_t seed, bool extended) {
  std::vector<PropertyResult> out;
  Sampler s(seed);
  const double eq_tol = extended ? 1e-15 : 1e-9;

  {  // uniform contraction by 9/10
    PropertyResult pr{"contraction", true, -1e9, 1e-9, 100000};
    for (long i = 0; i < pr.samples; ++i) {
      double r = s.radius();
      double x1 = s.uniform(-10.0 / r, 10.0 / r), x2 = s.uniform(-10.0 / r, 10.0 / r);
      double y1 = s.uniform(-1.0, 100.0), y2 = s.uniform(-1.0, 100.0);
      HalfPlanePoint a = y_r(r, {x1, y1}), b = y_r(r, {x2, y2});
      double excess = hypot2(a.re - b.re, a.im - b.im) -
                      0.9 * hypot2(x1 - x2, y1 - y2);
      pr.worst = std::max(pr.worst, excess);
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  {  // image bound Im >= -9/10
    PropertyResult pr{"image-bound", true, -1e9, 1e-9, 100000};
    for (long i = 0; i < pr.samples; ++i) {
      double r = s.radius();
      double x = s.uniform(-10.0 / r, 10.0 / r), y = s.uniform(-1.0, 100.0);
      HalfPlanePoint a = y_r(r, {x, y});
      pr.worst = std::max(pr.worst, -0.9 - a.im);
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  {  // translation equation Y(w + 1/r) = Y(w) + 1
    PropertyResult pr{"translation", true, 0.0, eq_tol, 10000};
    for (long i = 0; i < pr.samples; ++i) {
      double r = s.uniform(1e-3, 0.499);
      double x = s.uniform(-5.0 / r, 5.0 / r), y = s.uniform(-1.0, 50.0);
      double res;
      if (extended) {
        long double im1 = y_imag_theta_ext(r, r * (1.0L + 2.0L * (x + 1.0 / r)), y);
        long double im0 = y_imag_theta_ext(r, r * (1.0L + 2.0L * x), y);
        long double re1 = (long double)r * (x + 1.0 / r), re0 = (long double)r * x;
        res = (double)std::max(std::abs(im1 - im0), std::abs(re1 - re0 - 1.0L));
      } else {
        HalfPlanePoint a = y_r(r, {x + 1.0 / r, y}), b = y_r(r, {x, y});
        res = std::max(std::abs(a.im - b.im), std::abs(a.re - b.re - 1.0));
      }
      pr.worst = std::max(pr.worst, res);
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  {  // shifted-line identities for both signs
    PropertyResult pr{"shifted-line", true, 0.0, eq_tol, 10000};
    for (long i = 0; i < pr.samples; ++i) {
      double r = s.uniform(1e-3, 0.499);
      double t = s.uniform(-1.0, 50.0);
      HalfPlanePoint a = y_r(r, {1.0 / r - 1.0, t}), b = y_r(r, {0.0, t});
      // holomorphic sign: shift by (1 - r)
      double res = std::max(std::abs(a.im - b.im), std::abs(a.re - b.re - (1.0 - r)));
      // conjugated sign: real parts negate, shift by (r - 1)
      double res2 = std::max(std::abs(a.im - b.im),
                             std::abs((-a.re) - (-b.re) - (r - 1.0)));
      pr.worst = std::max({pr.worst, res, res2});
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  {  // fixed point and imaginary-axis invariance
    PropertyResult pr{"fixed-point-axis", true, 0.0, 1e-12, 0};
    for (double r = 0.01; r < 0.5; r += 0.01) {
      HalfPlanePoint z = y_r(r, {0.0, 0.0});
      pr.worst = std::max(pr.worst, hypot2(z.re, z.im));
      for (double y = -1.0; y <= 100.0; y += 0.5) {
        HalfPlanePoint a = y_r(r, {0.0, y});
        pr.worst = std::max(pr.worst, std::abs(a.re));
        ++pr.samples;
      }
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  {  // inverse pair g(h(y)) = y
    PropertyResult pr{"inverse-pair", true, 0.0, 1e-10, 100};
    for (long i = 0; i < pr.samples; ++i) {
      double a = s.uniform(0.01, 0.499);
      double y = s.uniform(-5.0, 60.0);
      double res = std::abs(yoccoz_g(a, yoccoz_h(a, y)) - y);
      pr.worst = std::max(pr.worst, res);
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  {  // comparison-map bounds e^y >= h(y) >= y + 1
    PropertyResult pr{"h-bounds", true, 0.0, 1e-12, 20000};
    for (long i = 0; i < pr.samples; ++i) {
      double a = s.uniform(0.001, 0.499);
      double y = s.uniform(-30.0, 60.0);
      double h = yoccoz_h(a, y);
      pr.worst = std::max(pr.worst, (y + 1.0) - h);
      if (y < 500.0) pr.worst = std::max(pr.worst, h - std::exp(y));
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  {  // grid pullback against the set-based construction
    PropertyResult pr{"oracle-equivalence", true, 0.0, 2.0 / 64.0, 2};
    DigitStream golden = DigitStream::periodic(1, -1, {{3, -1}});
    DigitStream silver = DigitStream::periodic(0, 1, {{2, 1}});
    for (const DigitStream* st : {&golden, &silver}) {
      AlphaContext ctx = enclose_alphas(*st, 8, 24);
      BoundaryProfile p = profile_base(ctx, 1, 64);
      p = profile_refine(ctx, 0, p);
      p = profile_refine(ctx, -1, p);
      CloudEnvelope cl = cloud_boundary(ctx, -1, 2, 64);
      pr.worst = std::max(pr.worst, cloud_vs_profile_sup(cl, p));
    }
    pr.pass = pr.worst <= pr.bound;
    out.push_back(pr);
  }
  return out;
}

std::string properties_table(const std::vector<PropertyResult>& results,
                             uint64_t seed) {
  std::ostringstream os;
  os << "property              status   worst        bound        samples  (seed "
     << seed << ")\n";
  for (const auto& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%-20s  %-6s  %-11.3e  %-11.3e  %ld\n",
                  r.name.c_str(), r.pass ? "pass" : "FAIL", r.worst, r.bound,
                  r.samples);
    os << line;
  }
  return os.str();
}

// ---- set-based oracle -------------------------------------------------------

namespace {

struct Cloud {
  double x1 = 0.0;  // domain [0, x1]
  std::vector<double> h;  // lower envelope per bin center
  double binw() const { return x1 / (double)h.size(); }
};

Cloud envelope_from(const std::vector<std::pair<double, double>>& pts, double x1,
                    size_t bins) {
  Cloud c;
  c.x1 = x1;
  c.h.assign(bins, std::numeric_limits<double>::infinity());
  for (auto& [x, y] : pts) {
    double t = x / x1;
    if (t < 0.0 || t >= 1.0) t -= std::floor(t);
    size_t b = std::min(bins - 1, (size_t)(t * bins));
    c.h[b] = std::min(c.h[b], y);
  }
  // fill sampling gaps from the nearest populated bin
  for (size_t i = 0; i < bins; ++i) {
    if (std::isinf(c.h[i])) {
      for (size_t d = 1; d < bins; ++d) {
        size_t l = (i + bins - d) % bins, r = (i + d) % bins;
        if (!std::isinf(c.h[l])) { c.h[i] = c.h[l]; break; }
        if (!std::isinf(c.h[r])) { c.h[i] = c.h[r]; break; }
      }
    }
  }
  return c;
}

}  // namespace

CloudEnvelope cloud_boundary(const AlphaContext& ctx, int level, int depth_j,
                             int bins_per_unit, int points_per_bin) {
  int top = level + depth_j;
  if (top < 0 || top >= ctx.depth)
    raise(Errc::DepthExhausted, "cloud seed level outside context");
  auto amid = [&](int k) { return ctx.alpha[(size_t)k].mid(); };

  double inv_top = 1.0 / amid(top);
  size_t npts = (size_t)std::ceil(inv_top * bins_per_unit * points_per_bin);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(npts + 1);
  for (size_t i = 0; i <= npts; ++i)
    pts.emplace_back(inv_top * (double)i / (double)npts, -1.0);

  for (int lev = top - 1; lev >= level; --lev) {
    double r = amid(lev + 1);
    int eps = ctx.eps(lev + 1);
    double inv_child = 1.0 / r;
    double inv_par = lev >= 0 ? 1.0 / amid(lev) : 1.0;
    std::vector<std::pair<double, double>> img;
    img.reserve(pts.size() * 4);
    if (lev >= 0) {
      const Digit& d = ctx.stream.digit(lev);
      if (!d.exact)
        raise(Errc::ConfigError, "set-based oracle needs exact digits");
      long long a = d.a;
      for (auto& [xp, yp] : pts) {
        double im = y_imag_theta(r, r * (1.0 + 2.0 * xp), yp);
        if (eps < 0) {
          for (long long l = 0; l <= a - 2; ++l)
            img.emplace_back(r * xp + (double)l, im);
          if (xp <= inv_child - 1.0 + 1e-9)
            img.emplace_back(r * xp + (double)(a - 1), im);
        } else {
          for (long long l = 1; l <= a; ++l)
            img.emplace_back(-r * xp + (double)l, im);
          if (xp >= inv_child - 1.0 - 1e-9)
            img.emplace_back(-r * xp + (double)(a + 1), im);
        }
      }
    } else {
      for (auto& [xp, yp] : pts) {
        double im = y_imag_theta(r, r * (1.0 + 2.0 * xp), yp);
        double x_img = eps < 0 ? r * xp : 1.0 - r * xp;
        img.emplace_back(x_img, im);
      }
    }
    size_t bins = (size_t)std::ceil(inv_par * bins_per_unit * 4);
    Cloud c = envelope_from(img, inv_par, bins);
    pts.clear();
    pts.reserve(c.h.size());
    for (size_t b = 0; b < c.h.size(); ++b)
      pts.emplace_back((b + 0.5) * c.binw(), c.h[b]);
  }

  CloudEnvelope out;
  out.x0 = 0.0;
  out.x1 = level >= 0 ? 1.0 / amid(level) : 1.0;
  out.bins = (int)pts.size();
  out.heights.reserve(pts.size());
  for (auto& [x, y] : pts) out.heights.push_back(y);
  return out;
}

double cloud_vs_profile_sup(const CloudEnvelope& cloud, const BoundaryProfile& p) {
  double sup = 0.0;
  for (int b = 0; b < cloud.bins; ++b) {
    double x = cloud.x1 * ((double)b + 0.5) / (double)cloud.bins;
    double s = x - std::floor(x);
    double v = p.at(s);
    sup = std::max(sup, std::abs(cloud.heights[(size_t)b] - v));
  }
  return sup;
}

}  // namespace aalpha
