#include "aalpha/ymap.hpp"

namespace aalpha {

namespace {

constexpr double kPlainR = 1e-8;  // below this the (pi r)^2 factor is pulled out

const double kInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b), scalar, monotone building block
double lse1(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  double m = std::max(a, b);
  if (std::isinf(m)) return m;
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

Interval lse(const Interval& a, const Interval& b) {
  return {detail::dn(lse1(a.lo, b.lo)), detail::up(lse1(a.hi, b.hi))};
}

// (1 - e^{-z})/z on z >= 0, decreasing; z may touch 0.
Interval one_minus_exp_over(const Interval& z) {
  double lo = 1.0, hi = 1.0;
  if (z.hi > 0.0) lo = detail::dn(detail::dn(-std::expm1(-z.hi) / z.hi));
  if (z.lo > 0.0) hi = detail::up(detail::up(-std::expm1(-z.lo) / z.lo));
  return {std::max(lo, 0.0), std::min(hi, 1.0)};
}

// Enclosure of Im Y_r on the vertical line theta = pi u at a single height y.
Interval y_point(const Interval& r, const Tower& log_r_inv, const Interval& u,
                 double ypt) {
  const Interval pi = ipi();
  if (std::isinf(ypt)) return {-kInf, kInf};
  Interval y(ypt);

  if (r.lo >= kPlainR) {
    // direct evaluation; 1 - q >= 1 - e^{-pi r} keeps every log in range
    Interval z = pi * r * (Interval(3.0) + 2.0 * y);
    Interval q = iexp(-z);
    Interval s2 = sqr(sinpi(u * 0.5));
    Interval num = sqr(Interval(1.0) - q) + 4.0 * q * s2;
    Interval ud = iexp(-3.0 * pi * r);
    Interval sd2 = sqr(sinpi(r * 0.5));
    Interval den = sqr(Interval(1.0) - ud) + 4.0 * ud * sd2;
    return r * y + (ilog(num) - ilog(den)) / (4.0 * pi);
  }
  if (!(r.hi < kPlainR))
    raise(Errc::DomainViolation, "r enclosure straddles the plain/tiny split");

  // r below plain scale: factor (pi r)^2 out of both squared moduli.
  //   den/(pi r)^2 = 9 E3^2 + ud Es^2 =: D
  Interval z = pi * r * (Interval(3.0) + 2.0 * y);
  Interval logq = -z;
  Interval z3 = 3.0 * pi * r;
  Interval E3 = one_minus_exp_over(z3);
  Interval ud = iexp(-z3);
  Interval Es(detail::dn(1.0 - 1e-16), 1.0);  // sin(pi r/2)/(pi r/2), r < 1e-8
  Interval D = 9.0 * sqr(E3) + ud * sqr(Es);

  Interval s2 = sqr(sinpi(u * 0.5));
  Interval twoL = log_r_inv.plain() ? 2.0 * log_r_inv.m
                                    : 2.0 * log_r_inv.as_interval();

  Interval core;
  if (z.hi <= 1.0) {
    // small exponent: (1-q) = z Eq with Eq near 1, so the L in log(1-q)
    // cancels analytically inside A
    Interval Eq = one_minus_exp_over(z);
    Interval A = 2.0 * ilog((Interval(3.0) + 2.0 * y) * Eq);
    Interval B = ilog(4.0 * s2) + logq + twoL - 2.0 * ilog(pi);
    core = (lse(A, B) - ilog(D)) / (4.0 * pi);
  } else {
    // large exponent: 1 - q is order one, take logs directly
    Interval oneq = -iexpm1(-z);
    Interval A = 2.0 * ilog(oneq) + twoL - 2.0 * ilog(pi);
    Interval B = ilog(4.0 * s2) + logq + twoL - 2.0 * ilog(pi);
    core = (lse(A, B) - ilog(D)) / (4.0 * pi);
  }
  return r * y + core;
}

}  // namespace

double y_imag_theta(double r, double u, double y) {
  return ykernel::y_imag_theta<double>(r, u, y);
}

long double y_imag_theta_ext(long double r, long double u, long double y) {
  return ykernel::y_imag_theta<long double>(r, u, y);
}

double vertical_image(double r, double x, double y) {
  return y_imag_theta(r, r * (1.0 + 2.0 * x), y);
}

HalfPlanePoint y_r(double r, HalfPlanePoint w) {
  if (!(r > 0.0 && r < 0.5))
    raise(Errc::DomainViolation, "r must lie in (0, 1/2)");
  if (!(w.im >= -1.0))
    raise(Errc::DomainViolation, "w must satisfy Im w >= -1");
  HalfPlanePoint out;
  out.re = r * w.re;
  out.im = y_imag_theta(r, r * (1.0 + 2.0 * w.re), w.im);
  return out;
}

HalfPlanePoint y_level(const AlphaContext& ctx, int n, HalfPlanePoint w) {
  double r = ctx.alpha_at(n).mid();
  HalfPlanePoint out = y_r(r, w);
  if (ctx.eps(n) > 0) out.re = -out.re;
  return out;
}

Interval y_imag_certified(const Interval& r, const Interval& u_theta,
                          const Interval& y) {
  return y_imag_certified(r, Tower(ilog(recip(r))), u_theta, y);
}

Interval y_imag_certified(const Interval& r, const Tower& log_r_inv,
                          const Interval& u_theta, const Interval& y) {
  if (!(y.lo >= -1.0))
    raise(Errc::DomainViolation, "heights must satisfy y >= -1");
  // Im Y_r is strictly increasing along vertical lines, so the image of a
  // height interval is spanned by its endpoint images.
  Interval lo_e = y_point(r, log_r_inv, u_theta, y.lo);
  if (y.hi == y.lo) return lo_e;
  Interval hi_e = y_point(r, log_r_inv, u_theta, y.hi);
  return {lo_e.lo, hi_e.hi};
}

}  // namespace aalpha
