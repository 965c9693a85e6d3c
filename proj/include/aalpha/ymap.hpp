#pragma once

#include "aalpha/cfrac.hpp"
#include "aalpha/errors.hpp"
#include "aalpha/interval.hpp"
#include "aalpha/tower.hpp"

namespace aalpha {

// Point of the closed half-plane Im w >= -1.
struct HalfPlanePoint {
  double re = 0.0;
  double im = 0.0;
};

// The half-plane contraction map
//   Y_r(w) = r Re w + (i/2pi) log | (e^{-3 pi r} - e^{-pi r i} e^{-2 pi r i w})
//                                  / (e^{-3 pi r} - e^{pi r i}) |.
// It preserves vertical lines, fixes 0, contracts by 9/10, and maps the
// closed half-plane Im >= -1 into Im > -9/10. The imaginary part is computed
// entirely through logs of the squared modulus
//   |num|^2 = (1-q)^2 + 4 q sin^2(theta/2),  q = e^{-pi r (3 + 2 Im w)},
//   theta    = pi r (1 + 2 Re w),
// which stays in range for every Im w >= -1, arbitrarily large included.
//
// All kernels take theta in units of pi so callers can reduce huge real
// parts exactly before any trigonometry.

namespace ykernel {

template <typename S>
S sinpi_s(S u) {
  S r = std::fmod(u, S(2));
  if (r > S(1)) r -= S(2);
  if (r < S(-1)) r += S(2);
  if (r > S(0.5)) r = S(1) - r;
  if (r < S(-0.5)) r = S(-1) - r;
  return std::sin(S(3.14159265358979323846264338328L) * r);
}

// Im Y_r at theta = pi*u, height y.
template <typename S>
S y_imag_theta(S r, S u, S y) {
  const S pi = S(3.14159265358979323846264338328L);
  S q = std::exp(-pi * r * (S(3) + S(2) * y));
  S s = sinpi_s(u * S(0.5));
  S num = (S(1) - q) * (S(1) - q) + S(4) * q * s * s;
  S ud = std::exp(S(-3) * pi * r);
  S sd = sinpi_s(r * S(0.5));
  S den = (S(1) - ud) * (S(1) - ud) + S(4) * ud * sd * sd;
  return r * y + (std::log(num) - std::log(den)) / (S(4) * pi);
}

}  // namespace ykernel

// Scalar fast paths (double by default, long double behind the extended flag).
double y_imag_theta(double r, double u, double y);
long double y_imag_theta_ext(long double r, long double u, long double y);

// Im Y_r(x + i y); real part of the image is r*x by construction.
double vertical_image(double r, double x, double y);

HalfPlanePoint y_r(double r, HalfPlanePoint w);

// Signed level map: Y_{alpha_n} when eps_n = -1, -conj(Y_{alpha_n}) when
// eps_n = +1. The imaginary part is the same either way.
HalfPlanePoint y_level(const AlphaContext& ctx, int n, HalfPlanePoint w);

// Certified enclosure of Im Y_r(theta/(pi) line, y). `log_r_inv` supplies
// log(1/r) when r is below plain scale; the result saturates to an infinite
// upper endpoint when the image provably exceeds double range.
Interval y_imag_certified(const Interval& r, const Tower& log_r_inv,
                          const Interval& u_theta, const Interval& y);

// Convenience for plain r.
Interval y_imag_certified(const Interval& r, const Interval& u_theta,
                          const Interval& y);

}  // namespace aalpha
