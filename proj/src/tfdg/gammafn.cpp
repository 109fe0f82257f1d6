#include "tfdg/gammafn.hpp"

#include <array>
#include <cmath>

namespace tfdg {

double gammafn(double x) {
  require(x > 0.0, ErrorCode::domain, "gammafn: requires x > 0");
  return std::tgamma(x);
}

double sinpi(double x) {
  double r = std::remainder(x, 2.0);  // x - 2n, in [-1, 1]
  // fold into [-1/2, 1/2] so integers map to an exact zero
  if (r > 0.5)
    r = 1.0 - r;
  else if (r < -0.5)
    r = -1.0 - r;
  return std::sin(M_PI * r);
}

double rgammafn(double x) {
  if (x > 0.5) {
    if (x > 178.0) return 0.0;
    return 1.0 / std::tgamma(x);
  }
  // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
  double s = sinpi(x);
  if (s == 0.0) return 0.0;
  double y = 1.0 - x;
  if (y <= 170.0) return std::tgamma(y) * s / M_PI;
  double l = std::lgamma(y) + std::log(std::abs(s) / M_PI);
  double v = std::exp(l);
  return (s > 0.0) ? v : -v;
}

namespace {

// B_{2n} / (2n (2n-1)), n = 1..13, as exact rationals
std::array<DD, 13> stirling_coeffs() {
  auto frac = [](double num, double den) { return dd_div(DD(num), DD(den)); };
  return {
      frac(1.0, 12.0),
      frac(-1.0, 360.0),
      frac(1.0, 1260.0),
      frac(-1.0, 1680.0),
      frac(1.0, 1188.0),
      dd_div(frac(-691.0, 2730.0), DD(132.0)),
      frac(1.0, 156.0),
      dd_div(frac(-3617.0, 510.0), DD(240.0)),
      dd_div(frac(43867.0, 798.0), DD(306.0)),
      dd_div(frac(-174611.0, 330.0), DD(380.0)),
      dd_div(frac(854513.0, 138.0), DD(462.0)),
      dd_div(frac(-236364091.0, 2730.0), DD(552.0)),
      dd_div(frac(8553103.0, 6.0), DD(650.0)),
  };
}

}  // namespace

namespace {

// Stirling sum for z >= 40, together with the log of the recurrence product
// lifting smaller arguments.
DD lgamma_lifted(DD z, DD& log_shift) {
  static const std::array<DD, 13> coeffs = stirling_coeffs();
  static const DD half_ln_2pi = dd_ldexp(dd_log(dd_ldexp(dd_pi, 1)), -1);

  DD shift(1.0);
  while (z.hi < 40.0) {
    shift = dd_mul(shift, z);
    z = dd_add(z, DD(1.0));
  }
  log_shift = (shift.hi == 1.0 && shift.lo == 0.0) ? DD(0.0) : dd_log(shift);
  DD s = dd_add(dd_sub(dd_mul(dd_sub(z, DD(0.5)), dd_log(z)), z), half_ln_2pi);
  DD zi = dd_div(DD(1.0), z);
  DD z2 = dd_mul(zi, zi);
  DD t = zi;
  for (const DD& c : coeffs) {
    s = dd_add(s, dd_mul(c, t));
    t = dd_mul(t, z2);
  }
  return s;
}

}  // namespace

DD dd_gamma(DD z) {
  require(z.hi > 0.0, ErrorCode::domain, "dd_gamma: requires z > 0");
  DD log_shift;
  DD s = lgamma_lifted(z, log_shift);
  return dd_exp(dd_sub(s, log_shift));
}

DD dd_lgamma(DD z) {
  require(z.hi > 0.0, ErrorCode::domain, "dd_lgamma: requires z > 0");
  DD log_shift;
  DD s = lgamma_lifted(z, log_shift);
  return dd_sub(s, log_shift);
}

}  // namespace tfdg
