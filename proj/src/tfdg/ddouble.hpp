#pragma once

#include <cmath>
#include <cstdint>

#include "tfdg/errors.hpp"

// Double-double arithmetic (~31 significant digits). Compensated-summation
// primitives follow the usual error-free transformations; exp/log use range
// reduction plus Taylor and Newton refinement. Only what the extended-precision
// gamma and Mittag-Leffler paths need.

namespace tfdg {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

namespace dd_detail {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

// requires |a| >= |b|
inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

}  // namespace dd_detail

inline DD dd_add(const DD& a, const DD& b) {
  using namespace dd_detail;
  double s1, s2, t1, t2;
  s1 = two_sum(a.hi, b.hi, s2);
  t1 = two_sum(a.lo, b.lo, t2);
  s2 += t1;
  s1 = quick_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = quick_two_sum(s1, s2, s2);
  return DD(s1, s2);
}

inline DD dd_neg(const DD& a) { return DD(-a.hi, -a.lo); }
inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(const DD& a, const DD& b) {
  using namespace dd_detail;
  double p1, p2;
  p1 = two_prod(a.hi, b.hi, p2);
  p2 += a.hi * b.lo + a.lo * b.hi;
  p1 = quick_two_sum(p1, p2, p2);
  return DD(p1, p2);
}

inline DD dd_div(const DD& a, const DD& b) {
  using namespace dd_detail;
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, DD(q1)));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, DD(q2)));
  double q3 = r.hi / b.hi;
  double s1, s2;
  s1 = quick_two_sum(q1, q2, s2);
  DD q(s1, s2);
  return dd_add(q, DD(q3));
}

inline DD operator+(const DD& a, const DD& b) { return dd_add(a, b); }
inline DD operator-(const DD& a, const DD& b) { return dd_sub(a, b); }
inline DD operator*(const DD& a, const DD& b) { return dd_mul(a, b); }
inline DD operator/(const DD& a, const DD& b) { return dd_div(a, b); }
inline DD operator-(const DD& a) { return dd_neg(a); }

inline bool operator<(const DD& a, const DD& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator<=(const DD& a, const DD& b) { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) { return !(a < b); }

inline DD dd_abs(const DD& a) { return a.hi < 0.0 ? dd_neg(a) : a; }

inline DD dd_ldexp(const DD& a, int n) { return DD(std::ldexp(a.hi, n), std::ldexp(a.lo, n)); }

inline DD dd_sqrt(const DD& a) {
  // Karp's trick: one Newton correction on top of a double seed
  require(a.hi >= 0.0, ErrorCode::domain, "dd_sqrt: negative argument");
  if (a.hi == 0.0) return DD(0.0);
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  DD err = dd_sub(a, dd_mul(DD(ax), DD(ax)));
  return dd_add(DD(ax), DD(err.hi * (x * 0.5)));
}

inline const DD dd_ln2(6.931471805599452862e-01, 2.319046813846299558e-17);
inline const DD dd_pi(3.141592653589793116e+00, 1.224646799147353207e-16);

inline DD dd_exp(const DD& a) {
  // exp(a) = 2^m exp(r)^(2^9), |r| <= ln2/2 scaled down by 512. The repeated
  // squaring runs on s = exp - 1 (s <- 2s + s^2) so the fractional part keeps
  // full relative precision.
  if (a.hi > 709.0) fail(ErrorCode::domain, "dd_exp: overflow");
  if (a.hi < -709.0) return DD(0.0);
  double m = std::floor(a.hi / dd_ln2.hi + 0.5);
  DD r = dd_sub(a, dd_mul(dd_ln2, DD(m)));
  r = dd_ldexp(r, -9);
  DD s = r;
  DD term = r;
  for (int k = 2; k < 24; ++k) {
    term = dd_mul(term, r);
    term = dd_div(term, DD(static_cast<double>(k)));
    s = dd_add(s, term);
    if (std::abs(term.hi) < 1.0e-40) break;
  }
  for (int i = 0; i < 9; ++i) s = dd_add(dd_ldexp(s, 1), dd_mul(s, s));
  return dd_ldexp(dd_add(s, DD(1.0)), static_cast<int>(m));
}

inline DD dd_log(const DD& a) {
  require(a.hi > 0.0, ErrorCode::domain, "dd_log: non-positive argument");
  DD y(std::log(a.hi));
  for (int it = 0; it < 2; ++it) {
    // y <- y + a exp(-y) - 1
    DD corr = dd_sub(dd_mul(a, dd_exp(dd_neg(y))), DD(1.0));
    y = dd_add(y, corr);
  }
  return y;
}

inline DD dd_npow(DD base, unsigned n) {
  DD result(1.0);
  while (n > 0) {
    if (n & 1u) result = dd_mul(result, base);
    base = dd_mul(base, base);
    n >>= 1u;
  }
  return result;
}

inline DD dd_pow(const DD& a, const DD& b) { return dd_exp(dd_mul(b, dd_log(a))); }

}  // namespace tfdg
