#pragma once

#include "tfdg/ddouble.hpp"

namespace tfdg {

// Gamma(x) for x > 0.
double gammafn(double x);

// 1/Gamma(x) for any real x; returns 0 at the poles x = 0, -1, -2, ...
double rgammafn(double x);

// sin(pi x) without the argument-reduction loss of sin(M_PI * x).
double sinpi(double x);

// Gamma(z) for z > 0 in double-double precision (Stirling series above z = 40,
// downward recurrence below). Relative error around 1e-29.
DD dd_gamma(DD z);

// log Gamma(z) for z > 0 in double-double precision; same scheme, no final exp,
// so it stays finite where Gamma itself would overflow.
DD dd_lgamma(DD z);

}  // namespace tfdg
