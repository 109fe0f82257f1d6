#include "tfdg/mittag_leffler.hpp"

#include <cmath>
#include <limits>

#include "tfdg/ddouble.hpp"
#include "tfdg/errors.hpp"
#include "tfdg/gammafn.hpp"

namespace tfdg {

namespace {

// Alternating power series sum_k (-x)^k / Gamma(alpha k + beta). The largest
// term reaches exp(x^(1/alpha)), so every term is formed in double-double
// precision from k log x - log Gamma(alpha k + beta); plain doubles would lose
// the result to cancellation well before the series/asymptotic crossover.
double series_dd(double alpha, double beta, double x, double y) {
  DD lx = dd_log(DD(x));
  DD a(alpha), b(beta);
  DD sum(0.0);
  for (long k = 0;; ++k) {
    require(k <= 2000000, ErrorCode::internal, "ml_neg: series did not converge");
    DD kk(static_cast<double>(k));
    DD s = dd_add(dd_mul(a, kk), b);
    DD lt = dd_sub(dd_mul(kk, lx), dd_lgamma(s));
    if (lt.hi < -100.0 && static_cast<double>(k) > y) break;
    DD term = dd_exp(lt);
    sum = (k % 2 == 0) ? dd_add(sum, term) : dd_sub(sum, term);
  }
  return sum.value();
}

// Algebraic expansion sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(beta - alpha k).
// Term magnitudes follow the envelope x^{-k} Gamma(1-beta+alpha*k) modulated
// by |sin(pi(beta-alpha*k))| from the reflection formula, so successive terms
// are not monotone and a stop-when-terms-grow rule can fire long before the
// envelope bottoms out. The envelope minimum is where
// alpha*psi(1-beta+alpha*k) = log(x), i.e. 1-beta+alpha*k ~ y+1/2, and the
// minimal term is O(exp(-y)): truncating there keeps the tail below 1e-15
// for every y past the series crossover. The same sin factor makes single
// small terms meaningless: a term sitting on or near a pole of Gamma dips
// many orders below its neighbours, so early exit is allowed only after four
// consecutive negligible terms (which does cover alpha = 1, where the whole
// tail vanishes).
double asymptotic(double alpha, double beta, double x, double y) {
  double k_opt = (y - 0.5 + beta) / alpha;
  int k_max = (k_opt > 1e6) ? 1000000 : std::max(1, static_cast<int>(k_opt));
  double sum = 0.0;
  double xk = 1.0;
  int small_run = 0;
  for (int k = 1; k <= k_max; ++k) {
    xk /= x;
    double t = xk * rgammafn(beta - alpha * static_cast<double>(k));
    sum += (k % 2 == 1) ? t : -t;
    if (std::abs(t) < 1e-18) {
      if (++small_run >= 4) break;
    } else {
      small_run = 0;
    }
  }
  return sum;
}

}  // namespace

double ml_neg(double alpha, double beta, double x) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorCode::domain, "ml_neg: alpha must lie in (0, 1]");
  require(beta > 0.0 && beta <= 2.0, ErrorCode::domain, "ml_neg: beta must lie in (0, 2]");
  require(x >= 0.0, ErrorCode::domain, "ml_neg: x must be nonnegative");
  if (x == 0.0) return rgammafn(beta);

  double y = std::pow(x, 1.0 / alpha);
  if (y <= 36.0) return series_dd(alpha, beta, x, y);
  return asymptotic(alpha, beta, x, y);
}

double mode_solution(double alpha, double lambda, double t) {
  require(lambda >= 0.0, ErrorCode::domain, "mode_solution: lambda must be nonnegative");
  require(t >= 0.0, ErrorCode::domain, "mode_solution: t must be nonnegative");
  return ml_neg(alpha, 1.0, lambda * std::pow(t, alpha));
}

}  // namespace tfdg
