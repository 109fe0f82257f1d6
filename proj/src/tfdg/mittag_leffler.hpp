#pragma once

namespace tfdg {

// E_{alpha,beta}(-x) for alpha in (0, 1], beta in (0, 2], x >= 0.
// Absolute error stays below ~1e-12 for x up to 1e12: power series in
// double-double precision while x^(1/alpha) <= 36, algebraic asymptotic
// expansion with optimal truncation beyond.
double ml_neg(double alpha, double beta, double x);

// E_{alpha,1}(-lambda t^alpha), the decaying mode of the scalar fractional
// relaxation equation u' + lambda D^{1-alpha} u = 0, u(0) = 1.
double mode_solution(double alpha, double lambda, double t);

}  // namespace tfdg
