#pragma once

#include <vector>

namespace tfdg {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule on (-1, 1).
QuadRule gauss_legendre(int n);

// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on (-1, 1), a, b > -1.
QuadRule gauss_jacobi(int n, double a, double b);

// Affine image of a (-1,1) rule on (lo, hi) with plain weight scaling.
QuadRule scaled_to(const QuadRule& base, double lo, double hi);

// Rule approximating int_lo^hi (x - lo)^sigma f(x) dx via sum w_i f(x_i);
// the singular factor is folded into the weights.
QuadRule gauss_jacobi_left(int n, double sigma, double lo, double hi);

// Same for int_lo^hi (hi - x)^sigma f(x) dx.
QuadRule gauss_jacobi_right(int n, double sigma, double lo, double hi);

}  // namespace tfdg
