#include "tfdg/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tfdg/errors.hpp"
#include "tfdg/gammafn.hpp"

namespace tfdg {

QuadRule gauss_jacobi(int n, double a, double b) {
  require(n >= 1, ErrorCode::invalid_argument, "gauss_jacobi: n >= 1");
  require(a > -1.0 && b > -1.0, ErrorCode::domain, "gauss_jacobi: exponents must be > -1");

  // Golub-Welsch on the symmetric Jacobi matrix of the three-term recurrence
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  double ab = a + b;
  for (int k = 0; k < n; ++k) {
    double d;
    if (k == 0) {
      d = (b - a) / (ab + 2.0);
    } else {
      double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
      d = (b * b - a * a) / den;
    }
    J(k, k) = d;
    if (k >= 1) {
      double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
      double den = (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0);
      double e = std::sqrt(num / den);
      J(k, k - 1) = e;
      J(k - 1, k) = e;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  require(es.info() == Eigen::Success, ErrorCode::internal, "gauss_jacobi: eigensolve failed");

  double mu0 = std::pow(2.0, ab + 1.0) * gammafn(a + 1.0) * gammafn(b + 1.0) / gammafn(ab + 2.0);
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    rule.w[i] = mu0 * v0 * v0;
  }
  return rule;
}

QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadRule scaled_to(const QuadRule& base, double lo, double hi) {
  QuadRule rule;
  rule.x.resize(base.size());
  rule.w.resize(base.size());
  double mid = 0.5 * (lo + hi);
  double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < base.size(); ++i) {
    rule.x[i] = mid + half * base.x[i];
    rule.w[i] = half * base.w[i];
  }
  return rule;
}

QuadRule gauss_jacobi_left(int n, double sigma, double lo, double hi) {
  require(hi > lo, ErrorCode::invalid_argument, "gauss_jacobi_left: empty interval");
  QuadRule base = gauss_jacobi(n, 0.0, sigma);
  double half = 0.5 * (hi - lo);
  double scale = std::pow(half, sigma + 1.0);
  QuadRule rule;
  rule.x.resize(base.size());
  rule.w.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    rule.x[i] = lo + half * (1.0 + base.x[i]);
    rule.w[i] = scale * base.w[i];
  }
  return rule;
}

QuadRule gauss_jacobi_right(int n, double sigma, double lo, double hi) {
  require(hi > lo, ErrorCode::invalid_argument, "gauss_jacobi_right: empty interval");
  QuadRule base = gauss_jacobi(n, sigma, 0.0);
  double half = 0.5 * (hi - lo);
  double scale = std::pow(half, sigma + 1.0);
  QuadRule rule;
  rule.x.resize(base.size());
  rule.w.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    rule.x[i] = lo + half * (1.0 + base.x[i]);
    rule.w[i] = scale * base.w[i];
  }
  return rule;
}

}  // namespace tfdg
