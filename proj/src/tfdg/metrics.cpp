#include "metrics.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"
#include "quadrature.hpp"

namespace tfdg {

double e1_l2l2(const DGSolution& U, const DGSolution& ref) {
  DGSolution Up = prolong_time(prolong_space(U, ref.space), ref.grid);
  double sum = 0.0;
  for (std::size_t j = 1; j <= ref.grid.steps(); ++j) {
    Eigen::VectorXd e = ref.slabs[j - 1] - Up.slabs[j - 1];
    sum += ref.grid.tau(j) * e.dot(ref.space.mass * e);
  }
  return std::sqrt(std::max(sum, 0.0));
}

double e1_l2l2(const DGSolution& U, const SpectralReference& ref) {
  const auto K = static_cast<int>(ref.u0_modal.size());
  Eigen::MatrixXd B = sine_hat_overlaps(U.space, K);
  QuadRule gl = gauss_legendre(8);
  double sum = 0.0;
  for (std::size_t j = 1; j <= U.grid.steps(); ++j) {
    const Eigen::VectorXd& u = U.slabs[j - 1];
    Eigen::VectorXd m = B * u;
    // part of U_j outside the truncated series; constant over the slab
    double defect = std::max(u.dot(U.space.mass * u) - m.squaredNorm(), 0.0);
    double t0 = U.grid.node(j - 1);
    double t1 = U.grid.node(j);
    // the series has a t^alpha kink at the origin; grade the first slab
    // toward it so plain Gauss stays on smooth pieces
    std::vector<std::pair<double, double>> panels;
    if (j == 1) {
      double hi = t1;
      for (int p = 0; p < 10; ++p) {
        double lo = hi / 4.0;
        panels.emplace_back(lo, hi);
        hi = lo;
      }
      panels.emplace_back(0.0, hi);
    } else {
      panels.emplace_back(t0, t1);
    }
    for (const auto& [lo, hi] : panels) {
      QuadRule r = scaled_to(gl, lo, hi);
      for (std::size_t q = 0; q < r.size(); ++q) {
        Eigen::VectorXd c = spectral_f0(ref.u0_modal, ref.alpha, r.x[q]);
        sum += r.w[q] * ((c - m).squaredNorm() + defect);
      }
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

double e2_fractional(const DGSolution& U, const DGSolution& ref, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::domain, "alpha must lie in (0, 1)");
  require(ref.grid.is_uniform(), ErrorCode::domain,
          "fractional error norm needs a uniform reference grid");
  DGSolution Up = prolong_time(prolong_space(U, ref.space), ref.grid);
  const double gamma = 0.5 * (1.0 - alpha);
  const auto J = static_cast<Eigen::Index>(ref.grid.steps());
  const Eigen::Index N = ref.space.n_dofs;
  const double tau = ref.grid.tau(1);

  // the fractional derivative of a step function is a sum of one-sided power
  // kernels rooted at the slab openings, weighted by the value jumps there
  Eigen::MatrixXd D(N, J);
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(N);
  for (Eigen::Index j = 0; j < J; ++j) {
    Eigen::VectorXd e = ref.slabs[j] - Up.slabs[j];
    D.col(j) = e - prev;
    prev = e;
  }

  // squared norm = c^2 tau^(1-2g) sum_{i,l} (d_i^T A d_l) kappa(l-i, J-l+1)
  // with kappa(m, R) = int_0^R s^-g (s+m)^-g ds in step units. kappa(0, R) is
  // the power rule; kappa(m, 1) folds the s = 0 singularity into a Jacobi
  // rule; growing R appends plain Gauss panels of unit width. The pair sum
  // runs over Gram panels so the N x J^2 work is dense matrix products.
  std::vector<double> kappa(J > 0 ? static_cast<std::size_t>(J) : 1, 0.0);
  QuadRule gj = gauss_jacobi_left(6, -gamma, 0.0, 1.0);
  QuadRule gl = gauss_legendre(6);
  for (Eigen::Index m = 1; m < J; ++m) {
    double v = 0.0;
    for (std::size_t q = 0; q < gj.size(); ++q) {
      v += gj.w[q] * std::pow(gj.x[q] + static_cast<double>(m), -gamma);
    }
    kappa[static_cast<std::size_t>(m)] = v;
  }
  auto kappa0 = [&](Eigen::Index R) {
    return std::pow(static_cast<double>(R), 1.0 - 2.0 * gamma) / (1.0 - 2.0 * gamma);
  };

  const Eigen::Index block = 256;
  double total = 0.0;
  Eigen::Index R = 1;
  for (Eigen::Index hi = J; hi >= 1; hi -= block) {
    Eigen::Index lo = std::max<Eigen::Index>(1, hi - block + 1);
    Eigen::MatrixXd V = ref.space.stiffness * D.middleCols(lo - 1, hi - lo + 1);
    Eigen::MatrixXd G = D.leftCols(hi).transpose() * V;
    for (Eigen::Index l = hi; l >= lo; --l) {
      while (R < J - l + 1) {
        ++R;
        QuadRule r = scaled_to(gl, static_cast<double>(R - 1), static_cast<double>(R));
        double sg[6];
        for (std::size_t q = 0; q < r.size(); ++q) sg[q] = r.w[q] * std::pow(r.x[q], -gamma);
        for (Eigen::Index m = 1; m <= l - 1; ++m) {
          double inc = 0.0;
          for (std::size_t q = 0; q < r.size(); ++q) {
            inc += sg[q] * std::pow(r.x[q] + static_cast<double>(m), -gamma);
          }
          kappa[static_cast<std::size_t>(m)] += inc;
        }
      }
      Eigen::Index c = l - lo;
      double acc = G(l - 1, c) * kappa0(J - l + 1);
      for (Eigen::Index i = 1; i < l; ++i) {
        acc += 2.0 * G(i - 1, c) * kappa[static_cast<std::size_t>(l - i)];
      }
      total += acc;
    }
  }

  double cg = 1.0 / std::tgamma(1.0 - gamma);
  return cg * std::pow(tau, 0.5 - gamma) * std::sqrt(std::max(total, 0.0));
}

double nodal_error(const DGSolution& U, const DGSolution& ref) {
  DGSolution Up = prolong_space(U, ref.space);
  double worst = 0.0;
  for (std::size_t j = 1; j <= U.grid.steps(); ++j) {
    double t = U.grid.node(j);
    std::size_t l = ref.grid.slab_of(t);
    require(ref.grid.node(l) == t, ErrorCode::domain, "grids are not nested");
    Eigen::VectorXd e = ref.slabs[l - 1] - Up.slabs[j - 1];
    worst = std::max(worst, std::sqrt(e.dot(ref.space.mass * e)));
  }
  return worst;
}

double nodal_error(const DGSolution& U, const SpectralReference& ref) {
  const auto K = static_cast<int>(ref.u0_modal.size());
  Eigen::MatrixXd B = sine_hat_overlaps(U.space, K);
  double worst = 0.0;
  for (std::size_t j = 1; j <= U.grid.steps(); ++j) {
    const Eigen::VectorXd& u = U.slabs[j - 1];
    Eigen::VectorXd m = B * u;
    double defect = std::max(u.dot(U.space.mass * u) - m.squaredNorm(), 0.0);
    Eigen::VectorXd c = spectral_f0(ref.u0_modal, ref.alpha, U.grid.node(j));
    worst = std::max(worst, std::sqrt((c - m).squaredNorm() + defect));
  }
  return worst;
}

ScalarStepFunction interpolate_right(const std::function<double(double)>& v,
                                     const TimeGrid& grid) {
  std::vector<double> vals;
  vals.reserve(grid.steps());
  for (std::size_t j = 1; j <= grid.steps(); ++j) vals.push_back(v(grid.node(j)));
  return ScalarStepFunction(grid, std::move(vals));
}

ScalarStepFunction interpolate_left(const std::function<double(double)>& v,
                                    const TimeGrid& grid) {
  std::vector<double> vals;
  vals.reserve(grid.steps());
  for (std::size_t j = 1; j <= grid.steps(); ++j) vals.push_back(v(grid.node(j - 1)));
  return ScalarStepFunction(grid, std::move(vals));
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
  require(errors.size() >= 2, ErrorCode::invalid_argument, "need at least two levels");
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i - 1] > 0.0 && errors[i] > 0.0) {
      out.push_back(std::log2(errors[i - 1] / errors[i]));
    } else {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

}  // namespace tfdg
