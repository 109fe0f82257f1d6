#include "reference.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "errors.hpp"
#include "mittag_leffler.hpp"
#include "quadrature.hpp"

namespace tfdg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double sine_eigenvalue(int k) {
  require(k >= 1, ErrorCode::domain, "mode index starts at 1");
  return static_cast<double>(k) * static_cast<double>(k) * kPi * kPi;
}

Eigen::VectorXd spectral_f0(const Eigen::VectorXd& u0_modal, double alpha, double t) {
  require(t >= 0.0, ErrorCode::domain, "time must be nonnegative");
  Eigen::VectorXd out(u0_modal.size());
  for (int k = 1; k <= u0_modal.size(); ++k) {
    out[k - 1] = u0_modal[k - 1] * mode_solution(alpha, sine_eigenvalue(k), t);
  }
  return out;
}

Eigen::VectorXd modal_from_function(const ScalarFn& v, int K, double sing) {
  require(K >= 1, ErrorCode::domain, "need at least one mode");
  require(sing < 0.5, ErrorCode::domain, "stronger singularities leave L2");
  Eigen::VectorXd out(K);
  QuadRule gl = gauss_legendre(8);
  for (int k = 1; k <= K; ++k) {
    // panels track the mode's half-waves, with a floor so low modes still
    // resolve data that oscillates a few times on its own
    int panels = k + 8;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
      double lo = static_cast<double>(p) / panels;
      double hi = static_cast<double>(p + 1) / panels;
      bool jacobi = (p == 0 && sing > 0.0);
      QuadRule r = jacobi ? gauss_jacobi_left(8, -sing, lo, hi) : scaled_to(gl, lo, hi);
      for (std::size_t q = 0; q < r.size(); ++q) {
        double x = r.x[q];
        double val = v(x, 0.0) * (jacobi ? std::pow(x, sing) : 1.0);
        sum += r.w[q] * val * std::sqrt(2.0) * std::sin(k * kPi * x);
      }
    }
    out[k - 1] = sum;
  }
  require(out.allFinite(), ErrorCode::bad_data, "mode coefficients are not finite");
  return out;
}

double spectral_eval(const Eigen::VectorXd& modal, double x) {
  double sum = 0.0;
  for (int k = 1; k <= modal.size(); ++k) {
    sum += modal[k - 1] * std::sqrt(2.0) * std::sin(k * kPi * x);
  }
  return sum;
}

Eigen::MatrixXd sine_hat_overlaps(const FemSpace& space, int K) {
  require(space.mesh.dim == 1, ErrorCode::domain, "sine modes live on the interval");
  require(K >= 1, ErrorCode::domain, "need at least one mode");
  double h = space.mesh.h;
  Eigen::MatrixXd B(K, space.n_dofs);
  for (int k = 1; k <= K; ++k) {
    // int hat_i sin(k pi x) dx = sin(k pi x_i) * 2(1 - cos(k pi h)) / (k pi)^2 h
    double kp = k * kPi;
    double factor = std::sqrt(2.0) * 2.0 * (1.0 - std::cos(kp * h)) / (kp * kp * h);
    for (int i = 0; i < space.n_dofs; ++i) {
      double xi = space.mesh.vertices[space.vertex_of_dof[i]][0];
      B(k - 1, i) = factor * std::sin(kp * xi);
    }
  }
  return B;
}

namespace {

bool matches(const DGSolution& U, double alpha, const ProblemData& data, int dim, int n,
             std::size_t steps) {
  return std::abs(alpha - data.alpha) <= 1e-15 && U.space.mesh.dim == dim &&
         U.space.mesh.n == n && U.grid.steps() == steps &&
         std::abs(U.grid.horizon() - data.horizon) <= 1e-12 * std::max(1.0, data.horizon);
}

}  // namespace

DGSolution fine_reference(const ProblemData& data, int dim, int h_level, int tau_level,
                          const std::string& cache_path) {
  require(h_level >= 1 && h_level <= 16, ErrorCode::domain, "mesh level out of range");
  require(tau_level >= 0 && tau_level <= 24, ErrorCode::domain, "time level out of range");
  int n = 1 << h_level;
  double steps_real = data.horizon * std::ldexp(1.0, tau_level);
  auto steps = static_cast<std::size_t>(std::llround(steps_real));
  require(steps >= 1 && std::abs(steps_real - static_cast<double>(steps)) <= 1e-9,
          ErrorCode::domain, "horizon is not a whole number of time steps");

  if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
    double alpha = 0.0;
    DGSolution cached = load_solution(cache_path, &alpha);
    if (matches(cached, alpha, data, dim, n, steps)) return cached;
  }

  Mesh mesh = dim == 1 ? build_interval_mesh(n) : build_square_mesh(n);
  DGSolution U = solve(data, assemble(mesh), TimeGrid::uniform(steps, data.horizon));
  if (!cache_path.empty()) save_solution(U, data.alpha, cache_path);
  return U;
}

}  // namespace tfdg
