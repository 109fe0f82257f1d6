#pragma once

#include <string>

#include "solver.hpp"

namespace tfdg {

// Sine-series data on (0, 1): coefficients against sqrt(2) sin(k pi x) for
// k = 1..K, the Dirichlet eigenfunctions with eigenvalues (k pi)^2. With
// f = 0 the solution stays diagonal in this basis, so a truncated series plus
// the scalar relaxation function is a semi-analytic reference.
struct SpectralReference {
  double alpha = 0.5;
  Eigen::VectorXd u0_modal;
};

double sine_eigenvalue(int k);

// modal coefficients of the solution at time t: u0_k * E_{alpha,1}(-lambda_k t^alpha)
Eigen::VectorXd spectral_f0(const Eigen::VectorXd& u0_modal, double alpha, double t);

// coefficients of v against the first K sine modes; sing > 0 declares a
// v ~ x^{-sing} singularity at the left endpoint
Eigen::VectorXd modal_from_function(const ScalarFn& v, int K, double sing = 0.0);

double spectral_eval(const Eigen::VectorXd& modal, double x);

// overlaps B(k, i) = <sqrt(2) sin(k pi x), hat_i> in closed form, so modal
// coefficients of a P1 function are B * coeffs
Eigen::MatrixXd sine_hat_overlaps(const FemSpace& space, int K);

// solves on the dyadic pair (h, tau) = (2^-h_level, 2^-tau_level); when
// cache_path is set, a matching checkpoint is loaded instead of solving, and
// a fresh solve is written back for the next run
DGSolution fine_reference(const ProblemData& data, int dim, int h_level, int tau_level,
                          const std::string& cache_path = "");

}  // namespace tfdg
