#pragma once

#include <functional>

#include "tfdg/time_grid.hpp"

namespace tfdg {

// Left Riemann-Liouville integral of order gamma > 0 of a step function,
// evaluated in closed form. Valid for t in [0, T].
double rl_integral_step(const ScalarStepFunction& v, double gamma, double t);

// Left Riemann-Liouville derivative of order gamma in (0, 1) of a step
// function (jump representation). The value blows up at the grid nodes from
// the right, so t must not coincide with a node carrying a jump; we reject all
// node values and t = 0.
double rl_derivative_step(const ScalarStepFunction& v, double gamma, double t);

// Right-sided counterparts on (t, T).
double rl_integral_step_right(const ScalarStepFunction& v, double gamma, double t);
double rl_derivative_step_right(const ScalarStepFunction& v, double gamma, double t);

// I^gamma f(t) = 1/Gamma(gamma) int_0^t (t-s)^{gamma-1} f(s) ds for a general
// integrand: composite Gauss panels geometrically graded toward both ends,
// kernel singularity folded into a Jacobi rule on the panel touching t.
double frac_integral_quadrature(const std::function<double(double)>& f, double gamma, double t,
                                int points_per_panel = 8, int grading_depth = 28);

// H^gamma seminorm estimate of a step function extended by zero, via uniform
// sampling on an 8x interval and a discrete Fourier sum. Approximation quality
// is a few percent for gamma < 1/2; intended for property checks, not metrics.
double hgamma_seminorm(const ScalarStepFunction& v, double gamma, int oversample = 16);

}  // namespace tfdg
