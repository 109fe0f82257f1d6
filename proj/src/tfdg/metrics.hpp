#pragma once

#include <functional>
#include <vector>

#include "reference.hpp"

namespace tfdg {

// L2(0,T; L2) distance between two piecewise-constant solutions; U is carried
// onto the reference's space and grid, where the difference is represented
// exactly and the Gram matrices finish the job
double e1_l2l2(const DGSolution& U, const DGSolution& ref);

// same norm against a truncated sine-series solution of the f = 0 problem;
// 8-point Gauss quadrature in time per slab of U
double e1_l2l2(const DGSolution& U, const SpectralReference& ref);

// L2(0,T) norm of the stiffness-energy of the fractional derivative of order
// (1 - alpha)/2 of the difference, the second error the convergence tables
// track
double e2_fractional(const DGSolution& U, const DGSolution& ref, double alpha);

// max over U's nodes t_j of the L2 distance between the slab value U_j and
// the reference at t_j (its own slab value ending there, or the series)
double nodal_error(const DGSolution& U, const DGSolution& ref);
double nodal_error(const DGSolution& U, const SpectralReference& ref);

// right- and left-endpoint samplings of a time function as step functions
ScalarStepFunction interpolate_right(const std::function<double(double)>& v,
                                     const TimeGrid& grid);
ScalarStepFunction interpolate_left(const std::function<double(double)>& v,
                                    const TimeGrid& grid);

// order_i = log2(E_{i-1} / E_i) between adjacent dyadic levels; nonpositive
// errors give NaN markers
std::vector<double> observed_orders(const std::vector<double>& errors);

}  // namespace tfdg
