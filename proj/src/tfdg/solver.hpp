#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fem.hpp"
#include "time_grid.hpp"

namespace tfdg {

struct InitialCoeffs {
  Eigen::VectorXd coeffs;  // empty means zero data
};
struct InitialField {
  ScalarFn v;
  double sing = 0.0;
};
struct InitialPoint {
  double x = 0.0;
  double y = 0.0;
};

struct SourceZero {};
struct SourceField {
  SpaceTimeFn f;
  double t_sing = 0.0;
  double x_sing = 0.0;
};
// g(t) times a point mass, g(t) = coeff * t^{-t_power} with t_power < 1;
// slab integrals of g are closed-form so no temporal quadrature error enters
struct SourcePoint {
  double x = 0.0;
  double y = 0.0;
  double coeff = 1.0;
  double t_power = 0.0;
};

struct ProblemData {
  double alpha = 0.5;
  double horizon = 1.0;
  std::variant<InitialCoeffs, InitialField, InitialPoint> initial = InitialCoeffs{};
  std::variant<SourceZero, SourceField, SourcePoint> source = SourceZero{};
};

// piecewise-constant-in-time solution: value slabs[j-1] on the j-th slab
struct DGSolution {
  FemSpace space;
  TimeGrid grid;
  Eigen::VectorXd initial;  // U_0 entering the first step
  std::vector<Eigen::VectorXd> slabs;
};

// marches the time-stepping scheme: each step solves
// (M + w_jj A) U_j = M U_{j-1} + F_j - A sum_{i<j} w_ji U_i
DGSolution solve(const ProblemData& data, const FemSpace& space, const TimeGrid& grid);

// re-expresses the step function on a grid whose nodes contain U's nodes
DGSolution prolong_time(const DGSolution& U, const TimeGrid& finer);

// nodal transfer of every slab onto the dyadic refinement (or the same space)
DGSolution prolong_space(const DGSolution& U, const FemSpace& finer);

// binary checkpoint: magic, alpha, horizon, J, N, d, then initial and slab
// coefficients as little-endian 64-bit floats; the loader rebuilds the uniform
// generators recorded in the header
void save_solution(const DGSolution& U, double alpha, const std::string& path);
DGSolution load_solution(const std::string& path, double* alpha_out = nullptr);

}  // namespace tfdg
