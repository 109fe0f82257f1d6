#pragma once

#include <cstddef>
#include <vector>

namespace tfdg {

// Partition 0 = t_0 < t_1 < ... < t_J = T. Slab j in [1, J] is (t_{j-1}, t_j].
class TimeGrid {
 public:
  static TimeGrid uniform(std::size_t steps, double horizon);
  explicit TimeGrid(std::vector<double> nodes);

  std::size_t steps() const { return nodes_.size() - 1; }
  double horizon() const { return nodes_.back(); }
  double node(std::size_t i) const { return nodes_[i]; }
  double tau(std::size_t j) const { return nodes_[j] - nodes_[j - 1]; }
  double max_tau() const;
  bool is_uniform() const { return uniform_; }
  const std::vector<double>& nodes() const { return nodes_; }

  // slab index j with t in (t_{j-1}, t_j]; t = 0 maps to slab 1
  std::size_t slab_of(double t) const;

 private:
  std::vector<double> nodes_;
  bool uniform_ = false;
};

// Piecewise-constant function in time: value values[j-1] on slab j.
struct ScalarStepFunction {
  TimeGrid grid;
  std::vector<double> values;

  ScalarStepFunction(TimeGrid g, std::vector<double> v);
  double at(double t) const;
};

// Left-node jumps d_i = v_i - v_{i-1} with v_0 = 0, i = 1..J.
std::vector<double> step_jumps(const ScalarStepFunction& v);

// Convolution weights of the discrete fractional derivative of order 1 - alpha:
// w(j, i) = integral over slab j of the Riemann-Liouville derivative of the
// indicator of slab i. On uniform grids the table is Toeplitz in j - i and is
// precomputed once per lag.
class WeightTable {
 public:
  WeightTable(double alpha, TimeGrid grid);

  double alpha() const { return alpha_; }
  const TimeGrid& grid() const { return grid_; }
  bool toeplitz() const { return grid_.is_uniform(); }

  // w_{j,i} for 1 <= i <= j <= J
  double operator()(std::size_t j, std::size_t i) const;
  // writes w_{j,1} .. w_{j,j} into out
  void row(std::size_t j, double* out) const;
  double diag(std::size_t j) const;
  // closed form (t_j^alpha - t_{j-1}^alpha) / Gamma(1 + alpha)
  double row_sum_exact(std::size_t j) const;

 private:
  double alpha_;
  TimeGrid grid_;
  double inv_gamma1a_;
  std::vector<double> lag_;  // uniform grids: w by lag m = j - i
};

}  // namespace tfdg
