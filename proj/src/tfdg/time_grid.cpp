#include "tfdg/time_grid.hpp"

#include <algorithm>
#include <cmath>

#include "tfdg/errors.hpp"
#include "tfdg/gammafn.hpp"

namespace tfdg {

TimeGrid TimeGrid::uniform(std::size_t steps, double horizon) {
  require(steps >= 1, ErrorCode::invalid_argument, "TimeGrid: need at least one step");
  require(horizon > 0.0, ErrorCode::invalid_argument, "TimeGrid: horizon must be positive");
  std::vector<double> nodes(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    nodes[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
  TimeGrid g(std::move(nodes));
  g.uniform_ = true;
  return g;
}

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  require(nodes_.size() >= 2, ErrorCode::invalid_argument, "TimeGrid: need at least two nodes");
  require(nodes_.front() == 0.0, ErrorCode::invalid_argument, "TimeGrid: must start at t = 0");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    require(nodes_[i] > nodes_[i - 1], ErrorCode::invalid_argument,
            "TimeGrid: nodes must increase");
  double tau0 = nodes_[1] - nodes_[0];
  uniform_ = true;
  for (std::size_t j = 1; j < nodes_.size(); ++j) {
    if (std::abs((nodes_[j] - nodes_[j - 1]) - tau0) > 1e-12 * tau0) {
      uniform_ = false;
      break;
    }
  }
}

double TimeGrid::max_tau() const {
  double m = 0.0;
  for (std::size_t j = 1; j < nodes_.size(); ++j) m = std::max(m, tau(j));
  return m;
}

std::size_t TimeGrid::slab_of(double t) const {
  require(t >= 0.0 && t <= horizon(), ErrorCode::domain, "TimeGrid::slab_of: t outside [0, T]");
  if (t <= nodes_[1]) return 1;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
  return static_cast<std::size_t>(it - nodes_.begin());
}

ScalarStepFunction::ScalarStepFunction(TimeGrid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  require(values.size() == grid.steps(), ErrorCode::invalid_argument,
          "ScalarStepFunction: one value per slab required");
}

double ScalarStepFunction::at(double t) const { return values[grid.slab_of(t) - 1]; }

std::vector<double> step_jumps(const ScalarStepFunction& v) {
  std::vector<double> d(v.values.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    d[i] = v.values[i] - prev;
    prev = v.values[i];
  }
  return d;
}

WeightTable::WeightTable(double alpha, TimeGrid grid) : alpha_(alpha), grid_(std::move(grid)) {
  require(alpha_ > 0.0 && alpha_ <= 1.0, ErrorCode::domain, "WeightTable: alpha in (0, 1]");
  inv_gamma1a_ = 1.0 / gammafn(1.0 + alpha_);
  if (grid_.is_uniform()) {
    std::size_t J = grid_.steps();
    double tau = grid_.tau(1);
    double ta = std::pow(tau, alpha_);
    lag_.resize(J);
    lag_[0] = ta * inv_gamma1a_;
    for (std::size_t m = 1; m < J; ++m) {
      double mm = static_cast<double>(m);
      lag_[m] = ta * inv_gamma1a_ *
                (std::pow(mm + 1.0, alpha_) - 2.0 * std::pow(mm, alpha_) + std::pow(mm - 1.0, alpha_));
    }
  }
}

double WeightTable::operator()(std::size_t j, std::size_t i) const {
  require(i >= 1 && i <= j && j <= grid_.steps(), ErrorCode::invalid_argument,
          "WeightTable: need 1 <= i <= j <= J");
  if (!lag_.empty()) return lag_[j - i];
  auto pa = [this](double s) { return s > 0.0 ? std::pow(s, alpha_) : 0.0; };
  double tj = grid_.node(j), tj1 = grid_.node(j - 1);
  double ti = grid_.node(i), ti1 = grid_.node(i - 1);
  return inv_gamma1a_ * (pa(tj - ti1) - pa(tj - ti) - pa(tj1 - ti1) + pa(tj1 - ti));
}

void WeightTable::row(std::size_t j, double* out) const {
  if (!lag_.empty()) {
    for (std::size_t i = 1; i <= j; ++i) out[i - 1] = lag_[j - i];
    return;
  }
  for (std::size_t i = 1; i <= j; ++i) out[i - 1] = (*this)(j, i);
}

double WeightTable::diag(std::size_t j) const { return (*this)(j, j); }

double WeightTable::row_sum_exact(std::size_t j) const {
  return inv_gamma1a_ * (std::pow(grid_.node(j), alpha_) - std::pow(grid_.node(j - 1), alpha_));
}

}  // namespace tfdg
