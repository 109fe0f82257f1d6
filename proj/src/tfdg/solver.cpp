#include "solver.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <utility>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "errors.hpp"

namespace tfdg {

namespace {

void check_step_residual(std::size_t j, const Eigen::SparseMatrix<double>& S,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& rhs) {
  double rel = (S * u - rhs).norm() / std::max(rhs.norm(), 1e-300);
  if (!(rel <= 1e-10)) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "time step %zu: linear solve residual %.3e", j, rel);
    fail(ErrorCode::solver_failure, msg);
  }
}

Eigen::VectorXd mass_solve(const FemSpace& space, const Eigen::VectorXd& rhs) {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(space.mass);
  require(llt.info() == Eigen::Success, ErrorCode::solver_failure, "mass matrix factorization failed");
  Eigen::VectorXd u = llt.solve(rhs);
  check_step_residual(0, space.mass, u, rhs);
  return u;
}

}  // namespace

DGSolution solve(const ProblemData& data, const FemSpace& space, const TimeGrid& grid) {
  require(data.alpha > 0.0 && data.alpha < 1.0, ErrorCode::domain, "alpha must lie in (0, 1)");
  require(std::abs(data.horizon - grid.horizon()) <= 1e-12 * std::max(1.0, grid.horizon()),
          ErrorCode::invalid_argument, "problem horizon does not match the time grid");
  const int n = space.n_dofs;
  require(n > 0, ErrorCode::invalid_argument, "space has no interior degrees of freedom");

  // data entering the first step, and the projected initial value it induces
  Eigen::VectorXd b0 = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(n);
  if (const auto* ic = std::get_if<InitialCoeffs>(&data.initial)) {
    if (ic->coeffs.size() > 0) {
      require(ic->coeffs.size() == n, ErrorCode::invalid_argument,
              "initial coefficient vector does not match the space");
      u0 = ic->coeffs;
      b0 = space.mass * u0;
    }
  } else if (const auto* iv = std::get_if<InitialField>(&data.initial)) {
    b0 = load_vector(space, iv->v, iv->sing);
    u0 = mass_solve(space, b0);
  } else {
    const auto& ip = std::get<InitialPoint>(data.initial);
    b0 = point_load(space, ip.x, ip.y);
    u0 = mass_solve(space, b0);
  }

  const auto* sf = std::get_if<SourceField>(&data.source);
  const auto* sp = std::get_if<SourcePoint>(&data.source);
  Eigen::VectorXd source_shape;
  if (sp) {
    require(sp->t_power < 1.0, ErrorCode::domain, "point source needs an integrable time factor");
    source_shape = point_load(space, sp->x, sp->y);
  }

  WeightTable wt(data.alpha, grid);
  const std::size_t J = grid.steps();

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  Eigen::SparseMatrix<double> S;
  if (grid.is_uniform()) {
    S = space.mass + wt.diag(1) * space.stiffness;
    llt.compute(S);
    require(llt.info() == Eigen::Success, ErrorCode::solver_failure,
            "step matrix factorization failed");
  } else {
    cg.setTolerance(1e-12);
  }

  std::vector<Eigen::VectorXd> slabs;
  slabs.reserve(J);
  std::vector<double> w(J);
  Eigen::VectorXd hist(n);
  for (std::size_t j = 1; j <= J; ++j) {
    Eigen::VectorXd rhs = (j == 1) ? b0 : Eigen::VectorXd(space.mass * slabs[j - 2]);
    if (sf) {
      rhs += load_slab(space, sf->f, grid.node(j - 1), grid.node(j), sf->t_sing, sf->x_sing);
    } else if (sp) {
      double p = sp->t_power;
      double t0 = grid.node(j - 1), t1 = grid.node(j);
      rhs += sp->coeff * (std::pow(t1, 1.0 - p) - std::pow(t0, 1.0 - p)) / (1.0 - p) *
             source_shape;
    }
    if (j > 1) {
      wt.row(j, w.data());
      hist.setZero();
      for (std::size_t i = 1; i < j; ++i) hist += w[i - 1] * slabs[i - 1];
      rhs -= space.stiffness * hist;
    }
    Eigen::VectorXd u;
    if (grid.is_uniform()) {
      u = llt.solve(rhs);
    } else {
      S = space.mass + wt.diag(j) * space.stiffness;
      cg.compute(S);
      u = cg.solveWithGuess(rhs, j == 1 ? u0 : slabs[j - 2]);
    }
    check_step_residual(j, S, u, rhs);
    slabs.push_back(std::move(u));
  }

  return DGSolution{space, grid, std::move(u0), std::move(slabs)};
}

DGSolution prolong_time(const DGSolution& U, const TimeGrid& finer) {
  const std::vector<double>& cn = U.grid.nodes();
  const std::vector<double>& fn = finer.nodes();
  require(fn.back() == cn.back(), ErrorCode::domain, "time horizons differ");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < fn.size() && hits < cn.size(); ++i) {
    if (fn[i] == cn[hits]) ++hits;
  }
  require(hits == cn.size(), ErrorCode::domain, "grids are not nested");

  std::vector<Eigen::VectorXd> slabs(finer.steps());
  std::size_t c = 1;
  for (std::size_t k = 1; k <= finer.steps(); ++k) {
    while (cn[c] < fn[k]) ++c;
    slabs[k - 1] = U.slabs[c - 1];
  }
  return DGSolution{U.space, finer, U.initial, std::move(slabs)};
}

DGSolution prolong_space(const DGSolution& U, const FemSpace& finer) {
  if (finer.mesh.dim == U.space.mesh.dim && finer.mesh.n == U.space.mesh.n) {
    return DGSolution{finer, U.grid, U.initial, U.slabs};
  }
  require(finer.mesh.dim == U.space.mesh.dim, ErrorCode::domain,
          "prolongation cannot change the domain dimension");
  // several doubling steps are fine; only the last one lands on the caller's
  // assembled space
  std::vector<Eigen::VectorXd> vals = U.slabs;
  vals.push_back(U.initial);
  int n = U.space.mesh.n;
  const FemSpace* from = &U.space;
  FemSpace mid = *from;
  while (2 * n < finer.mesh.n) {
    n *= 2;
    FemSpace next =
        assemble(from->mesh.dim == 1 ? build_interval_mesh(n) : build_square_mesh(n));
    for (auto& v : vals) v = prolong_vector(*from, next, v);
    mid = std::move(next);
    from = &mid;
  }
  for (auto& v : vals) v = prolong_vector(*from, finer, v);
  Eigen::VectorXd initial = std::move(vals.back());
  vals.pop_back();
  return DGSolution{finer, U.grid, std::move(initial), std::move(vals)};
}

namespace {

constexpr char kMagic[8] = {'t', 'f', 'd', 'g', 's', 'o', 'l', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double x) {
  std::uint64_t v;
  std::memcpy(&v, &x, 8);
  put_u64(os, v);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  require(static_cast<bool>(is), ErrorCode::io_failure, "checkpoint file is truncated");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& is) {
  std::uint64_t v = get_u64(is);
  double x;
  std::memcpy(&x, &v, 8);
  return x;
}

}  // namespace

void save_solution(const DGSolution& U, double alpha, const std::string& path) {
  require(U.grid.is_uniform(), ErrorCode::invalid_argument,
          "checkpoints record uniform time grids only");
  const std::size_t J = U.grid.steps();
  const auto N = static_cast<std::uint64_t>(U.space.n_dofs);
  require(U.slabs.size() == J, ErrorCode::invalid_argument, "solution has wrong slab count");

  std::ofstream os(path, std::ios::binary);
  require(os.is_open(), ErrorCode::io_failure, "cannot open checkpoint for writing: " + path);
  os.write(kMagic, 8);
  put_f64(os, alpha);
  put_f64(os, U.grid.horizon());
  put_u64(os, J);
  put_u64(os, N);
  put_u64(os, static_cast<std::uint64_t>(U.space.mesh.dim));
  for (std::uint64_t i = 0; i < N; ++i) put_f64(os, U.initial[static_cast<int>(i)]);
  for (const auto& slab : U.slabs) {
    require(static_cast<std::uint64_t>(slab.size()) == N, ErrorCode::invalid_argument,
            "solution slab does not match the space");
    for (std::uint64_t i = 0; i < N; ++i) put_f64(os, slab[static_cast<int>(i)]);
  }
  require(static_cast<bool>(os), ErrorCode::io_failure, "write failure on checkpoint: " + path);
}

DGSolution load_solution(const std::string& path, double* alpha_out) {
  std::ifstream is(path, std::ios::binary);
  require(is.is_open(), ErrorCode::io_failure, "cannot open checkpoint: " + path);
  char magic[8];
  is.read(magic, 8);
  require(static_cast<bool>(is) && std::memcmp(magic, kMagic, 8) == 0, ErrorCode::io_failure,
          "not a solution checkpoint: " + path);
  double alpha = get_f64(is);
  double horizon = get_f64(is);
  std::uint64_t J = get_u64(is);
  std::uint64_t N = get_u64(is);
  std::uint64_t d = get_u64(is);
  require(horizon > 0.0 && J >= 1 && N >= 1 && (d == 1 || d == 2), ErrorCode::bad_data,
          "checkpoint header is inconsistent");

  Mesh mesh;
  if (d == 1) {
    mesh = build_interval_mesh(static_cast<int>(N) + 1);
  } else {
    auto side = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(N))));
    require(side * side == N, ErrorCode::bad_data, "checkpoint dof count is not a square grid");
    mesh = build_square_mesh(static_cast<int>(side) + 1);
  }
  FemSpace space = assemble(mesh);
  TimeGrid grid = TimeGrid::uniform(J, horizon);

  Eigen::VectorXd initial(static_cast<Eigen::Index>(N));
  for (std::uint64_t i = 0; i < N; ++i) initial[static_cast<int>(i)] = get_f64(is);
  std::vector<Eigen::VectorXd> slabs(J, Eigen::VectorXd(static_cast<Eigen::Index>(N)));
  for (auto& slab : slabs) {
    for (std::uint64_t i = 0; i < N; ++i) slab[static_cast<int>(i)] = get_f64(is);
  }
  if (alpha_out) *alpha_out = alpha;
  return DGSolution{std::move(space), std::move(grid), std::move(initial), std::move(slabs)};
}

}  // namespace tfdg
