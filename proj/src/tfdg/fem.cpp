#include "fem.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <cmath>

#include "errors.hpp"
#include "quadrature.hpp"

namespace tfdg {

namespace {

int vindex(int n, int i, int j) { return j * (n + 1) + i; }

}  // namespace

Mesh build_interval_mesh(int n) {
  require(n >= 2, ErrorCode::domain, "interval mesh needs at least 2 cells");
  Mesh m;
  m.dim = 1;
  m.n = n;
  m.h = 1.0 / n;
  m.vertices.resize(n + 1);
  m.on_boundary.resize(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    m.vertices[i] = {static_cast<double>(i) / n, 0.0};
    m.on_boundary[i] = (i == 0 || i == n) ? 1 : 0;
  }
  m.elements.resize(n);
  for (int e = 0; e < n; ++e) m.elements[e] = {e, e + 1, -1};
  return m;
}

Mesh build_square_mesh(int n) {
  require(n >= 2, ErrorCode::domain, "square mesh needs at least 2 cells per side");
  Mesh m;
  m.dim = 2;
  m.n = n;
  m.h = std::sqrt(2.0) / n;
  m.vertices.resize((n + 1) * (n + 1));
  m.on_boundary.resize((n + 1) * (n + 1), 0);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      m.vertices[vindex(n, i, j)] = {static_cast<double>(i) / n, static_cast<double>(j) / n};
      m.on_boundary[vindex(n, i, j)] = (i == 0 || i == n || j == 0 || j == n) ? 1 : 0;
    }
  m.elements.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int a = vindex(n, i, j);
      int b = vindex(n, i + 1, j);
      int c = vindex(n, i + 1, j + 1);
      int d = vindex(n, i, j + 1);
      m.elements.push_back({a, b, c});
      m.elements.push_back({a, c, d});
    }
  return m;
}

FemSpace assemble(const Mesh& mesh) {
  require(mesh.dim == 1 || mesh.dim == 2, ErrorCode::domain, "mesh dimension must be 1 or 2");
  FemSpace s;
  s.mesh = mesh;
  const int nv = static_cast<int>(mesh.vertices.size());
  s.dof_of_vertex.assign(nv, -1);
  for (int v = 0; v < nv; ++v)
    if (!mesh.on_boundary[v]) {
      s.dof_of_vertex[v] = s.n_dofs++;
      s.vertex_of_dof.push_back(v);
    }
  require(s.n_dofs > 0, ErrorCode::domain, "mesh has no interior vertices");

  std::vector<Eigen::Triplet<double>> tm, ta;
  auto add = [&](int vi, int vj, double mval, double aval) {
    int di = s.dof_of_vertex[vi];
    int dj = s.dof_of_vertex[vj];
    if (di < 0 || dj < 0) return;
    tm.emplace_back(di, dj, mval);
    ta.emplace_back(di, dj, aval);
  };

  for (const auto& el : mesh.elements) {
    if (mesh.dim == 1) {
      double L = mesh.vertices[el[1]][0] - mesh.vertices[el[0]][0];
      require(L > 0.0, ErrorCode::bad_data, "degenerate element in assembly");
      double mloc[2][2] = {{L / 3, L / 6}, {L / 6, L / 3}};
      double aloc[2][2] = {{1 / L, -1 / L}, {-1 / L, 1 / L}};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) add(el[i], el[j], mloc[i][j], aloc[i][j]);
    } else {
      const auto& p0 = mesh.vertices[el[0]];
      const auto& p1 = mesh.vertices[el[1]];
      const auto& p2 = mesh.vertices[el[2]];
      double twoA = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
      require(twoA > 1e-300, ErrorCode::bad_data, "degenerate or misoriented element in assembly");
      double A = 0.5 * twoA;
      // edge vector opposite each vertex; grad of the i-th barycentric is the
      // opposite edge rotated by 90 degrees over 2A
      double ex[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
      double ey[3] = {p2[1] - p1[1], p0[1] - p2[1], p1[1] - p0[1]};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double aval = (ex[i] * ex[j] + ey[i] * ey[j]) / (4.0 * A);
          double mval = (A / 12.0) * (i == j ? 2.0 : 1.0);
          add(el[i], el[j], mval, aval);
        }
    }
  }
  s.mass.resize(s.n_dofs, s.n_dofs);
  s.stiffness.resize(s.n_dofs, s.n_dofs);
  s.mass.setFromTriplets(tm.begin(), tm.end());
  s.stiffness.setFromTriplets(ta.begin(), ta.end());
  return s;
}

namespace {

// 7-point degree-5 rule on a triangle, in barycentric coordinates
struct TriRule {
  double bary[7][3];
  double w[7];
};

const TriRule& tri_rule() {
  static const TriRule r = [] {
    TriRule t{};
    double a = (6.0 - std::sqrt(15.0)) / 21.0;
    double b = (6.0 + std::sqrt(15.0)) / 21.0;
    double wa = (155.0 - std::sqrt(15.0)) / 1200.0;
    double wb = (155.0 + std::sqrt(15.0)) / 1200.0;
    double pts[7][3] = {{1.0 / 3, 1.0 / 3, 1.0 / 3}, {a, a, 1 - 2 * a}, {a, 1 - 2 * a, a},
                        {1 - 2 * a, a, a},           {b, b, 1 - 2 * b}, {b, 1 - 2 * b, b},
                        {1 - 2 * b, b, b}};
    double ws[7] = {9.0 / 40, wa, wa, wa, wb, wb, wb};
    for (int q = 0; q < 7; ++q) {
      for (int k = 0; k < 3; ++k) t.bary[q][k] = pts[q][k];
      t.w[q] = ws[q];
    }
    return t;
  }();
  return r;
}

}  // namespace

Eigen::VectorXd load_vector(const FemSpace& space, const ScalarFn& v, double sing) {
  const Mesh& mesh = space.mesh;
  Eigen::VectorXd load = Eigen::VectorXd::Zero(space.n_dofs);
  if (mesh.dim == 1) {
    QuadRule gl = gauss_legendre(8);
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
      const auto& el = mesh.elements[e];
      double a = mesh.vertices[el[0]][0];
      double b = mesh.vertices[el[1]][0];
      double L = b - a;
      bool jacobi = (e == 0 && sing > 0.0);
      QuadRule r = jacobi ? gauss_jacobi_left(8, -sing, a, b) : scaled_to(gl, a, b);
      for (std::size_t q = 0; q < r.size(); ++q) {
        double x = r.x[q];
        double val = v(x, 0.0);
        if (jacobi) val *= std::pow(x, sing);
        double contrib = r.w[q] * val;
        int d0 = space.dof_of_vertex[el[0]];
        int d1 = space.dof_of_vertex[el[1]];
        if (d0 >= 0) load[d0] += contrib * (b - x) / L;
        if (d1 >= 0) load[d1] += contrib * (x - a) / L;
      }
    }
  } else {
    const TriRule& r = tri_rule();
    for (const auto& el : mesh.elements) {
      const auto& p0 = mesh.vertices[el[0]];
      const auto& p1 = mesh.vertices[el[1]];
      const auto& p2 = mesh.vertices[el[2]];
      double A = 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
      for (int q = 0; q < 7; ++q) {
        double x = r.bary[q][0] * p0[0] + r.bary[q][1] * p1[0] + r.bary[q][2] * p2[0];
        double y = r.bary[q][0] * p0[1] + r.bary[q][1] * p1[1] + r.bary[q][2] * p2[1];
        double contrib = A * r.w[q] * v(x, y);
        for (int k = 0; k < 3; ++k) {
          int d = space.dof_of_vertex[el[k]];
          if (d >= 0) load[d] += contrib * r.bary[q][k];
        }
      }
    }
  }
  require(load.allFinite(), ErrorCode::bad_data, "load quadrature produced non-finite entries");
  return load;
}

Eigen::VectorXd l2_project(const FemSpace& space, const ScalarFn& v, double sing) {
  Eigen::VectorXd load = load_vector(space, v, sing);
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(space.mass);
  require(llt.info() == Eigen::Success, ErrorCode::solver_failure, "mass factorization failed");
  Eigen::VectorXd c = llt.solve(load);
  double denom = std::max(load.norm(), 1e-300);
  require((space.mass * c - load).norm() <= 1e-12 * denom, ErrorCode::solver_failure,
          "projection solve did not reach the required residual");
  return c;
}

namespace {

struct PointHit {
  int element;
  double bary[3];  // barycentric values at the element's vertices
};

PointHit locate_point(const Mesh& mesh, double x0, double y0) {
  if (mesh.dim == 1) {
    require(x0 > 0.0 && x0 < 1.0, ErrorCode::domain, "point mass must lie strictly inside");
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
      const auto& el = mesh.elements[e];
      double a = mesh.vertices[el[0]][0];
      double b = mesh.vertices[el[1]][0];
      if (x0 < a || x0 > b) continue;
      double L = b - a;
      return {static_cast<int>(e), {(b - x0) / L, (x0 - a) / L, 0.0}};
    }
  } else {
    require(x0 > 0.0 && x0 < 1.0 && y0 > 0.0 && y0 < 1.0, ErrorCode::domain,
            "point mass must lie strictly inside");
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
      const auto& el = mesh.elements[e];
      const auto& p0 = mesh.vertices[el[0]];
      const auto& p1 = mesh.vertices[el[1]];
      const auto& p2 = mesh.vertices[el[2]];
      double twoA = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
      double l1 = ((x0 - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (y0 - p0[1])) / twoA;
      double l2 = ((p1[0] - p0[0]) * (y0 - p0[1]) - (x0 - p0[0]) * (p1[1] - p0[1])) / twoA;
      double l0 = 1.0 - l1 - l2;
      if (l0 < -1e-13 || l1 < -1e-13 || l2 < -1e-13) continue;
      return {static_cast<int>(e), {l0, l1, l2}};
    }
  }
  fail(ErrorCode::internal, "no element contains the point mass");
}

}  // namespace

Eigen::VectorXd dirac_approx(const FemSpace& space, double x0, double y0) {
  const Mesh& mesh = space.mesh;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.n_dofs);
  PointHit hit = locate_point(mesh, x0, y0);
  const auto& el = mesh.elements[hit.element];
  if (mesh.dim == 1) {
    double L = mesh.vertices[el[1]][0] - mesh.vertices[el[0]][0];
    Eigen::Matrix2d M;
    M << L / 3, L / 6, L / 6, L / 3;
    Eigen::Vector2d c = M.ldlt().solve(Eigen::Vector2d(hit.bary[0], hit.bary[1]));
    for (int k = 0; k < 2; ++k) {
      int d = space.dof_of_vertex[el[k]];
      if (d >= 0) out[d] = c[k];
    }
  } else {
    const auto& p0 = mesh.vertices[el[0]];
    const auto& p1 = mesh.vertices[el[1]];
    const auto& p2 = mesh.vertices[el[2]];
    double A = 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
    Eigen::Matrix3d M;
    M << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    M *= A / 12.0;
    Eigen::Vector3d c = M.ldlt().solve(Eigen::Vector3d(hit.bary[0], hit.bary[1], hit.bary[2]));
    for (int k = 0; k < 3; ++k) {
      int d = space.dof_of_vertex[el[k]];
      if (d >= 0) out[d] = c[k];
    }
  }
  return out;
}

Eigen::VectorXd point_load(const FemSpace& space, double x0, double y0) {
  const Mesh& mesh = space.mesh;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.n_dofs);
  PointHit hit = locate_point(mesh, x0, y0);
  const auto& el = mesh.elements[hit.element];
  for (int k = 0; k < (mesh.dim == 1 ? 2 : 3); ++k) {
    int d = space.dof_of_vertex[el[k]];
    if (d >= 0) out[d] = hit.bary[k];
  }
  return out;
}

Eigen::VectorXd load_slab(const FemSpace& space, const SpaceTimeFn& f, double t0, double t1,
                          double t_sing, double x_sing) {
  require(t0 >= 0.0 && t1 > t0, ErrorCode::domain, "slab must satisfy 0 <= t0 < t1");
  bool jacobi = (t0 == 0.0 && t_sing > 0.0);
  QuadRule rt = jacobi ? gauss_jacobi_left(8, -t_sing, t0, t1)
                       : scaled_to(gauss_legendre(8), t0, t1);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(space.n_dofs);
  for (std::size_t q = 0; q < rt.size(); ++q) {
    double t = rt.x[q];
    double wt = rt.w[q] * (jacobi ? std::pow(t, t_sing) : 1.0);
    auto vt = [&](double x, double y) { return f(x, y, t); };
    out += wt * load_vector(space, vt, x_sing);
  }
  return out;
}

double eval_p1(const FemSpace& space, const Eigen::VectorXd& coeffs, double x, double y) {
  const Mesh& mesh = space.mesh;
  require(coeffs.size() == space.n_dofs, ErrorCode::invalid_argument,
          "coefficient vector does not match the space");
  int n = mesh.n;
  auto nodal = [&](int v) {
    int d = space.dof_of_vertex[v];
    return d >= 0 ? coeffs[d] : 0.0;
  };
  if (mesh.dim == 1) {
    require(x >= 0.0 && x <= 1.0, ErrorCode::domain, "evaluation point outside the interval");
    int ix = std::min(static_cast<int>(x * n), n - 1);
    double xi = x * n - ix;
    return (1.0 - xi) * nodal(ix) + xi * nodal(ix + 1);
  }
  require(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0, ErrorCode::domain,
          "evaluation point outside the square");
  int ix = std::min(static_cast<int>(x * n), n - 1);
  int iy = std::min(static_cast<int>(y * n), n - 1);
  double xi = x * n - ix;
  double eta = y * n - iy;
  int a = vindex(n, ix, iy);
  int b = vindex(n, ix + 1, iy);
  int c = vindex(n, ix + 1, iy + 1);
  int d = vindex(n, ix, iy + 1);
  if (eta <= xi)  // lower triangle (a, b, c)
    return (1.0 - xi) * nodal(a) + (xi - eta) * nodal(b) + eta * nodal(c);
  return (1.0 - eta) * nodal(a) + xi * nodal(c) + (eta - xi) * nodal(d);
}

Eigen::VectorXd prolong_vector(const FemSpace& coarse, const FemSpace& fine,
                               const Eigen::VectorXd& u) {
  require(coarse.mesh.dim == fine.mesh.dim, ErrorCode::domain,
          "prolongation needs meshes of equal dimension");
  require(fine.mesh.n == 2 * coarse.mesh.n, ErrorCode::domain,
          "prolongation target must be the dyadic refinement");
  require(u.size() == coarse.n_dofs, ErrorCode::invalid_argument,
          "coefficient vector does not match the coarse space");
  int nc = coarse.mesh.n;
  auto cnodal1 = [&](int i) {
    int d = coarse.dof_of_vertex[i];
    return d >= 0 ? u[d] : 0.0;
  };
  Eigen::VectorXd out(fine.n_dofs);
  if (coarse.mesh.dim == 1) {
    for (int d = 0; d < fine.n_dofs; ++d) {
      int i = fine.vertex_of_dof[d];
      out[d] = (i % 2 == 0) ? cnodal1(i / 2) : 0.5 * (cnodal1(i / 2) + cnodal1(i / 2 + 1));
    }
    return out;
  }
  auto cnodal2 = [&](int i, int j) {
    int d = coarse.dof_of_vertex[vindex(nc, i, j)];
    return d >= 0 ? u[d] : 0.0;
  };
  int nf = fine.mesh.n;
  for (int d = 0; d < fine.n_dofs; ++d) {
    int v = fine.vertex_of_dof[d];
    int i = v % (nf + 1);
    int j = v / (nf + 1);
    if (i % 2 == 0 && j % 2 == 0)
      out[d] = cnodal2(i / 2, j / 2);
    else if (j % 2 == 0)
      out[d] = 0.5 * (cnodal2(i / 2, j / 2) + cnodal2(i / 2 + 1, j / 2));
    else if (i % 2 == 0)
      out[d] = 0.5 * (cnodal2(i / 2, j / 2) + cnodal2(i / 2, j / 2 + 1));
    else  // on a coarse diagonal edge: average along the diagonal
      out[d] = 0.5 * (cnodal2(i / 2, j / 2) + cnodal2(i / 2 + 1, j / 2 + 1));
  }
  return out;
}

}  // namespace tfdg
