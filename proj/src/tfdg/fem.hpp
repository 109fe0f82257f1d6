#pragma once

#include <Eigen/Sparse>
#include <array>
#include <functional>
#include <vector>

namespace tfdg {

struct Mesh {
  int dim = 1;
  int n = 0;     // cells per side of the uniform generators
  double h = 0;  // max element diameter
  std::vector<std::array<double, 2>> vertices;  // y = 0 on interval meshes
  std::vector<std::array<int, 3>> elements;     // third index -1 on segments
  std::vector<char> on_boundary;                // per vertex
};

Mesh build_interval_mesh(int n);

// n x n squares, each split along the lower-left to upper-right diagonal;
// triangles come out counterclockwise and the refinement is nested dyadically
Mesh build_square_mesh(int n);

struct FemSpace {
  Mesh mesh;
  std::vector<int> dof_of_vertex;  // -1 on boundary vertices
  std::vector<int> vertex_of_dof;
  int n_dofs = 0;
  Eigen::SparseMatrix<double> mass;
  Eigen::SparseMatrix<double> stiffness;
};

// piecewise-linear space on interior vertices (homogeneous Dirichlet),
// mass and stiffness from exact element integration
FemSpace assemble(const Mesh& mesh);

// scalar field on the domain; the y argument is ignored on interval meshes
using ScalarFn = std::function<double(double, double)>;
// space-time field f(x, y, t)
using SpaceTimeFn = std::function<double(double, double, double)>;

// entries <v, phi_k>; sing > 0 declares v ~ x^{-sing} as x -> 0 (interval
// meshes), integrated with a Jacobi rule on the first cell
Eigen::VectorXd load_vector(const FemSpace& space, const ScalarFn& v, double sing = 0.0);

// coefficients of the L2-orthogonal projection of v onto the space
Eigen::VectorXd l2_project(const FemSpace& space, const ScalarFn& v, double sing = 0.0);

// piecewise-linear Dirac approximation at x0: supported on the containing
// element (lowest element index when x0 sits on a shared face), where its
// moments against local linears reproduce point evaluation exactly
Eigen::VectorXd dirac_approx(const FemSpace& space, double x0, double y0 = 0.0);

// entries phi_k(x0): the load a point mass at x0 exerts on the nodal basis
Eigen::VectorXd point_load(const FemSpace& space, double x0, double y0 = 0.0);

// entries int_{t0}^{t1} <f(., t), phi_k> dt; t_sing > 0 declares f ~ t^{-t_sing}
// as t -> 0 and is honored when the slab starts at t = 0, x_sing as above
Eigen::VectorXd load_slab(const FemSpace& space, const SpaceTimeFn& f, double t0, double t1,
                          double t_sing = 0.0, double x_sing = 0.0);

// value of the coefficient vector's function at a point (boundary values 0)
double eval_p1(const FemSpace& space, const Eigen::VectorXd& coeffs, double x, double y = 0.0);

// nodal transfer onto the dyadic refinement (fine.mesh.n == 2 * coarse.mesh.n);
// exact on the space, so norms and energies are preserved
Eigen::VectorXd prolong_vector(const FemSpace& coarse, const FemSpace& fine,
                               const Eigen::VectorXd& u);

}  // namespace tfdg
