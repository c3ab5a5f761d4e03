#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "specpoly/mesh.hpp"

namespace specpoly {

using SpMat = Eigen::SparseMatrix<double>;

/// P1 stiffness/mass pair restricted to the free (non-Dirichlet) nodes.
/// K and B are symmetric; B is positive definite; K is positive definite if
/// the Dirichlet set is nonempty and positive semidefinite (constant kernel)
/// otherwise.
struct AssembledSystem {
  SpMat K;                     // stiffness, integral of grad(u).grad(v)
  SpMat B;                     // mass, integral of u*v
  std::vector<int> free_of_node;  // node index -> free index, -1 if constrained
  std::vector<int> node_of_free;  // free index -> node index
  bool pure_neumann = false;
  double domain_diameter = 0;

  int dim() const { return static_cast<int>(node_of_free.size()); }
};

/// Exact P1 element integrals (cotangent stiffness, area/12 * (2,1;1,2) mass),
/// Dirichlet handled by row/column elimination. Throws std::invalid_argument
/// if every node is constrained (refine the mesh first).
AssembledSystem assemble(const Mesh& mesh, const BoundaryCondition& bc);

/// (x'Kx)/(x'Bx) for a vector on the free nodes. Throws on zero B-norm.
double rayleigh_quotient(const AssembledSystem& sys, const Eigen::VectorXd& x);

}  // namespace specpoly
