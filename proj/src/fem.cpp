#include "specpoly/fem.hpp"

#include <stdexcept>
#include <vector>

namespace specpoly {

AssembledSystem assemble(const Mesh& mesh, const BoundaryCondition& bc) {
  AssembledSystem sys;
  sys.pure_neumann = bc.empty();
  sys.domain_diameter = mesh.diameter();

  const auto constrained = dirichlet_nodes(mesh, bc);
  sys.free_of_node.assign(mesh.node_count(), -1);
  {
    std::size_t c = 0;
    for (int i = 0; i < mesh.node_count(); ++i) {
      if (c < constrained.size() && constrained[c] == i) {
        ++c;
        continue;
      }
      sys.free_of_node[i] = static_cast<int>(sys.node_of_free.size());
      sys.node_of_free.push_back(i);
    }
  }
  const int n = static_cast<int>(sys.node_of_free.size());
  if (n == 0)
    throw std::invalid_argument(
        "every mesh node is constrained; refine the mesh to obtain interior "
        "degrees of freedom");

  std::vector<Eigen::Triplet<double>> kt, bt;
  kt.reserve(mesh.elements.size() * 9);
  bt.reserve(mesh.elements.size() * 9);
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    const double area = mesh.element_area(e);
    // Gradient of the hat function at vertex i is (b_i, c_i) / (2 area),
    // with b_i = y_j - y_k and c_i = x_k - x_j for cyclic (i, j, k).
    double b[3], c[3];
    for (int i = 0; i < 3; ++i) {
      const Vec2& pj = mesh.nodes[el[(i + 1) % 3]];
      const Vec2& pk = mesh.nodes[el[(i + 2) % 3]];
      b[i] = pj.y() - pk.y();
      c[i] = pk.x() - pj.x();
    }
    for (int i = 0; i < 3; ++i) {
      const int fi = sys.free_of_node[el[i]];
      if (fi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int fj = sys.free_of_node[el[j]];
        if (fj < 0) continue;
        kt.emplace_back(fi, fj, (b[i] * b[j] + c[i] * c[j]) / (4.0 * area));
        bt.emplace_back(fi, fj, (area / 12.0) * (i == j ? 2.0 : 1.0));
      }
    }
  }

  sys.K.resize(n, n);
  sys.B.resize(n, n);
  sys.K.setFromTriplets(kt.begin(), kt.end());
  sys.B.setFromTriplets(bt.begin(), bt.end());
  sys.K.makeCompressed();
  sys.B.makeCompressed();
  return sys;
}

double rayleigh_quotient(const AssembledSystem& sys, const Eigen::VectorXd& x) {
  const double denom = x.dot(sys.B * x);
  if (!(denom > 0)) throw std::invalid_argument("Rayleigh quotient of a null vector");
  return x.dot(sys.K * x) / denom;
}

}  // namespace specpoly
