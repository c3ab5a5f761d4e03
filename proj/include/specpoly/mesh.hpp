#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "specpoly/geometry.hpp"

namespace specpoly {

struct BoundaryEdge {
  int a = 0, b = 0;        // node indices, a -> b along the boundary (CCW)
  std::string label;       // side label of the source shape
};

/// Conforming P1 triangle mesh. Elements are CCW triples of node indices.
/// Boundary edges keep the side label of the shape they discretize; interior
/// edges are implicit.
struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> elements;
  std::vector<BoundaryEdge> boundary_edges;
  int level = 0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int element_count() const { return static_cast<int>(elements.size()); }
  double element_area(int e) const;
  double total_area() const;
  double diameter() const;  // bounding-box diagonal
  double min_angle() const; // over all elements, radians
};

inline constexpr int kMaxRefineLevel = 12;

/// Base mesh (level 0) for a shape: one element for a triangle, two for any
/// quadrilateral kind (split by the 0-2 diagonal), then `level` rounds of
/// uniform red refinement. Throws for level < 0 or level > kMaxRefineLevel.
Mesh triangulate(const ShapeSpec& shape, int level);

/// One round of red refinement: every element is split into four similar
/// children through its edge midpoints. Nested: the parent vertex set is a
/// prefix of the child vertex set. Boundary edges split in place and keep
/// their labels.
Mesh refine(const Mesh& mesh);

/// Sorted unique node indices lying on any boundary edge whose label is in
/// the Dirichlet set. A node shared by a Dirichlet and a Neumann side is
/// included (vertex transitions are Dirichlet-constrained). Throws if the
/// condition references a label the mesh has no boundary edges for.
std::vector<int> dirichlet_nodes(const Mesh& mesh, const BoundaryCondition& bc);

/// Union of a mesh and its mirror image across the line through the boundary
/// side labeled `fold_label`. Nodes on the fold line are shared; the fold
/// side's boundary edges become interior. Mirrored boundary edges get the
/// original label plus `mirror_suffix`. Also returns the node map: for node i
/// of the input mesh, node_map[i] is its mirror image in the result (the
/// input mesh's nodes keep their indices).
struct MirrorResult {
  Mesh mesh;
  std::vector<int> node_map;
};
MirrorResult mirror_union(const Mesh& mesh, const std::string& fold_label,
                          const std::string& mirror_suffix = "*");

/// Plain-text dump: node lines "x y" first, then element lines "i j k"
/// (0-based). 15 significant digits.
void dump_text(const Mesh& mesh, std::ostream& out);

}  // namespace specpoly
