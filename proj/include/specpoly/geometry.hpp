#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace specpoly {

using Vec2 = Eigen::Vector2d;

/// Planar shape classes the toolkit can mesh and solve on. `Quadrilateral`
/// covers the kites/rhombi produced by the folding and reflection operations.
enum class ShapeKind { Triangle, Trapezoid, RightTrapezoid, Rectangle, Quadrilateral };

std::string to_string(ShapeKind k);
ShapeKind shape_kind_from_string(const std::string& s);

/// A simple polygon with labeled sides. Vertices are CCW; side i runs from
/// vertices[i] to vertices[(i+1) % n] and carries side_labels[i].
///
/// Label conventions by kind:
///   Triangle:       L (longest), M, S; ties broken by ascending index of the
///                   opposite vertex (L first).
///   Trapezoid:      P1/P2 parallel sides (P1 the top, P2 the bottom),
///                   Q1/Q2 the legs (Q1 left, Q2 right).
///   RightTrapezoid: l1 (top) / l2 (bottom) parallel, w2 the perpendicular
///                   leg, w1 the slant leg.
///   Rectangle:      bottom, right, top, left.
///   Quadrilateral:  free-form labels from the producing operation.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Triangle;
  std::vector<Vec2> vertices;
  std::vector<std::string> side_labels;

  int side_count() const { return static_cast<int>(vertices.size()); }
  Vec2 side_start(int i) const { return vertices[i]; }
  Vec2 side_end(int i) const { return vertices[(i + 1) % vertices.size()]; }
  double side_length(int i) const { return (side_end(i) - side_start(i)).norm(); }

  /// Signed shoelace area; validate() guarantees it is positive.
  double area() const;
  /// Max pairwise vertex distance.
  double diameter() const;
  /// Index of the side carrying `label`, or -1.
  int side_index(const std::string& label) const;

  /// Throws std::invalid_argument on degenerate geometry, non-CCW order,
  /// self-intersection, or a label set that does not match the kind.
  void validate() const;

  nlohmann::json to_json() const;
  static ShapeSpec from_json(const nlohmann::json& j);
};

/// Triangle described by its side lengths l >= m >= s, the apex angle
/// (the angle opposite the longest side, always the largest angle, >= pi/3)
/// and the area. Redundant on purpose: construction enforces the law of
/// cosines and the area formula, so downstream code may use any field.
struct TriangleParams {
  double area = 0;
  double apex_angle = 0;  // radians, opposite the longest side
  double l = 0, m = 0, s = 0;

  /// Build from two sides and the included angle between them. Requires
  /// m >= s > 0 and alpha in [pi/3, pi). The included side pair need not end
  /// up adjacent to the largest angle; sides are re-sorted by true length and
  /// apex_angle is recomputed as the angle opposite the longest side.
  static TriangleParams from_sides_angle(double m, double s, double alpha);

  /// Validate a fully specified parameter set (1e-12 relative tolerance on
  /// the law of cosines and the area identity). Throws on inconsistency.
  static TriangleParams checked(double area, double apex_angle, double l, double m, double s);

  double ratio_ms() const { return m / s; }
};

/// Trapezoid with parallel sides p1 (top) <= p2 (bottom), height h, and the
/// horizontal offset of the top-left vertex relative to the bottom-left one.
/// mean_width() = (p1+p2)/2 is the quantity the eigenvalue bounds use.
struct TrapezoidParams {
  double p1 = 0, p2 = 0, h = 0;
  double top_offset = 0;

  double mean_width() const { return 0.5 * (p1 + p2); }
  double area() const { return mean_width() * h; }
};

/// Dirichlet side-label set; every side not listed is Neumann. An empty set
/// is the pure Neumann problem.
struct BoundaryCondition {
  std::vector<std::string> dirichlet;

  bool empty() const { return dirichlet.empty(); }
  bool contains(const std::string& label) const;
  /// Throws std::invalid_argument (listing the valid labels) if any entry is
  /// not a side label of `shape`.
  void validate_for(const ShapeSpec& shape) const;

  static BoundaryCondition parse(const std::string& comma_separated);
  std::string joined() const;
};

// --- constructors -----------------------------------------------------------

/// Canonical triangle: longest side on the x-axis, left endpoint at the
/// origin, interior above. Sides labeled L/M/S.
ShapeSpec triangle_from_params(const TriangleParams& p);

/// Canonicalize an arbitrary CCW triangle (same placement + labels).
ShapeSpec make_triangle(const Vec2& a, const Vec2& b, const Vec2& c);

/// Right triangle with smallest interior angle `alpha` (0 < alpha <= pi/4)
/// and the given area, canonically placed.
ShapeSpec right_triangle_from_angle(double alpha, double area);

/// Trapezoid with the bottom side on the x-axis starting at the origin.
/// Labels P1/P2/Q1/Q2. p1 = p2 is allowed (parallelogram/rectangle shape is
/// still labeled as a trapezoid; use rectangle_shape for rectangle labels).
ShapeSpec trapezoid_from_params(const TrapezoidParams& p);

/// Isosceles placement shortcut: top_offset = (p2-p1)/2.
ShapeSpec isosceles_trapezoid(double p1, double p2, double h);

/// Right trapezoid with the perpendicular leg w2 on the y-axis: vertices
/// (0,0)-(l2,0)-(l1,h)-(0,h). Labels l1 (top), l2 (bottom), w1 (slant),
/// w2 (perpendicular).
ShapeSpec right_trapezoid(double l1, double l2, double h);

/// Axis-aligned a-by-b rectangle at the origin. Labels bottom/right/top/left.
ShapeSpec rectangle_shape(double a, double b);

// --- side classification ----------------------------------------------------

/// Label->side-index map. For triangles this recomputes L/M/S from the vertex
/// coordinates with the documented tie-break; for other kinds it reflects the
/// stored labels.
std::vector<std::pair<std::string, int>> classify_sides(const ShapeSpec& shape);

/// Triangle params recovered from a triangle ShapeSpec.
TriangleParams params_of_triangle(const ShapeSpec& tri);

// --- folding / reflection / tiling operations -------------------------------

/// Mirror a triangle across its longest side and return the union: a kite of
/// twice the area. Original sides keep their labels; mirrored sides get a
/// "*" suffix. The former L side becomes the interior diagonal 0-2.
ShapeSpec fold_along_longest(const ShapeSpec& tri);

/// Reflect a right triangle across both legs (and both, composed) and return
/// the union: a rhombus of four times the area whose diagonals are the
/// doubled legs. Sides labeled H0..H3 (images of the hypotenuse).
ShapeSpec reflect_right_triangle_to_rhombus(const ShapeSpec& tri);

/// Mirror a right trapezoid across the line containing its perpendicular leg
/// w2 and return the union: an isosceles trapezoid of twice the area with
/// parallel sides 2*l1 and 2*l2 (a rectangle when l1 = l2).
ShapeSpec fold_right_trapezoid(const ShapeSpec& rt);

/// Strip of n_copies point-reflected copies of a trapezoid plus the bounding
/// rectangle. The copies tile a zigzag band of height h; `width` equals
/// n_copies * mean_width + supplement, where `supplement` depends only on the
/// shape (max of the odd/even-parity end-cap widths, so it is independent of
/// n_copies).
struct TileResult {
  double width = 0;
  double height = 0;
  double supplement = 0;
  std::vector<std::array<Vec2, 4>> copies;
};
TileResult tile_trapezoid_to_rectangle(const ShapeSpec& trapezoid, int n_copies);

}  // namespace specpoly
