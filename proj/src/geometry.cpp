#include "specpoly/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace specpoly {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Proper segment intersection test for the simplicity check; shared endpoints
// of adjacent edges are excluded by the caller.
bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

double shoelace(const std::vector<Vec2>& v) {
  double twice = 0;
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) twice += cross(v[i], v[(i + 1) % n]);
  return 0.5 * twice;
}

bool parallel(const Vec2& u, const Vec2& v, double scale) {
  return std::abs(cross(u, v)) <= 1e-10 * scale * scale;
}

bool perpendicular(const Vec2& u, const Vec2& v, double scale) {
  return std::abs(u.dot(v)) <= 1e-10 * scale * scale;
}

void require_labels(const ShapeSpec& s, const std::vector<std::string>& expected) {
  for (const auto& lab : expected)
    if (s.side_index(lab) < 0)
      fail("shape of kind " + to_string(s.kind) + " must carry side label '" + lab + "'");
}

}  // namespace

std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Triangle: return "triangle";
    case ShapeKind::Trapezoid: return "trapezoid";
    case ShapeKind::RightTrapezoid: return "right-trapezoid";
    case ShapeKind::Rectangle: return "rectangle";
    case ShapeKind::Quadrilateral: return "quadrilateral";
  }
  fail("unknown shape kind");
}

ShapeKind shape_kind_from_string(const std::string& s) {
  if (s == "triangle") return ShapeKind::Triangle;
  if (s == "trapezoid") return ShapeKind::Trapezoid;
  if (s == "right-trapezoid") return ShapeKind::RightTrapezoid;
  if (s == "rectangle") return ShapeKind::Rectangle;
  if (s == "quadrilateral") return ShapeKind::Quadrilateral;
  fail("unknown shape kind '" + s + "'");
}

double ShapeSpec::area() const { return shoelace(vertices); }

double ShapeSpec::diameter() const {
  double d = 0;
  for (size_t i = 0; i < vertices.size(); ++i)
    for (size_t j = i + 1; j < vertices.size(); ++j)
      d = std::max(d, (vertices[i] - vertices[j]).norm());
  return d;
}

int ShapeSpec::side_index(const std::string& label) const {
  for (int i = 0; i < side_count(); ++i)
    if (side_labels[i] == label) return i;
  return -1;
}

void ShapeSpec::validate() const {
  const int n = side_count();
  if (n < 3 || n > 4) fail("shape must have 3 or 4 vertices");
  if (static_cast<int>(side_labels.size()) != n) fail("one label per side required");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (side_labels[i] == side_labels[j]) fail("duplicate side label '" + side_labels[i] + "'");

  const double diam = diameter();
  if (!(diam > 0)) fail("degenerate shape: zero diameter");
  const double a = area();
  if (a < 0) fail("vertices must be in counterclockwise order");
  if (a <= 1e-12 * diam * diam) fail("degenerate shape: area too small");

  // Non-adjacent edge pairs must not cross (quadrilaterals only; a positive
  // area triangle is always simple).
  if (n == 4) {
    if (segments_intersect(vertices[0], vertices[1], vertices[2], vertices[3]) ||
        segments_intersect(vertices[1], vertices[2], vertices[3], vertices[0]))
      fail("polygon is self-intersecting");
  }

  switch (kind) {
    case ShapeKind::Triangle: {
      require_labels(*this, {"L", "M", "S"});
      const double l = side_length(side_index("L"));
      const double m = side_length(side_index("M"));
      const double s = side_length(side_index("S"));
      if (l < m - 1e-9 * diam || m < s - 1e-9 * diam)
        fail("triangle labels must satisfy |L| >= |M| >= |S|");
      break;
    }
    case ShapeKind::Trapezoid: {
      require_labels(*this, {"P1", "P2", "Q1", "Q2"});
      const int i1 = side_index("P1"), i2 = side_index("P2");
      const Vec2 d1 = side_end(i1) - side_start(i1);
      const Vec2 d2 = side_end(i2) - side_start(i2);
      if (!parallel(d1, d2, diam)) fail("trapezoid sides P1 and P2 must be parallel");
      if (d1.norm() > d2.norm() + 1e-9 * diam) fail("trapezoid requires |P1| <= |P2|");
      break;
    }
    case ShapeKind::RightTrapezoid: {
      require_labels(*this, {"l1", "l2", "w1", "w2"});
      const int i1 = side_index("l1"), i2 = side_index("l2"), iw = side_index("w2");
      const Vec2 d1 = side_end(i1) - side_start(i1);
      const Vec2 d2 = side_end(i2) - side_start(i2);
      const Vec2 dw = side_end(iw) - side_start(iw);
      if (!parallel(d1, d2, diam)) fail("right trapezoid sides l1 and l2 must be parallel");
      if (!perpendicular(dw, d1, diam) || !perpendicular(dw, d2, diam))
        fail("right trapezoid side w2 must be perpendicular to l1 and l2");
      break;
    }
    case ShapeKind::Rectangle: {
      require_labels(*this, {"bottom", "right", "top", "left"});
      for (int i = 0; i < 4; ++i) {
        const Vec2 d1 = side_end(i) - side_start(i);
        const int j = (i + 1) % 4;
        const Vec2 d2 = side_end(j) - side_start(j);
        if (!perpendicular(d1, d2, diam)) fail("rectangle corners must be right angles");
      }
      break;
    }
    case ShapeKind::Quadrilateral:
      break;
  }
}

nlohmann::json ShapeSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind);
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : vertices) j["vertices"].push_back({v.x(), v.y()});
  j["labels"] = side_labels;
  return j;
}

ShapeSpec ShapeSpec::from_json(const nlohmann::json& j) {
  ShapeSpec s;
  s.kind = shape_kind_from_string(j.at("kind").get<std::string>());
  for (const auto& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 2) fail("vertex must be a [x, y] pair");
    s.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  s.side_labels = j.at("labels").get<std::vector<std::string>>();
  s.validate();
  return s;
}

TriangleParams TriangleParams::from_sides_angle(double m, double s, double alpha) {
  if (!(s > 0) || !(m >= s)) fail("triangle sides require m >= s > 0");
  if (!(alpha >= kPi / 3 - 1e-12) || !(alpha < kPi))
    fail("apex angle must lie in [pi/3, pi)");
  const double t = std::sqrt(std::max(0.0, m * m + s * s - 2 * m * s * std::cos(alpha)));
  const double area = 0.5 * m * s * std::sin(alpha);
  if (!(area > 0)) fail("degenerate triangle parameters");

  // Sort by true length; the included angle is only the apex angle when the
  // opposite side actually came out longest, so recompute it from the sides.
  std::array<double, 3> len{t, m, s};
  std::sort(len.begin(), len.end(), std::greater<>());
  TriangleParams p;
  p.l = len[0];
  p.m = len[1];
  p.s = len[2];
  p.area = area;
  const double c = (p.m * p.m + p.s * p.s - p.l * p.l) / (2 * p.m * p.s);
  p.apex_angle = std::acos(std::clamp(c, -1.0, 1.0));
  return p;
}

TriangleParams TriangleParams::checked(double area, double apex_angle, double l, double m,
                                       double s) {
  if (!(s > 0) || !(m >= s) || !(l >= m)) fail("triangle sides require l >= m >= s > 0");
  if (!(apex_angle >= kPi / 3 - 1e-12) || !(apex_angle < kPi))
    fail("apex angle must lie in [pi/3, pi)");
  const double lc = m * m + s * s - 2 * m * s * std::cos(apex_angle);
  if (std::abs(lc - l * l) > 1e-12 * std::max(lc, l * l))
    fail("inconsistent triangle parameters: law of cosines violated");
  const double a = 0.5 * m * s * std::sin(apex_angle);
  if (std::abs(a - area) > 1e-12 * std::max(a, area))
    fail("inconsistent triangle parameters: area does not match sides and angle");
  TriangleParams p;
  p.area = area;
  p.apex_angle = apex_angle;
  p.l = l;
  p.m = m;
  p.s = s;
  return p;
}

bool BoundaryCondition::contains(const std::string& label) const {
  return std::find(dirichlet.begin(), dirichlet.end(), label) != dirichlet.end();
}

void BoundaryCondition::validate_for(const ShapeSpec& shape) const {
  for (const auto& lab : dirichlet) {
    if (shape.side_index(lab) >= 0) continue;
    std::ostringstream os;
    os << "unknown side label '" << lab << "'; valid labels:";
    for (const auto& s : shape.side_labels) os << " " << s;
    fail(os.str());
  }
}

BoundaryCondition BoundaryCondition::parse(const std::string& comma_separated) {
  BoundaryCondition bc;
  std::string cur;
  std::istringstream is(comma_separated);
  while (std::getline(is, cur, ','))
    if (!cur.empty()) bc.dirichlet.push_back(cur);
  return bc;
}

std::string BoundaryCondition::joined() const {
  std::string out;
  for (size_t i = 0; i < dirichlet.size(); ++i) {
    if (i) out += ",";
    out += dirichlet[i];
  }
  return out;
}

namespace {

// L/M/S side indices with the documented tie-break: descending length, ties
// resolved by ascending index of the opposite vertex (side i is opposite
// vertex (i+2) mod 3).
std::array<int, 3> triangle_side_order(const std::vector<Vec2>& v) {
  std::array<double, 3> len;
  for (int i = 0; i < 3; ++i) len[i] = (v[(i + 1) % 3] - v[i]).norm();
  const double tol = 1e-12 * *std::max_element(len.begin(), len.end());
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(len[a] - len[b]) > tol) return len[a] > len[b];
    return (a + 2) % 3 < (b + 2) % 3;
  });
  return order;  // order[0] = L, order[1] = M, order[2] = S
}

}  // namespace

ShapeSpec make_triangle(const Vec2& a, const Vec2& b, const Vec2& c) {
  std::vector<Vec2> v{a, b, c};
  if (shoelace(v) < 0) std::swap(v[1], v[2]);
  if (!(shoelace(v) > 0)) fail("degenerate triangle: collinear vertices");

  const auto order = triangle_side_order(v);
  const int iL = order[0];
  // Rigid motion: L endpoints onto the x-axis, CCW interior above.
  const Vec2 p0 = v[iL];
  const Vec2 p1 = v[(iL + 1) % 3];
  const Vec2 apex = v[(iL + 2) % 3];
  const Vec2 dir = (p1 - p0).normalized();
  auto transform = [&](const Vec2& q) {
    const Vec2 r = q - p0;
    return Vec2(r.dot(dir), cross(dir, r));
  };

  ShapeSpec s;
  s.kind = ShapeKind::Triangle;
  s.vertices = {Vec2(0, 0), transform(p1), transform(apex)};
  s.vertices[1].y() = 0;  // exact placement on the axis
  if (s.vertices[2].y() < 0) s.vertices[2].y() = -s.vertices[2].y();

  const auto fin = triangle_side_order(s.vertices);
  s.side_labels.assign(3, "");
  s.side_labels[fin[0]] = "L";
  s.side_labels[fin[1]] = "M";
  s.side_labels[fin[2]] = "S";
  s.validate();
  return s;
}

ShapeSpec triangle_from_params(const TriangleParams& p) {
  // Apex located by its distances to the L endpoints (m from the left one).
  const double x = (p.l * p.l + p.m * p.m - p.s * p.s) / (2 * p.l);
  const double y2 = p.m * p.m - x * x;
  if (!(y2 > 0)) fail("degenerate triangle parameters");
  return make_triangle(Vec2(0, 0), Vec2(p.l, 0), Vec2(x, std::sqrt(y2)));
}

ShapeSpec right_triangle_from_angle(double alpha, double area) {
  if (!(alpha > 0) || !(alpha <= kPi / 4 + 1e-12)) fail("smallest angle must lie in (0, pi/4]");
  if (!(area > 0)) fail("area must be positive");
  const double c2 = 4 * area / std::sin(2 * alpha);
  const double c = std::sqrt(c2);
  return make_triangle(Vec2(0, 0), Vec2(c * std::cos(alpha), 0),
                       Vec2(0, c * std::sin(alpha)));
}

ShapeSpec trapezoid_from_params(const TrapezoidParams& p) {
  if (!(p.p1 > 0) || !(p.p2 > 0) || !(p.h > 0)) fail("trapezoid requires p1, p2, h > 0");
  if (p.p1 > p.p2 + 1e-12 * p.p2) fail("trapezoid requires p1 <= p2");
  ShapeSpec s;
  s.kind = ShapeKind::Trapezoid;
  s.vertices = {Vec2(0, 0), Vec2(p.p2, 0), Vec2(p.top_offset + p.p1, p.h),
                Vec2(p.top_offset, p.h)};
  s.side_labels = {"P2", "Q2", "P1", "Q1"};
  s.validate();
  return s;
}

ShapeSpec isosceles_trapezoid(double p1, double p2, double h) {
  TrapezoidParams p;
  p.p1 = p1;
  p.p2 = p2;
  p.h = h;
  p.top_offset = 0.5 * (p2 - p1);
  return trapezoid_from_params(p);
}

ShapeSpec right_trapezoid(double l1, double l2, double h) {
  if (!(l1 > 0) || !(l2 > 0) || !(h > 0)) fail("right trapezoid requires l1, l2, h > 0");
  ShapeSpec s;
  s.kind = ShapeKind::RightTrapezoid;
  s.vertices = {Vec2(0, 0), Vec2(l2, 0), Vec2(l1, h), Vec2(0, h)};
  s.side_labels = {"l2", "w1", "l1", "w2"};
  s.validate();
  return s;
}

ShapeSpec rectangle_shape(double a, double b) {
  if (!(a > 0) || !(b > 0)) fail("rectangle requires positive side lengths");
  ShapeSpec s;
  s.kind = ShapeKind::Rectangle;
  s.vertices = {Vec2(0, 0), Vec2(a, 0), Vec2(a, b), Vec2(0, b)};
  s.side_labels = {"bottom", "right", "top", "left"};
  s.validate();
  return s;
}

std::vector<std::pair<std::string, int>> classify_sides(const ShapeSpec& shape) {
  std::vector<std::pair<std::string, int>> out;
  if (shape.kind == ShapeKind::Triangle) {
    const auto order = triangle_side_order(shape.vertices);
    out = {{"L", order[0]}, {"M", order[1]}, {"S", order[2]}};
  } else {
    for (int i = 0; i < shape.side_count(); ++i) out.emplace_back(shape.side_labels[i], i);
  }
  return out;
}

TriangleParams params_of_triangle(const ShapeSpec& tri) {
  if (tri.kind != ShapeKind::Triangle) fail("params_of_triangle requires a triangle");
  const auto order = triangle_side_order(tri.vertices);
  TriangleParams p;
  p.l = tri.side_length(order[0]);
  p.m = tri.side_length(order[1]);
  p.s = tri.side_length(order[2]);
  p.area = tri.area();
  const double c = (p.m * p.m + p.s * p.s - p.l * p.l) / (2 * p.m * p.s);
  p.apex_angle = std::acos(std::clamp(c, -1.0, 1.0));
  return p;
}

ShapeSpec fold_along_longest(const ShapeSpec& tri) {
  if (tri.kind != ShapeKind::Triangle) fail("fold_along_longest requires a triangle");
  // Canonical placement puts L on the x-axis, so the mirror is y -> -y.
  const ShapeSpec t = make_triangle(tri.vertices[0], tri.vertices[1], tri.vertices[2]);
  const Vec2 apex = t.vertices[2];
  ShapeSpec q;
  q.kind = ShapeKind::Quadrilateral;
  q.vertices = {Vec2(0, 0), Vec2(apex.x(), -apex.y()), t.vertices[1], apex};
  // Sides 2,3 coincide with the original sides 1,2; sides 0,1 are their mirrors.
  q.side_labels = {t.side_labels[2] + "*", t.side_labels[1] + "*", t.side_labels[1],
                   t.side_labels[2]};
  q.validate();
  return q;
}

ShapeSpec reflect_right_triangle_to_rhombus(const ShapeSpec& tri) {
  if (tri.kind != ShapeKind::Triangle) fail("reflect_right_triangle_to_rhombus requires a triangle");
  // Locate the right-angle vertex and the legs adjacent to it.
  int right_at = -1;
  for (int i = 0; i < 3; ++i) {
    const Vec2 u = tri.vertices[(i + 1) % 3] - tri.vertices[i];
    const Vec2 w = tri.vertices[(i + 2) % 3] - tri.vertices[i];
    if (std::abs(u.dot(w)) <= 1e-9 * tri.diameter() * tri.diameter()) {
      right_at = i;
      break;
    }
  }
  if (right_at < 0) fail("triangle has no right angle");
  const double g1 = (tri.vertices[(right_at + 1) % 3] - tri.vertices[right_at]).norm();
  const double g2 = (tri.vertices[(right_at + 2) % 3] - tri.vertices[right_at]).norm();

  ShapeSpec r;
  r.kind = ShapeKind::Quadrilateral;
  r.vertices = {Vec2(g1, 0), Vec2(0, g2), Vec2(-g1, 0), Vec2(0, -g2)};
  r.side_labels = {"H0", "H1", "H2", "H3"};
  r.validate();
  return r;
}

ShapeSpec fold_right_trapezoid(const ShapeSpec& rt) {
  if (rt.kind != ShapeKind::RightTrapezoid) fail("fold_right_trapezoid requires a right trapezoid");
  const double l1 = rt.side_length(rt.side_index("l1"));
  const double l2 = rt.side_length(rt.side_index("l2"));
  const double h = rt.side_length(rt.side_index("w2"));
  if (std::abs(l1 - l2) <= 1e-12 * std::max(l1, l2)) return rectangle_shape(2 * l1, h);
  return isosceles_trapezoid(2 * std::min(l1, l2), 2 * std::max(l1, l2), h);
}

namespace {

// Bottom/top side indices of a horizontally-placed trapezoid-like quad.
std::pair<int, int> parallel_side_indices(const ShapeSpec& g) {
  switch (g.kind) {
    case ShapeKind::Trapezoid: return {g.side_index("P2"), g.side_index("P1")};
    case ShapeKind::Rectangle: return {g.side_index("bottom"), g.side_index("top")};
    case ShapeKind::RightTrapezoid: return {g.side_index("l2"), g.side_index("l1")};
    default: fail("tiling requires a trapezoid, right trapezoid, or rectangle");
  }
}

double strip_width(const std::vector<std::array<Vec2, 4>>& copies) {
  double lo = copies[0][0].x(), hi = lo;
  for (const auto& c : copies)
    for (const auto& v : c) {
      lo = std::min(lo, v.x());
      hi = std::max(hi, v.x());
    }
  return hi - lo;
}

std::vector<std::array<Vec2, 4>> build_strip(const ShapeSpec& g, int n) {
  std::array<Vec2, 4> cur{g.vertices[0], g.vertices[1], g.vertices[2], g.vertices[3]};
  // The pivot leg joins the bottom-right and top-right vertices; after each
  // point reflection the image of the far leg becomes the next pivot.
  Vec2 leg_a = cur[1], leg_b = cur[2];
  std::vector<std::array<Vec2, 4>> copies{cur};
  for (int j = 1; j < n; ++j) {
    const Vec2 mid = 0.5 * (leg_a + leg_b);
    std::array<Vec2, 4> next;
    for (int i = 0; i < 4; ++i) next[i] = 2 * mid - cur[i];
    leg_a = next[0];
    leg_b = next[3];
    copies.push_back(next);
    cur = next;
  }
  return copies;
}

}  // namespace

TileResult tile_trapezoid_to_rectangle(const ShapeSpec& trapezoid, int n_copies) {
  if (n_copies < 1) fail("n_copies must be >= 1");
  trapezoid.validate();
  const auto [ib, it] = parallel_side_indices(trapezoid);
  const double p2 = trapezoid.side_length(ib);
  const double p1 = trapezoid.side_length(it);
  const double m = 0.5 * (p1 + p2);
  const Vec2 d = trapezoid.side_end(ib) - trapezoid.side_start(ib);
  if (std::abs(d.y()) > 1e-12 * trapezoid.diameter())
    fail("tiling requires the parallel sides to be horizontal");

  // The strip pattern has period two in the copy count, so the two parities
  // give the only possible end-cap widths; take the larger so the returned
  // rectangle encloses the strip for every n.
  const double c_odd = strip_width(build_strip(trapezoid, 1)) - m;
  const double c_even = strip_width(build_strip(trapezoid, 2)) - 2 * m;
  const double c = std::max({c_odd, c_even, 0.0});

  TileResult r;
  r.copies = build_strip(trapezoid, n_copies);
  double ylo = r.copies[0][0].y(), yhi = ylo;
  for (const auto& cp : r.copies)
    for (const auto& v : cp) {
      ylo = std::min(ylo, v.y());
      yhi = std::max(yhi, v.y());
    }
  r.height = yhi - ylo;
  r.supplement = c;
  r.width = m * n_copies + c;
  return r;
}

}  // namespace specpoly
