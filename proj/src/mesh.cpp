#include "specpoly/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace specpoly {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

double Mesh::element_area(int e) const {
  const auto& el = elements[e];
  return 0.5 * cross(nodes[el[1]] - nodes[el[0]], nodes[el[2]] - nodes[el[0]]);
}

double Mesh::total_area() const {
  double a = 0;
  for (int e = 0; e < element_count(); ++e) a += element_area(e);
  return a;
}

double Mesh::diameter() const {
  Vec2 lo = nodes[0], hi = nodes[0];
  for (const auto& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

double Mesh::min_angle() const {
  double best = std::numeric_limits<double>::max();
  for (const auto& el : elements) {
    for (int i = 0; i < 3; ++i) {
      const Vec2 u = nodes[el[(i + 1) % 3]] - nodes[el[i]];
      const Vec2 w = nodes[el[(i + 2) % 3]] - nodes[el[i]];
      best = std::min(best, std::atan2(std::abs(cross(u, w)), u.dot(w)));
    }
  }
  return best;
}

Mesh triangulate(const ShapeSpec& shape, int level) {
  shape.validate();
  if (level < 0) fail("refinement level must be nonnegative");
  if (level > kMaxRefineLevel)
    fail("refinement level exceeds the cap of " + std::to_string(kMaxRefineLevel));

  Mesh m;
  m.nodes = shape.vertices;
  if (shape.side_count() == 3) {
    m.elements.push_back({0, 1, 2});
  } else {
    // Quadrilaterals split along the 0-2 diagonal; both pieces must be CCW,
    // otherwise the diagonal is not interior.
    m.elements.push_back({0, 1, 2});
    m.elements.push_back({0, 2, 3});
  }
  for (int i = 0; i < shape.side_count(); ++i)
    m.boundary_edges.push_back({i, (i + 1) % shape.side_count(), shape.side_labels[i]});

  for (int e = 0; e < m.element_count(); ++e)
    if (!(m.element_area(e) > 0)) fail("shape cannot be meshed by the 0-2 diagonal split");

  for (int i = 0; i < level; ++i) m = refine(m);
  m.level = level;
  return m;
}

Mesh refine(const Mesh& mesh) {
  Mesh out;
  out.nodes = mesh.nodes;  // nested: parent nodes keep their indices
  out.level = mesh.level + 1;

  std::unordered_map<std::uint64_t, int> midpoint;
  midpoint.reserve(mesh.elements.size() * 2);
  auto mid = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int idx = static_cast<int>(out.nodes.size());
    out.nodes.push_back(0.5 * (mesh.nodes[a] + mesh.nodes[b]));
    midpoint.emplace(key, idx);
    return idx;
  };

  out.elements.reserve(mesh.elements.size() * 4);
  for (const auto& el : mesh.elements) {
    const int a = el[0], b = el[1], c = el[2];
    const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    out.elements.push_back({a, ab, ca});
    out.elements.push_back({ab, b, bc});
    out.elements.push_back({ca, bc, c});
    out.elements.push_back({ab, bc, ca});
  }

  out.boundary_edges.reserve(mesh.boundary_edges.size() * 2);
  for (const auto& be : mesh.boundary_edges) {
    const int m = midpoint.at(edge_key(be.a, be.b));
    out.boundary_edges.push_back({be.a, m, be.label});
    out.boundary_edges.push_back({m, be.b, be.label});
  }
  return out;
}

std::vector<int> dirichlet_nodes(const Mesh& mesh, const BoundaryCondition& bc) {
  std::set<std::string> mesh_labels;
  for (const auto& be : mesh.boundary_edges) mesh_labels.insert(be.label);
  for (const auto& lab : bc.dirichlet) {
    if (mesh_labels.count(lab)) continue;
    std::string msg = "unknown side label '" + lab + "'; valid labels:";
    for (const auto& s : mesh_labels) msg += " " + s;
    fail(msg);
  }

  std::vector<int> nodes;
  for (const auto& be : mesh.boundary_edges) {
    if (!bc.contains(be.label)) continue;
    nodes.push_back(be.a);
    nodes.push_back(be.b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

MirrorResult mirror_union(const Mesh& mesh, const std::string& fold_label,
                          const std::string& mirror_suffix) {
  const BoundaryEdge* seed = nullptr;
  for (const auto& be : mesh.boundary_edges)
    if (be.label == fold_label) {
      seed = &be;
      break;
    }
  if (!seed) fail("mesh has no boundary side labeled '" + fold_label + "'");

  const Vec2 p0 = mesh.nodes[seed->a];
  const Vec2 dir = (mesh.nodes[seed->b] - p0).normalized();
  const double tol = 1e-12 * mesh.diameter();
  auto reflect = [&](const Vec2& q) -> Vec2 {
    const Vec2 r = q - p0;
    const double along = r.dot(dir);
    const double off = cross(dir, r);
    return p0 + along * dir + off * Vec2(dir.y(), -dir.x());
  };
  auto on_line = [&](const Vec2& q) { return std::abs(cross(dir, q - p0)) <= tol; };

  MirrorResult res;
  res.mesh.nodes = mesh.nodes;
  res.mesh.level = mesh.level;
  res.node_map.resize(mesh.nodes.size());
  for (int i = 0; i < mesh.node_count(); ++i) {
    if (on_line(mesh.nodes[i])) {
      res.node_map[i] = i;
    } else {
      res.node_map[i] = static_cast<int>(res.mesh.nodes.size());
      res.mesh.nodes.push_back(reflect(mesh.nodes[i]));
    }
  }

  res.mesh.elements = mesh.elements;
  for (const auto& el : mesh.elements)
    // Reflection reverses orientation; swap two vertices to restore CCW.
    res.mesh.elements.push_back(
        {res.node_map[el[0]], res.node_map[el[2]], res.node_map[el[1]]});

  for (const auto& be : mesh.boundary_edges) {
    if (be.label == fold_label) continue;  // becomes interior
    res.mesh.boundary_edges.push_back(be);
    res.mesh.boundary_edges.push_back(
        {res.node_map[be.b], res.node_map[be.a], be.label + mirror_suffix});
  }
  return res;
}

void dump_text(const Mesh& mesh, std::ostream& out) {
  char buf[64];
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof buf, "%.15g %.15g\n", p.x(), p.y());
    out << buf;
  }
  for (const auto& el : mesh.elements) {
    std::snprintf(buf, sizeof buf, "%d %d %d\n", el[0], el[1], el[2]);
    out << buf;
  }
}

}  // namespace specpoly
