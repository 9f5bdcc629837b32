#include "ptg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "ptg/error.hpp"

namespace ptg {

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

struct TripleHash {
  std::size_t operator()(const std::array<VertexId, 3>& t) const noexcept {
    std::size_t h = t[0];
    h = h * 1000003u ^ t[1];
    h = h * 1000003u ^ t[2];
    return h;
  }
};

}  // namespace

TriangleGeometry TriangleGeometry::from_vertices(Point a, Point b, Point c) {
  TriangleGeometry g;
  if (orient2(a, b, c) < 0.0) std::swap(b, c);
  g.vertices = {a, b, c};

  double max_len2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto [p, q] = g.edge_endpoints(i);
    const double len2 = norm2(q - p);
    g.edge_lengths[i] = std::sqrt(len2);
    max_len2 = std::max(max_len2, len2);
  }
  g.area = 0.5 * orient2(a, b, c);
  if (!(g.area >= 1e-14 * max_len2) || max_len2 == 0.0) {
    throw Error(ErrorKind::DegenerateTriangle, "degenerate triangle (zero area)");
  }

  for (int i = 0; i < 3; ++i) {
    const Vec2 u = g.vertices[(i + 1) % 3] - g.vertices[i];
    const Vec2 w = g.vertices[(i + 2) % 3] - g.vertices[i];
    g.angles[i] = std::atan2(std::abs(cross(u, w)), dot(u, w));
  }

  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  g.circumcenter = a + Vec2{(ac.y * norm2(ab) - ab.y * norm2(ac)) / d,
                            (ab.x * norm2(ac) - ac.x * norm2(ab)) / d};
  g.centroid = (a + b + c) / 3.0;
  g.gyration_radius2 =
      (g.edge_lengths[0] * g.edge_lengths[0] + g.edge_lengths[1] * g.edge_lengths[1] +
       g.edge_lengths[2] * g.edge_lengths[2]) /
      36.0;
  return g;
}

double TriangleGeometry::min_angle() const noexcept {
  return std::min({angles[0], angles[1], angles[2]});
}

double TriangleGeometry::max_angle() const noexcept {
  return std::max({angles[0], angles[1], angles[2]});
}

double TriangleGeometry::max_edge_length() const noexcept {
  return std::max({edge_lengths[0], edge_lengths[1], edge_lengths[2]});
}

Vec2 TriangleGeometry::outward_normal(int i) const noexcept {
  const auto [p, q] = edge_endpoints(i);
  const Vec2 t = q - p;
  return Vec2{t.y, -t.x} / norm(t);
}

std::array<Point, 2> TriangleGeometry::edge_endpoints(int i) const noexcept {
  return {vertices[(i + 1) % 3], vertices[(i + 2) % 3]};
}

Point TriangleGeometry::from_barycentric(const std::array<double, 3>& lambda) const noexcept {
  return lambda[0] * vertices[0] + lambda[1] * vertices[1] + lambda[2] * vertices[2];
}

Mesh Mesh::build(std::vector<Point> vertices, std::vector<std::array<VertexId, 3>> triangles) {
  if (vertices.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "mesh needs at least 3 vertices");
  }
  if (triangles.empty()) {
    throw Error(ErrorKind::InvalidArgument, "mesh needs at least 1 triangle");
  }

  Mesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  m.geometry_.reserve(m.triangles_.size());

  std::unordered_set<std::array<VertexId, 3>, TripleHash> seen;
  for (CellId k = 0; k < m.triangles_.size(); ++k) {
    auto& t = m.triangles_[k];
    for (VertexId v : t) {
      if (v >= m.vertices_.size()) {
        throw Error(ErrorKind::InvalidArgument, "triangle " + std::to_string(k) +
                                                    " references vertex " + std::to_string(v) +
                                                    " out of range");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw Error(ErrorKind::DegenerateTriangle,
                  "triangle " + std::to_string(k) + " repeats a vertex");
    }
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) {
      throw Error(ErrorKind::NonConformingMesh, "duplicate triangle " + std::to_string(k));
    }
    if (orient2(m.vertices_[t[0]], m.vertices_[t[1]], m.vertices_[t[2]]) < 0.0) {
      std::swap(t[1], t[2]);
    }
    try {
      m.geometry_.push_back(TriangleGeometry::from_vertices(m.vertices_[t[0]], m.vertices_[t[1]],
                                                            m.vertices_[t[2]]));
    } catch (const Error&) {
      throw Error(ErrorKind::DegenerateTriangle,
                  "triangle " + std::to_string(k) + " has zero area");
    }
  }

  std::unordered_map<std::uint64_t, EdgeId> index;
  m.cell_edges_.resize(m.triangles_.size());
  for (CellId k = 0; k < m.triangles_.size(); ++k) {
    const auto& t = m.triangles_[k];
    const auto& g = m.geometry_[k];
    for (int i = 0; i < 3; ++i) {
      const VertexId s = t[(i + 1) % 3];
      const VertexId n = t[(i + 2) % 3];
      const auto [it, inserted] = index.try_emplace(edge_key(s, n), m.edges_.size());
      if (inserted) {
        Edge e;
        e.south = s;
        e.north = n;
        e.normal = g.outward_normal(i);
        e.length = g.edge_lengths[i];
        e.cell_k = k;
        e.west = t[i];
        e.local_k = i;
        m.edges_.push_back(e);
        m.cell_edges_[k].edges[i] = it->second;
        m.cell_edges_[k].signs[i] = 1;
        continue;
      }
      Edge& e = m.edges_[it->second];
      if (!e.is_boundary()) {
        throw Error(ErrorKind::NonConformingMesh,
                    "edge (" + std::to_string(s) + ", " + std::to_string(n) +
                        ") is shared by more than two triangles");
      }
      // Two consistently oriented neighbours traverse the shared edge in
      // opposite directions.
      if (e.south != n || e.north != s) {
        throw Error(ErrorKind::NonConformingMesh,
                    "triangles " + std::to_string(e.cell_k) + " and " + std::to_string(k) +
                        " overlap along edge (" + std::to_string(s) + ", " + std::to_string(n) +
                        ")");
      }
      e.cell_l = k;
      e.east = t[i];
      e.local_l = i;
      m.cell_edges_[k].edges[i] = it->second;
      m.cell_edges_[k].signs[i] = -1;
    }
  }

  for (EdgeId e = 0; e < m.edges_.size(); ++e) {
    (m.edges_[e].is_boundary() ? m.boundary_edges_ : m.internal_edges_).push_back(e);
    m.h_ = std::max(m.h_, m.edges_[e].length);
  }
  return m;
}

double Mesh::opposite_angle(EdgeId e, int side) const {
  const Edge& ed = edges_.at(e);
  if (side == 0) return geometry_[ed.cell_k].angles[ed.local_k];
  if (ed.is_boundary()) {
    throw Error(ErrorKind::InvalidArgument, "boundary edge has no second cell");
  }
  return geometry_[ed.cell_l].angles[ed.local_l];
}

double Mesh::min_angle() const noexcept {
  double a = kPi;
  for (const auto& g : geometry_) a = std::min(a, g.min_angle());
  return a;
}

double Mesh::max_angle() const noexcept {
  double a = 0.0;
  for (const auto& g : geometry_) a = std::max(a, g.max_angle());
  return a;
}

MeshQualityReport quality_report(const Mesh& mesh) {
  MeshQualityReport r;
  r.min_angle = mesh.min_angle();
  r.max_angle = mesh.max_angle();
  r.acute = r.max_angle < kPi / 2 - kAngleGuard;
  r.admissible = true;
  for (EdgeId e : mesh.internal_edges()) {
    const double sum = mesh.opposite_angle(e, 0) + mesh.opposite_angle(e, 1);
    const bool ok = sum < kPi - kAngleGuard;
    r.internal.push_back({e, sum, ok});
    r.admissible = r.admissible && ok;
  }
  for (EdgeId e : mesh.boundary_edges()) {
    const double theta = mesh.opposite_angle(e, 0);
    const bool ok = theta < kPi / 2 - kAngleGuard;
    r.boundary.push_back({e, theta, ok});
    r.admissible = r.admissible && ok;
  }
  return r;
}

std::vector<EdgeId> MeshQualityReport::offending_edges() const {
  std::vector<EdgeId> out;
  for (const auto& c : internal) {
    if (!c.ok) out.push_back(c.edge);
  }
  for (const auto& c : boundary) {
    if (!c.ok) out.push_back(c.edge);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Mesh generate_rhombus_equilateral(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "subdivision count must be >= 1");
  const double h = 1.0 / n;
  const double s3 = std::sqrt(3.0);
  const auto id = [n](int i, int j) { return static_cast<VertexId>(j * (n + 1) + i); };

  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.push_back({(i + 0.5 * j) * h, 0.5 * s3 * j * h});
    }
  }
  std::vector<std::array<VertexId, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Mesh::build(std::move(vertices), std::move(triangles));
}

}  // namespace ptg
