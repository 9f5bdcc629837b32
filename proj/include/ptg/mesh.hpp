#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "ptg/error.hpp"
#include "ptg/geometry.hpp"

namespace ptg {

using VertexId = std::size_t;
using CellId = std::size_t;
using EdgeId = std::size_t;

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Geometric quantities of one triangle. Vertices are stored counter-clockwise;
/// local index i refers to vertex i, the edge opposite to it and the angle at it.
struct TriangleGeometry {
  std::array<Point, 3> vertices{};
  double area = 0.0;
  std::array<double, 3> edge_lengths{};
  std::array<double, 3> angles{};
  Point circumcenter{};
  Point centroid{};
  /// Mean squared distance to the centroid; 36 rho^2 = sum of squared edge lengths.
  double gyration_radius2 = 0.0;

  /// Builds the geometry of (a, b, c), reordering to counter-clockwise if needed.
  /// Throws ErrorKind::DegenerateTriangle when area < 1e-14 * max|edge|^2.
  static TriangleGeometry from_vertices(Point a, Point b, Point c);

  double min_angle() const noexcept;
  double max_angle() const noexcept;
  double max_edge_length() const noexcept;
  /// Unit normal of edge i pointing out of the triangle.
  Vec2 outward_normal(int i) const noexcept;
  /// Endpoints of edge i in counter-clockwise order (vertex i+1, then i+2).
  std::array<Point, 2> edge_endpoints(int i) const noexcept;
  Point from_barycentric(const std::array<double, 3>& lambda) const noexcept;
};

/// Oriented mesh edge. For an internal edge `cell_k` has the smaller index and
/// the normal points from `cell_k` to `cell_l`; boundary normals point outward.
/// The frame (normal, N - S) is direct.
struct Edge {
  VertexId south = kNone;
  VertexId north = kNone;
  Vec2 normal{};
  double length = 0.0;
  CellId cell_k = kNone;
  CellId cell_l = kNone;
  VertexId west = kNone;  // vertex of K opposite to the edge
  VertexId east = kNone;  // vertex of L opposite to the edge (internal only)
  int local_k = -1;
  int local_l = -1;

  bool is_boundary() const noexcept { return cell_l == kNone; }
};

/// Edges of one triangle by local index, with the signs n_a . n_{K,i}.
struct CellEdges {
  std::array<EdgeId, 3> edges{};
  std::array<int, 3> signs{};
};

/// Conforming triangle mesh. Immutable after `build`.
class Mesh {
 public:
  /// Validates connectivity, reorients triangles counter-clockwise and derives
  /// the canonically oriented edge list.
  static Mesh build(std::vector<Point> vertices, std::vector<std::array<VertexId, 3>> triangles);

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_cells() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Point> vertices() const noexcept { return vertices_; }
  std::span<const std::array<VertexId, 3>> triangles() const noexcept { return triangles_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const EdgeId> boundary_edges() const noexcept { return boundary_edges_; }
  std::span<const EdgeId> internal_edges() const noexcept { return internal_edges_; }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const CellEdges& cell_edges(CellId k) const { return cell_edges_.at(k); }
  const TriangleGeometry& geometry(CellId k) const { return geometry_.at(k); }

  /// Angle of `edge.cell_k` (side 0) or `edge.cell_l` (side 1) opposite the edge.
  double opposite_angle(EdgeId e, int side) const;

  /// h_T: the largest edge length.
  double max_edge_length() const noexcept { return h_; }
  double min_angle() const noexcept;
  double max_angle() const noexcept;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<VertexId, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<CellEdges> cell_edges_;
  std::vector<TriangleGeometry> geometry_;
  std::vector<EdgeId> boundary_edges_;
  std::vector<EdgeId> internal_edges_;
  double h_ = 0.0;
};

/// Angle guard band of the strict Delaunay and boundary-acute tests.
inline constexpr double kAngleGuard = 1e-12;

struct EdgeAngleCheck {
  EdgeId edge = kNone;
  /// theta_{a,K} + theta_{a,L} for internal edges, theta_{a,K} for boundary edges.
  double angle = 0.0;
  bool ok = false;
};

struct MeshQualityReport {
  double min_angle = 0.0;
  double max_angle = 0.0;
  std::vector<EdgeAngleCheck> internal;  // strict Delaunay: angle < pi - guard
  std::vector<EdgeAngleCheck> boundary;  // angle < pi/2 - guard
  bool acute = false;
  bool admissible = false;

  std::vector<EdgeId> offending_edges() const;
};

MeshQualityReport quality_report(const Mesh& mesh);

/// Rhombus (0,0), (1,0), (3/2, sqrt3/2), (1/2, sqrt3/2) tiled by 2 n^2
/// equilateral triangles of side 1/n.
Mesh generate_rhombus_equilateral(int n);

/// Text mesh format `ptg-mesh 1`.
Mesh read_mesh(std::string_view text);
std::string write_mesh(const Mesh& mesh);
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

}  // namespace ptg
