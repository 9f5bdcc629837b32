#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ptg/dual.hpp"
#include "ptg/mesh.hpp"

using namespace ptg;

namespace {

const double kSqrt3 = std::sqrt(3.0);

Mesh unit_square_split() {
  return Mesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
}

}  // namespace

TEST_CASE("equilateral triangle geometry") {
  const auto g = TriangleGeometry::from_vertices({0, 0}, {1, 0}, {0.5, kSqrt3 / 2});
  CHECK(g.area == doctest::Approx(kSqrt3 / 4).epsilon(1e-15));
  for (int i = 0; i < 3; ++i) {
    CHECK(g.angles[i] == doctest::Approx(kPi / 3).epsilon(1e-14));
    CHECK(g.edge_lengths[i] == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(g.gyration_radius2 / g.area == doctest::Approx(1.0 / (3.0 * std::tan(kPi / 3))).epsilon(1e-14));
  CHECK(norm(g.circumcenter - g.centroid) < 1e-15);
}

TEST_CASE("clockwise input is reoriented") {
  const auto g = TriangleGeometry::from_vertices({0, 0}, {0, 1}, {1, 0});
  CHECK(orient2(g.vertices[0], g.vertices[1], g.vertices[2]) > 0);
  CHECK(g.area == doctest::Approx(0.5));
}

TEST_CASE("right triangle circumcenter is the hypotenuse midpoint") {
  const auto g = TriangleGeometry::from_vertices({0, 0}, {2, 0}, {0, 1});
  CHECK(norm(g.circumcenter - Point{1, 0.5}) < 1e-15);
  CHECK(g.max_angle() == doctest::Approx(kPi / 2));
}

TEST_CASE("outward normals and edge endpoints") {
  const auto g = TriangleGeometry::from_vertices({0.1, 0.2}, {1.3, 0.1}, {0.4, 0.9});
  for (int i = 0; i < 3; ++i) {
    const auto ends = g.edge_endpoints(i);
    const Vec2 n = g.outward_normal(i);
    CHECK(norm(n) == doctest::Approx(1.0));
    CHECK(std::abs(dot(n, ends[1] - ends[0])) < 1e-14);
    CHECK(dot(n, ends[0] - g.vertices[i]) > 0);
  }
}

TEST_CASE("degenerate triangles are rejected") {
  CHECK_THROWS_AS(TriangleGeometry::from_vertices({0, 0}, {1, 1}, {2, 2}), Error);
  try {
    TriangleGeometry::from_vertices({0, 0}, {1, 0}, {2, 0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateTriangle);
  }
}

TEST_CASE("rhombus counts") {
  for (int n : {1, 2, 3, 8, 16}) {
    const Mesh m = generate_rhombus_equilateral(n);
    CHECK(m.num_cells() == std::size_t(2 * n * n));
    CHECK(m.num_vertices() == std::size_t((n + 1) * (n + 1)));
    CHECK(m.boundary_edges().size() == std::size_t(4 * n));
    // Euler characteristic of a disc.
    CHECK(long(m.num_vertices()) - long(m.num_edges()) + long(m.num_cells()) == 1);
    CHECK(m.max_edge_length() == doctest::Approx(1.0 / n).epsilon(1e-14));
  }
  const Mesh m2 = generate_rhombus_equilateral(2);
  CHECK(m2.num_edges() == 16);
  CHECK(m2.internal_edges().size() == 8);
  CHECK_THROWS_AS(generate_rhombus_equilateral(0), Error);
}

TEST_CASE("edge orientation and coboundary") {
  const Mesh m = generate_rhombus_equilateral(3);
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    const Edge& a = m.edge(e);
    const Point s = m.vertices()[a.south];
    const Point n = m.vertices()[a.north];
    CHECK(cross(a.normal, n - s) > 0);
    CHECK(norm(n - s) == doctest::Approx(a.length));
    const Point gk = m.geometry(a.cell_k).centroid;
    if (a.is_boundary()) {
      CHECK(dot(a.normal, s - gk) > 0);
    } else {
      CHECK(a.cell_k < a.cell_l);
      CHECK(dot(a.normal, m.geometry(a.cell_l).centroid - gk) > 0);
    }
  }
  // Each internal edge appears once with +1 and once with -1.
  std::vector<int> sign_sum(m.num_edges(), 0);
  std::vector<int> uses(m.num_edges(), 0);
  for (CellId k = 0; k < m.num_cells(); ++k) {
    const CellEdges& ce = m.cell_edges(k);
    for (int i = 0; i < 3; ++i) {
      sign_sum[ce.edges[i]] += ce.signs[i];
      ++uses[ce.edges[i]];
      const Edge& a = m.edge(ce.edges[i]);
      CHECK(ce.signs[i] == (a.cell_k == k ? 1 : -1));
    }
  }
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    if (m.edge(e).is_boundary()) {
      CHECK(uses[e] == 1);
      CHECK(sign_sum[e] == 1);
    } else {
      CHECK(uses[e] == 2);
      CHECK(sign_sum[e] == 0);
    }
  }
}

TEST_CASE("opposite angles") {
  const Mesh m = unit_square_split();
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    const Edge& a = m.edge(e);
    const Point w = m.vertices()[a.west];
    const Vec2 u = m.vertices()[a.south] - w;
    const Vec2 v = m.vertices()[a.north] - w;
    CHECK(m.opposite_angle(e, 0) == doctest::Approx(std::atan2(std::abs(cross(u, v)), dot(u, v))));
  }
}

TEST_CASE("build rejects malformed connectivity") {
  const std::vector<Point> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.8, 0.2}};
  auto kind = [&](std::vector<std::array<VertexId, 3>> t) {
    try {
      Mesh::build(v, std::move(t));
    } catch (const Error& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind({{0, 1, 9}}) == int(ErrorKind::InvalidArgument));
  CHECK(kind({{0, 1, 1}}) == int(ErrorKind::DegenerateTriangle));
  CHECK(kind({{0, 1, 2}, {2, 1, 0}}) == int(ErrorKind::NonConformingMesh));
  // Three triangles sharing edge (0, 2).
  CHECK(kind({{0, 1, 2}, {0, 2, 3}, {0, 4, 2}}) == int(ErrorKind::NonConformingMesh));
  // Two triangles on the same side of edge (0, 1).
  CHECK(kind({{0, 1, 2}, {0, 1, 4}}) == int(ErrorKind::NonConformingMesh));
  CHECK_THROWS_AS(Mesh::build({{0, 0}, {1, 0}}, {}), Error);
}

TEST_CASE("quality report") {
  SUBCASE("equilateral rhombus is admissible and acute") {
    const auto q = quality_report(generate_rhombus_equilateral(4));
    CHECK(q.admissible);
    CHECK(q.acute);
    CHECK(q.min_angle == doctest::Approx(kPi / 3));
    CHECK(q.max_angle == doctest::Approx(kPi / 3));
    CHECK(q.offending_edges().empty());
  }
  SUBCASE("cocircular split square fails on the diagonal") {
    const Mesh m = unit_square_split();
    const auto q = quality_report(m);
    CHECK_FALSE(q.admissible);
    const auto bad = q.offending_edges();
    REQUIRE(bad.size() == 1);
    CHECK_FALSE(m.edge(bad[0]).is_boundary());
    CHECK(q.internal[0].angle == doctest::Approx(kPi));
  }
  SUBCASE("obtuse angle opposite a boundary edge") {
    const Mesh m = Mesh::build({{0, 0}, {1, 0}, {0.5, 0.1}}, {{0, 1, 2}});
    const auto q = quality_report(m);
    CHECK_FALSE(q.admissible);
    CHECK(q.offending_edges().size() == 1);
  }
  SUBCASE("perturbed split square with a short diagonal passes") {
    const Mesh m = Mesh::build({{0, 0}, {1, 0}, {1.1, 1.1}, {0, 1}}, {{0, 1, 3}, {1, 2, 3}});
    CHECK(quality_report(m).internal.at(0).ok);
  }
}

TEST_CASE("relabeling and rigid motion leave transmissibilities unchanged") {
  const Mesh base = generate_rhombus_equilateral(3);
  auto sorted_coeffs = [](const Mesh& m) {
    auto c = cotan_coefficients(m).values;
    std::sort(c.begin(), c.end());
    return c;
  };
  const auto ref = sorted_coeffs(base);

  std::mt19937_64 rng(7);
  std::vector<VertexId> perm(base.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const double c = std::cos(0.7), s = std::sin(0.7);
  std::vector<Point> v(base.num_vertices());
  for (VertexId i = 0; i < base.num_vertices(); ++i) {
    const Point p = base.vertices()[i];
    v[perm[i]] = Point{c * p.x - s * p.y + 3.0, s * p.x + c * p.y - 1.0};
  }
  std::vector<std::array<VertexId, 3>> t;
  for (const auto& tri : base.triangles()) t.push_back({perm[tri[1]], perm[tri[2]], perm[tri[0]]});
  std::reverse(t.begin(), t.end());
  const Mesh moved = Mesh::build(v, t);
  const auto got = sorted_coeffs(moved);
  REQUIRE(got.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  CHECK(moved.max_edge_length() == doctest::Approx(base.max_edge_length()));
}
