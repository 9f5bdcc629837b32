#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ptg/spaces.hpp"
#include "support.hpp"

using namespace ptg;
using ptg::test::jittered_rhombus;

namespace {

const double kSqrt3 = std::sqrt(3.0);

TriangleGeometry scalene() { return TriangleGeometry::from_vertices({0.1, 0.2}, {1.3, 0.1}, {0.4, 0.9}); }

}  // namespace

TEST_CASE("local basis fluxes are biorthogonal to the edges") {
  const auto g = scalene();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto ends = g.edge_endpoints(j);
      const Vec2 n = g.outward_normal(j);
      const double flux = integrate_segment(IntervalRule::gauss4(), ends[0], ends[1],
                                            [&](Point x) { return dot(eval_local_basis(g, i, x), n); });
      CHECK(flux == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("interpolation reproduces RT0 fields") {
  const Mesh m = jittered_rhombus(4, 0.02, 3);
  const auto field = [](Point x) { return Vec2{0.3 + 0.5 * x.x, -1.2 + 0.5 * x.y}; };
  const RTField p = interpolate_rt(field, m);
  for (CellId k = 0; k < m.num_cells(); ++k) {
    const Point x = m.geometry(k).from_barycentric({0.2, 0.5, 0.3});
    CHECK(norm(eval_rt_field(m, p, k, x) - field(x)) < 1e-13);
  }
  const P0Field div = divergence(m, p);
  for (double d : div.values) CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normal component is continuous across internal edges") {
  const Mesh m = jittered_rhombus(3, 0.03, 5);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  RTField p = RTField::zeros(m);
  for (auto& v : p.fluxes) v = d(rng);
  for (EdgeId e : m.internal_edges()) {
    const Edge& a = m.edge(e);
    const Point x = m.vertices()[a.south] * 0.3 + m.vertices()[a.north] * 0.7;
    const double nk = dot(eval_rt_field(m, p, a.cell_k, x), a.normal);
    const double nl = dot(eval_rt_field(m, p, a.cell_l, x), a.normal);
    CHECK(nk == doctest::Approx(nl).epsilon(1e-12));
    CHECK(nk == doctest::Approx(p[e] / a.length).epsilon(1e-12));
  }
}

TEST_CASE("divergence follows the cell orientation signs") {
  const Mesh m = generate_rhombus_equilateral(1);
  RTField p = RTField::zeros(m);
  const EdgeId shared = m.internal_edges()[0];
  p[shared] = 1.0;
  const P0Field d = divergence(m, p);
  const Edge& a = m.edge(shared);
  CHECK(d[a.cell_k] == doctest::Approx(1.0 / m.geometry(a.cell_k).area));
  CHECK(d[a.cell_l] == doctest::Approx(-1.0 / m.geometry(a.cell_l).area));
  CHECK_THROWS_AS(divergence(m, RTField{{1.0}}), Error);
}

TEST_CASE("P0 interpolation takes cell means") {
  const Mesh m = generate_rhombus_equilateral(2);
  const P0Field u = interpolate_p0([](Point x) { return 2.0 * x.x - x.y + 1.0; }, m);
  for (CellId k = 0; k < m.num_cells(); ++k) {
    const Point c = m.geometry(k).centroid;
    CHECK(u[k] == doctest::Approx(2.0 * c.x - c.y + 1.0).epsilon(1e-14));
  }
}

TEST_CASE("local gram matrix") {
  SUBCASE("closed form matches quadrature") {
    const auto g = scalene();
    const LocalGram a = local_gram_closed_form(g);
    const LocalGram b = local_gram_quadrature(g, TriangleRule::dunavant6());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(1e-12));
        CHECK(a(i, j) == a(j, i));
      }
  }
  SUBCASE("equilateral eigenvalues") {
    const auto g = TriangleGeometry::from_vertices({0, 0}, {1, 0}, {0.5, kSqrt3 / 2});
    const LocalGram a = local_gram_closed_form(g);
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = a(i, j);
    const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues();
    CHECK(ev(0) == doctest::Approx(1.0 / (4.0 * kSqrt3)).epsilon(1e-14));
    CHECK(ev(1) == doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-14));
    CHECK(ev(2) == doctest::Approx(1.0 / (2.0 * kSqrt3)).epsilon(1e-14));
  }
  SUBCASE("invariants") {
    const auto g = scalene();
    const LocalGram a = local_gram_closed_form(g);
    const double s = g.gyration_radius2 / g.area;
    CHECK(a.trace() == doctest::Approx(15.0 * s / 4.0).epsilon(1e-13));
    CHECK(a.determinant() == doctest::Approx(s / 16.0).epsilon(1e-12));
    CHECK(a.minor_sum() == doctest::Approx(1.0 / 12 + 9.0 / 4 * s * s).epsilon(1e-13));
  }
  SUBCASE("similarity invariance") {
    const auto g = scalene();
    const auto h = TriangleGeometry::from_vertices(g.vertices[0] * 7.5, g.vertices[1] * 7.5, g.vertices[2] * 7.5);
    const LocalGram a = local_gram_closed_form(g);
    const LocalGram b = local_gram_closed_form(h);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(a(i, j) == doctest::Approx(b(i, j)).epsilon(1e-13));
  }
  SUBCASE("low-degree rules are refused") {
    const TriangleRule centroid({{1.0 / 3, 1.0 / 3, 1.0 / 3}}, {1.0}, 1);
    CHECK_THROWS_AS(local_gram_quadrature(scalene(), centroid), Error);
  }
}

TEST_CASE("rt_norm2 equals the integral of |p|^2") {
  const Mesh m = jittered_rhombus(3, 0.03, 9);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> d;
  RTField p = RTField::zeros(m);
  for (auto& v : p.fluxes) v = d(rng);
  double direct = 0.0;
  for (CellId k = 0; k < m.num_cells(); ++k)
    direct += integrate_triangle(TriangleRule::dunavant6(), m.geometry(k),
                                 [&](Point x) { return norm2(eval_rt_field(m, p, k, x)); });
  CHECK(rt_norm2(m, p) == doctest::Approx(direct).epsilon(1e-12));
}
