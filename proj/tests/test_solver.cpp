#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ptg/dual.hpp"
#include "ptg/solver.hpp"
#include "support.hpp"

using namespace ptg;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Tridiagonal SPD matrix (2, -1) of size n.
SparseSystem laplace_1d(std::size_t n, double rhs) {
  SparseSystem s;
  s.matrix.rows = n;
  s.matrix.row_ptr.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) { s.matrix.cols.push_back(i - 1); s.matrix.vals.push_back(-1.0); }
    s.matrix.cols.push_back(i);
    s.matrix.vals.push_back(2.0);
    if (i + 1 < n) { s.matrix.cols.push_back(i + 1); s.matrix.vals.push_back(-1.0); }
    s.matrix.row_ptr.push_back(s.matrix.cols.size());
  }
  s.rhs.assign(n, rhs);
  return s;
}

P0Field constant(const Mesh& m, double v) { return {std::vector<double>(m.num_cells(), v)}; }

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("csr matrix basics") {
  const SparseSystem s = laplace_1d(4, 1.0);
  CHECK(s.matrix.is_symmetric());
  CHECK(s.matrix.at(1, 2) == -1.0);
  CHECK(s.matrix.at(0, 3) == 0.0);
  CHECK(s.matrix.diagonal() == std::vector<double>(4, 2.0));
  std::vector<double> y(4);
  s.matrix.multiply(std::vector<double>{1, 1, 1, 1}, y);
  CHECK(y == std::vector<double>{1, 0, 0, 1});
}

TEST_CASE("conjugate gradient") {
  SUBCASE("solves a tridiagonal system") {
    const SparseSystem s = laplace_1d(50, 1.0);
    const CgResult r = conjugate_gradient(s, {1e-13, 0});
    CHECK(r.relative_residual <= 1e-13);
    CHECK(r.iterations <= 50);
    // Exact solution of the discrete problem: x_i = (i+1)(n-i)/2.
    for (std::size_t i = 0; i < 50; ++i) CHECK(r.x[i] == doctest::Approx((i + 1) * (50.0 - i) / 2.0).epsilon(1e-10));
  }
  SUBCASE("zero right-hand side returns zero without iterating") {
    const CgResult r = conjugate_gradient(laplace_1d(10, 0.0));
    CHECK(r.iterations == 0);
    CHECK(std::all_of(r.x.begin(), r.x.end(), [](double v) { return v == 0.0; }));
  }
  SUBCASE("iteration cap raises with the residual history") {
    try {
      conjugate_gradient(laplace_1d(200, 1.0), {1e-14, 3});
      FAIL("expected NotConvergedError");
    } catch (const NotConvergedError& e) {
      CHECK(e.kind() == ErrorKind::NotConverged);
      CHECK(e.history().size() >= 3);
    }
  }
}

TEST_CASE("two-cell rhombus with unit source") {
  const Mesh m = generate_rhombus_equilateral(1);
  const DualCoefficients c = cotan_coefficients(m);
  const Solution s = solve(m, c, constant(m, 1.0), DirichletData::homogeneous(m));
  CHECK(s.u[0] == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(s.u[1] == doctest::Approx(0.0625).epsilon(1e-14));
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    const double expected = m.edge(e).is_boundary() ? -kSqrt3 / 8.0 : 0.0;
    CHECK(std::abs(s.p[e] - expected) < 1e-14);
  }
}

TEST_CASE("assembled matrix") {
  const Mesh m = test::jittered_rhombus(5, 0.02, 4);
  const DualCoefficients c = cotan_coefficients(m);
  const SparseSystem sys = assemble(m, c, constant(m, 1.0), DirichletData::homogeneous(m));
  CHECK(sys.matrix.is_symmetric());
  for (EdgeId e : m.internal_edges()) {
    const Edge& a = m.edge(e);
    const double dist = test::circumcenter_distance(m, e, a.cell_k) + test::circumcenter_distance(m, e, a.cell_l);
    CHECK(std::abs(sys.matrix.at(a.cell_k, a.cell_l) + a.length / dist) <= 1e-11 * a.length / dist);
  }
  for (CellId k = 0; k < m.num_cells(); ++k) {
    CHECK(sys.rhs[k] == doctest::Approx(m.geometry(k).area).epsilon(1e-15));
    double off = 0.0;
    for (std::size_t q = sys.matrix.row_ptr[k]; q < sys.matrix.row_ptr[k + 1]; ++q)
      if (sys.matrix.cols[q] != k) off += std::abs(sys.matrix.vals[q]);
    CHECK(sys.matrix.at(k, k) >= off * (1.0 - 1e-13));
  }
}

TEST_CASE("scheme equivalence on a solved mesh") {
  const Mesh m = test::jittered_rhombus(8, 0.01, 12);
  const DualCoefficients c = cotan_coefficients(m);
  const P0Field f = interpolate_p0([](Point x) { return 1.0 + x.x * x.y; }, m);
  const auto bc = DirichletData::homogeneous(m);
  const SolverOptions opt{1e-12, 0};
  const Solution s = solve(m, c, f, bc, opt);
  const RTField g = discrete_gradient(m, c, s.u, bc);
  CHECK(g.fluxes == s.p.fluxes);
  const BalanceReport b = flux_balance_check(m, s, f);
  CHECK(b.max_residual <= 10.0 * opt.tol * norm2(assemble(m, c, f, bc).rhs));
  CHECK(std::abs(b.global_imbalance) < 1e-12);
}

TEST_CASE("affine data is reproduced at circumcenters") {
  const Mesh m = test::jittered_rhombus(6, 0.015, 8);
  const Vec2 grad{0.7, -1.9};
  const auto u = [&](Point x) { return 2.5 + dot(grad, x); };
  const DualCoefficients c = cotan_coefficients(m);
  const auto bc = DirichletData::from_function(m, u);
  const Solution s = solve(m, c, P0Field::zeros(m), bc, {1e-14, 0});
  for (CellId k = 0; k < m.num_cells(); ++k) CHECK(s.u[k] == doctest::Approx(u(m.geometry(k).circumcenter)).epsilon(1e-11));
  for (EdgeId e = 0; e < m.num_edges(); ++e)
    CHECK(s.p[e] == doctest::Approx(dot(grad, m.edge(e).normal) * m.edge(e).length).epsilon(1e-10).scale(1.0));
}

TEST_CASE("harmonic boundary data converges") {
  // u = x^2 - y^2 is harmonic; errors at circumcenters shrink with h.
  const auto u = [](Point x) { return x.x * x.x - x.y * x.y; };
  double prev = 0.0;
  for (int n : {4, 8, 16}) {
    const Mesh m = generate_rhombus_equilateral(n);
    const Solution s = solve(m, cotan_coefficients(m), P0Field::zeros(m), DirichletData::from_function(m, u));
    double err = 0.0;
    for (CellId k = 0; k < m.num_cells(); ++k) err = std::max(err, std::abs(s.u[k] - u(m.geometry(k).centroid)));
    if (prev > 0.0) CHECK(err < 0.6 * prev);
    prev = err;
  }
}

TEST_CASE("properties of the discrete operator") {
  const Mesh m = test::jittered_rhombus(6, 0.02, 30);
  const DualCoefficients c = cotan_coefficients(m);
  const auto bc = DirichletData::homogeneous(m);
  SUBCASE("zero source gives zero") {
    const Solution s = solve(m, c, P0Field::zeros(m), bc);
    CHECK(*std::max_element(s.u.values.begin(), s.u.values.end(), [](double a, double b) { return std::abs(a) < std::abs(b); }) == 0.0);
  }
  SUBCASE("maximum principle and linearity") {
    const P0Field f = interpolate_p0([](Point x) { return 1.0 + std::sin(5 * x.x); }, m);
    const Solution s1 = solve(m, c, f, bc, {1e-13, 0});
    P0Field f2 = f;
    for (double& v : f2.values) v *= 2.0;
    const Solution s2 = solve(m, c, f2, bc, {1e-13, 0});
    for (CellId k = 0; k < m.num_cells(); ++k) {
      CHECK(s1.u[k] > 0.0);
      CHECK(s2.u[k] == doctest::Approx(2.0 * s1.u[k]).epsilon(1e-10));
    }
  }
}

TEST_CASE("inadmissible meshes are refused") {
  const Mesh m = Mesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
  const DualCoefficients c = cotan_coefficients(m);
  try {
    assemble(m, c, P0Field::zeros(m), DirichletData::homogeneous(m));
    FAIL("expected InadmissibleMesh");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InadmissibleMesh);
  }
  const Mesh ok = generate_rhombus_equilateral(2);
  CHECK_THROWS_AS(solve(ok, cotan_coefficients(ok), P0Field::zeros(ok), DirichletData{{1.0}}), Error);
}
