#include "ptg/analysis.hpp"

#include <cmath>

namespace ptg {

namespace {

// Rhombus coordinates: xi = x - y/sqrt3, eta = 2y/sqrt3 map the rhombus onto the
// unit square.
constexpr double kInvSqrt3 = 0.57735026918962576451;

ManufacturedCase rhombus_sine() {
  ManufacturedCase c;
  c.id = "rhombus-sine";
  c.description = "u = sin(pi xi) sin(pi eta) on the equilateral rhombus";
  c.domain = generate_rhombus_equilateral;
  c.u = [](Point x) {
    const double xi = x.x - x.y * kInvSqrt3;
    const double eta = 2.0 * x.y * kInvSqrt3;
    return std::sin(kPi * xi) * std::sin(kPi * eta);
  };
  c.gradient = [](Point x) {
    const double xi = x.x - x.y * kInvSqrt3;
    const double eta = 2.0 * x.y * kInvSqrt3;
    const double u_xi = kPi * std::cos(kPi * xi) * std::sin(kPi * eta);
    const double u_eta = kPi * std::sin(kPi * xi) * std::cos(kPi * eta);
    return Vec2{u_xi, (-u_xi + 2.0 * u_eta) * kInvSqrt3};
  };
  // -Lap u = (4/3)(-u_xixi + u_xieta - u_etaeta) in rhombus coordinates.
  c.f = [](Point x) {
    const double xi = x.x - x.y * kInvSqrt3;
    const double eta = 2.0 * x.y * kInvSqrt3;
    return 4.0 * kPi * kPi / 3.0 *
           (2.0 * std::sin(kPi * xi) * std::sin(kPi * eta) +
            std::cos(kPi * xi) * std::cos(kPi * eta));
  };
  return c;
}

ManufacturedCase zero_case() {
  ManufacturedCase c;
  c.id = "zero";
  c.description = "u = 0, f = 0 on the equilateral rhombus";
  c.domain = generate_rhombus_equilateral;
  c.u = [](Point) { return 0.0; };
  c.gradient = [](Point) { return Vec2{}; };
  c.f = [](Point) { return 0.0; };
  return c;
}

double rate(double e0, double e1, double h0, double h1) {
  return std::log(e0 / e1) / std::log(h0 / h1);
}

}  // namespace

const std::vector<ManufacturedCase>& builtin_cases() {
  static const std::vector<ManufacturedCase> cases = {rhombus_sine(), zero_case()};
  return cases;
}

const ManufacturedCase& find_case(std::string_view id) {
  std::string known;
  for (const auto& c : builtin_cases()) {
    if (c.id == id) return c;
    known += (known.empty() ? "" : ", ") + c.id;
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown case '" + std::string(id) + "' (known: " + known + ")");
}

double ErrorNorms::combined() const noexcept { return u + std::sqrt(p * p + div * div); }

ErrorNorms error_norms(const Mesh& mesh, const Solution& solution, const ManufacturedCase& mcase,
                       const TriangleRule& rule) {
  const P0Field div_p = divergence(mesh, solution.p);
  double eu = 0.0;
  double ep = 0.0;
  double ediv = 0.0;
  for (CellId k = 0; k < mesh.num_cells(); ++k) {
    const auto& g = mesh.geometry(k);
    const double uk = solution.u[k];
    const double dk = div_p[k];
    eu += integrate_triangle(rule, g, [&](Point x) {
      const double d = mcase.u(x) - uk;
      return d * d;
    });
    ep += integrate_triangle(rule, g, [&](Point x) {
      return norm2(mcase.gradient(x) - eval_rt_field(mesh, solution.p, k, x));
    });
    ediv += integrate_triangle(rule, g, [&](Point x) {
      const double d = -mcase.f(x) - dk;
      return d * d;
    });
  }
  return {std::sqrt(eu), std::sqrt(ep), std::sqrt(ediv)};
}

ConvergenceReport convergence_study(const ManufacturedCase& mcase, const std::vector<int>& levels,
                                    const SolverOptions& options) {
  if (levels.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "convergence study needs at least two levels");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 1 || (i > 0 && levels[i] <= levels[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "levels must be positive and strictly increasing");
    }
  }

  ConvergenceReport r;
  r.case_id = mcase.id;
  for (int n : levels) {
    const Mesh mesh = mcase.domain(n);
    const DualCoefficients coeffs = cotan_coefficients(mesh);
    const P0Field f = interpolate_p0(mcase.f, mesh);
    const Solution s = solve(mesh, coeffs, f, DirichletData::homogeneous(mesh), options);
    ConvergenceLevel lvl;
    lvl.n = n;
    lvl.h = mesh.max_edge_length();
    lvl.errors = error_norms(mesh, s, mcase);
    lvl.iterations = s.iterations;
    lvl.residual = s.relative_residual;
    r.levels.push_back(lvl);
  }
  for (std::size_t i = 0; i + 1 < r.levels.size(); ++i) {
    const auto& a = r.levels[i];
    const auto& b = r.levels[i + 1];
    r.rate_u.push_back(rate(a.errors.u, b.errors.u, a.h, b.h));
    r.rate_p.push_back(rate(a.errors.p, b.errors.p, a.h, b.h));
    r.rate_div.push_back(rate(a.errors.div, b.errors.div, a.h, b.h));
    r.rate_combined.push_back(rate(a.errors.combined(), b.errors.combined(), a.h, b.h));
  }
  return r;
}

}  // namespace ptg
