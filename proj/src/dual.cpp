#include "ptg/dual.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "ptg/error.hpp"

namespace ptg {

DualCoefficients cotan_coefficients(const Mesh& mesh) {
  DualCoefficients c;
  c.values.resize(mesh.num_edges());
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    double v = 0.5 / std::tan(mesh.opposite_angle(e, 0));
    if (!mesh.edge(e).is_boundary()) v += 0.5 / std::tan(mesh.opposite_angle(e, 1));
    c.values[e] = v;
    if (v <= kCoefficientFloor) c.nonpositive_edges.push_back(e);
  }
  return c;
}

double g_profile(double s) noexcept { return 30.0 * s * (s - 1.0) * (21.0 * s * s - 21.0 * s + 4.0); }

GMoments g_moments(const IntervalRule& rule) {
  if (rule.degree() < 6) {
    throw Error(ErrorKind::InvalidArgument, "g moments need an interval rule of degree >= 6");
  }
  GMoments m;
  m.m0 = integrate_interval(rule, [](double s) { return g_profile(s); });
  m.m1 = integrate_interval(rule, [](double s) { return g_profile(s) * s; });
  m.m2 = integrate_interval(rule, [](double s) { return g_profile(s) * s * s; });
  return m;
}

double DeltaK::operator()(const TriangleGeometry& geometry, Point x) const noexcept {
  double v = coefficients[0];
  for (int i = 0; i < 3; ++i) v += coefficients[i + 1] * norm2(x - geometry.vertices[i]);
  return v;
}

DeltaK solve_delta_k(const TriangleGeometry& geometry, const TriangleRule& rule) {
  if (rule.degree() < 4) {
    throw Error(ErrorKind::InvalidArgument, "delta_K needs a triangle rule of degree >= 4");
  }
  // Quadratic basis functions are scaled by the mean squared edge length so the
  // Gram matrix stays well balanced at any mesh size.
  const auto& len = geometry.edge_lengths;
  const double scale = (len[0] * len[0] + len[1] * len[1] + len[2] * len[2]) / 3.0;
  const auto basis = [&](int j, Point x) {
    return j == 0 ? 1.0 : norm2(x - geometry.vertices[j - 1]) / scale;
  };

  Eigen::Matrix4d gram = Eigen::Matrix4d::Zero();
  for (std::size_t q = 0; q < rule.weights().size(); ++q) {
    const Point x = geometry.from_barycentric(rule.nodes()[q]);
    const double w = rule.weights()[q] * geometry.area;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) gram(i, j) += w * basis(i, x) * basis(j, x);
    }
  }
  const Eigen::Vector4d rhs(1.0, 0.0, 0.0, 0.0);
  const Eigen::PartialPivLU<Eigen::Matrix4d> lu(gram);
  const Eigen::Vector4d c = lu.solve(rhs);
  if (!c.allFinite() || (gram * c - rhs).norm() > 1e-8) {
    throw Error(ErrorKind::SingularSystem, "delta_K Gram system is singular");
  }

  DeltaK d;
  d.coefficients = {c(0), c(1) / scale, c(2) / scale, c(3) / scale};
  d.mass = integrate_triangle(rule, geometry, [&](Point x) { return d(geometry, x); });
  for (int i = 0; i < 3; ++i) {
    d.moments[i] = integrate_triangle(rule, geometry, [&](Point x) {
      return d(geometry, x) * norm2(x - geometry.vertices[i]);
    });
  }
  d.energy = geometry.area * integrate_triangle(rule, geometry, [&](Point x) {
               const double v = d(geometry, x);
               return v * v;
             });
  return d;
}

double symmetric_sum(const std::array<double, 3>& lengths, int n, int m, int p) {
  std::array<int, 3> e = {n, m, p};
  std::sort(e.begin(), e.end());
  double s = 0.0;
  // next_permutation over the sorted triple visits each distinct exponent
  // assignment exactly once.
  do {
    s += std::pow(lengths[0], e[0]) * std::pow(lengths[1], e[1]) * std::pow(lengths[2], e[2]);
  } while (std::next_permutation(e.begin(), e.end()));
  return s;
}

DeltaEnergyTerms delta_energy_terms(const TriangleGeometry& geometry) {
  const double h = geometry.max_edge_length();
  const std::array<double, 3> a = {geometry.edge_lengths[0] / h, geometry.edge_lengths[1] / h,
                                   geometry.edge_lengths[2] / h};
  const double area = geometry.area / (h * h);
  const auto sigma = [&](int p) {
    return std::pow(a[0], p) + std::pow(a[1], p) + std::pow(a[2], p);
  };
  const auto S = [&](int n, int m, int p) { return symmetric_sum(a, n, m, p); };
  const double w = a[0] * a[1] * a[2];

  DeltaEnergyTerms t;
  t.sigma2 = sigma(2);
  t.D = 1.75 * sigma(4) - 0.5 * S(2, 2, 0);
  t.N = 9.0 * sigma(12) - 15.0 * S(10, 2, 0) + 15.0 * S(8, 4, 0) - 33.0 * S(8, 2, 2) -
        18.0 * S(6, 6, 0) + 48.0 * S(6, 4, 2) + 558.0 * std::pow(w, 4);
  t.energy = t.N / (128.0 * std::pow(area, 4) * t.D);
  return t;
}

double delta_energy_closed_form(const TriangleGeometry& geometry) {
  return delta_energy_terms(geometry).energy;
}

double nu_bound(double theta_star) {
  if (!(theta_star > 0.0 && theta_star < kPi / 2)) {
    throw Error(ErrorKind::InvalidArgument, "nu_bound needs 0 < theta < pi/2");
  }
  return 8.0 * 243.0 * 23.0 / 5.0 / std::pow(std::tan(theta_star), 4);
}

}  // namespace ptg
