#pragma once

#include <array>
#include <vector>

#include "ptg/mesh.hpp"
#include "ptg/quadrature.hpp"

namespace ptg {

/// Coefficients below this are treated as non-positive.
inline constexpr double kCoefficientFloor = 1e-12;

/// Per-edge pairing c_a = (phi_a, phi*_a) of the RT basis with its dual.
struct DualCoefficients {
  std::vector<double> values;
  /// Edges with c_a <= kCoefficientFloor; the scheme loses uniqueness there.
  std::vector<EdgeId> nonpositive_edges;

  bool all_positive() const noexcept { return nonpositive_edges.empty(); }
  double operator[](EdgeId e) const { return values[e]; }
  std::size_t size() const noexcept { return values.size(); }
};

/// Internal edges: (cot theta_{a,K} + cot theta_{a,L}) / 2; boundary edges: cot theta_{a,K} / 2.
DualCoefficients cotan_coefficients(const Mesh& mesh);

/// Boundary flux profile g(s) = 30 s (s - 1)(21 s^2 - 21 s + 4).
double g_profile(double s) noexcept;

struct GMoments {
  double m0 = 0.0;  // int g
  double m1 = 0.0;  // int g s
  double m2 = 0.0;  // int g s^2
};

GMoments g_moments(const IntervalRule& rule = IntervalRule::gauss4());

/// Minimum-L2 divergence profile on one triangle, in the basis
/// {1, |x - W_1|^2, |x - W_2|^2, |x - W_3|^2}.
struct DeltaK {
  std::array<double, 4> coefficients{};
  /// I = |K| int_K delta^2 (dimensionless).
  double energy = 0.0;
  /// int_K delta; 1 by construction.
  double mass = 0.0;
  /// int_K delta |x - W_i|^2; 0 by construction.
  std::array<double, 3> moments{};

  double operator()(const TriangleGeometry& geometry, Point x) const noexcept;
};

DeltaK solve_delta_k(const TriangleGeometry& geometry,
                     const TriangleRule& rule = TriangleRule::dunavant6());

/// Symmetric-polynomial form of the energy I = N / (128 |K|^4 D).
struct DeltaEnergyTerms {
  double sigma2 = 0.0;
  double D = 0.0;
  double N = 0.0;
  double energy = 0.0;
};

/// Sum of the distinct monomials a_1^e1 a_2^e2 a_3^e3 over the permutations
/// (e1, e2, e3) of (n, m, p). Sigma_{2,2,0} has three terms, Sigma_{4,2,0} six,
/// Sigma_{1,1,1} = a_1 a_2 a_3.
double symmetric_sum(const std::array<double, 3>& lengths, int n, int m, int p);

/// Terms computed from edge lengths normalized by the longest edge, so D, N
/// and sigma2 are those of the rescaled triangle; the energy is scale-free.
DeltaEnergyTerms delta_energy_terms(const TriangleGeometry& geometry);
double delta_energy_closed_form(const TriangleGeometry& geometry);

/// nu = (8 * 3^5 * 23 / 5) / tan^4(theta_star), for 0 < theta_star < pi/2.
double nu_bound(double theta_star);

}  // namespace ptg
