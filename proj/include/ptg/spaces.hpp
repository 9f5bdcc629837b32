#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ptg/mesh.hpp"
#include "ptg/quadrature.hpp"

namespace ptg {

/// Piecewise-constant scalar field: one value per triangle.
struct P0Field {
  std::vector<double> values;

  static P0Field zeros(const Mesh& mesh) { return {std::vector<double>(mesh.num_cells(), 0.0)}; }
  std::size_t size() const noexcept { return values.size(); }
  double& operator[](CellId k) { return values[k]; }
  double operator[](CellId k) const { return values[k]; }
};

/// Lowest-order Raviart-Thomas field: one flux per edge, measured against the
/// canonical edge normal.
struct RTField {
  std::vector<double> fluxes;

  static RTField zeros(const Mesh& mesh) { return {std::vector<double>(mesh.num_edges(), 0.0)}; }
  std::size_t size() const noexcept { return fluxes.size(); }
  double& operator[](EdgeId e) { return fluxes[e]; }
  double operator[](EdgeId e) const { return fluxes[e]; }
};

/// Local fluxes p_{K,i} = eps_i p_{a_i} of triangle k.
std::array<double, 3> local_fluxes(const Mesh& mesh, const RTField& p, CellId k);

/// Local basis function (x - W_i) / (2|K|).
Vec2 eval_local_basis(const TriangleGeometry& geometry, int i, Point x);

Vec2 eval_rt_field(const Mesh& mesh, const RTField& p, CellId k, Point x);

/// (div p)_K = (1/|K|) sum_i p_{K,i}.
P0Field divergence(const Mesh& mesh, const RTField& p);

/// Cell means (1/|K|) int_K f.
P0Field interpolate_p0(const std::function<double(Point)>& f, const Mesh& mesh,
                       const TriangleRule& rule = TriangleRule::dunavant6());

/// Edge fluxes int_a v . n_a ds.
RTField interpolate_rt(const std::function<Vec2(Point)>& v, const Mesh& mesh,
                       const IntervalRule& rule = IntervalRule::gauss4());

/// Local RT mass matrix [(phi_i, phi_j)_K].
struct LocalGram {
  std::array<std::array<double, 3>, 3> entries{};

  double operator()(int i, int j) const { return entries[i][j]; }
  double trace() const noexcept;
  double determinant() const noexcept;
  /// Sum of the three principal 2x2 minors.
  double minor_sum() const noexcept;
  /// p^T G p.
  double quadratic_form(const std::array<double, 3>& p) const noexcept;
};

LocalGram local_gram_closed_form(const TriangleGeometry& geometry);
LocalGram local_gram_quadrature(const TriangleGeometry& geometry,
                                const TriangleRule& rule = TriangleRule::midpoint());

/// ||p||_0^2 summed over cells from the closed-form local Gram matrices.
double rt_norm2(const Mesh& mesh, const RTField& p);

}  // namespace ptg
