#include "ptg/spaces.hpp"

#include <cmath>

#include "ptg/error.hpp"

namespace ptg {

std::array<double, 3> local_fluxes(const Mesh& mesh, const RTField& p, CellId k) {
  const CellEdges& ce = mesh.cell_edges(k);
  return {ce.signs[0] * p[ce.edges[0]], ce.signs[1] * p[ce.edges[1]],
          ce.signs[2] * p[ce.edges[2]]};
}

Vec2 eval_local_basis(const TriangleGeometry& geometry, int i, Point x) {
  return (x - geometry.vertices[i]) / (2.0 * geometry.area);
}

Vec2 eval_rt_field(const Mesh& mesh, const RTField& p, CellId k, Point x) {
  const auto& g = mesh.geometry(k);
  const auto pk = local_fluxes(mesh, p, k);
  Vec2 v{};
  for (int i = 0; i < 3; ++i) v += pk[i] * eval_local_basis(g, i, x);
  return v;
}

P0Field divergence(const Mesh& mesh, const RTField& p) {
  if (p.size() != mesh.num_edges()) {
    throw Error(ErrorKind::InvalidArgument, "RT field size does not match the mesh");
  }
  P0Field d = P0Field::zeros(mesh);
  for (CellId k = 0; k < mesh.num_cells(); ++k) {
    const auto pk = local_fluxes(mesh, p, k);
    d[k] = (pk[0] + pk[1] + pk[2]) / mesh.geometry(k).area;
  }
  return d;
}

P0Field interpolate_p0(const std::function<double(Point)>& f, const Mesh& mesh,
                       const TriangleRule& rule) {
  P0Field u = P0Field::zeros(mesh);
  for (CellId k = 0; k < mesh.num_cells(); ++k) {
    const auto& g = mesh.geometry(k);
    u[k] = integrate_triangle(rule, g, f) / g.area;
  }
  return u;
}

RTField interpolate_rt(const std::function<Vec2(Point)>& v, const Mesh& mesh,
                       const IntervalRule& rule) {
  RTField p = RTField::zeros(mesh);
  const auto verts = mesh.vertices();
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    const Edge& ed = mesh.edge(e);
    p[e] = integrate_segment(rule, verts[ed.south], verts[ed.north],
                             [&](Point x) { return dot(v(x), ed.normal); });
  }
  return p;
}

double LocalGram::trace() const noexcept { return entries[0][0] + entries[1][1] + entries[2][2]; }

double LocalGram::determinant() const noexcept {
  const auto& m = entries;
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double LocalGram::minor_sum() const noexcept {
  double r = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    r += entries[i][i] * entries[j][j] - entries[i][j] * entries[i][j];
  }
  return r;
}

double LocalGram::quadratic_form(const std::array<double, 3>& p) const noexcept {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s += p[i] * entries[i][j] * p[j];
  }
  return s;
}

LocalGram local_gram_closed_form(const TriangleGeometry& geometry) {
  const double r = geometry.gyration_radius2 / geometry.area;
  std::array<double, 3> cot{};
  for (int i = 0; i < 3; ++i) cot[i] = 1.0 / std::tan(geometry.angles[i]);

  LocalGram g;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        g.entries[i][i] = cot[i] / 6.0 + 0.75 * r;
      } else {
        const int k = 3 - i - j;
        g.entries[i][j] = -0.75 * r + cot[k] / 6.0;
      }
    }
  }
  return g;
}

LocalGram local_gram_quadrature(const TriangleGeometry& geometry, const TriangleRule& rule) {
  if (rule.degree() < 2) {
    throw Error(ErrorKind::InvalidArgument, "Gram quadrature needs a rule of degree >= 2");
  }
  LocalGram g;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double v = integrate_triangle(rule, geometry, [&](Point x) {
        return dot(eval_local_basis(geometry, i, x), eval_local_basis(geometry, j, x));
      });
      g.entries[i][j] = v;
      g.entries[j][i] = v;
    }
  }
  return g;
}

double rt_norm2(const Mesh& mesh, const RTField& p) {
  double s = 0.0;
  for (CellId k = 0; k < mesh.num_cells(); ++k) {
    s += local_gram_closed_form(mesh.geometry(k)).quadratic_form(local_fluxes(mesh, p, k));
  }
  return s;
}

}  // namespace ptg
