#pragma once

#include <random>
#include <vector>

#include "ptg/mesh.hpp"

namespace ptg::test {

/// Rhombus mesh with every vertex moved by up to `amount` in each coordinate.
inline Mesh jittered_rhombus(int n, double amount, unsigned seed) {
  const Mesh base = generate_rhombus_equilateral(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-amount, amount);
  std::vector<Point> v(base.vertices().begin(), base.vertices().end());
  for (auto& p : v) p += Vec2{d(rng), d(rng)};
  return Mesh::build(v, {base.triangles().begin(), base.triangles().end()});
}

/// Distance from the circumcenter of cell k to edge e, positive on the inner side.
inline double circumcenter_distance(const Mesh& m, EdgeId e, CellId k) {
  const Edge& a = m.edge(e);
  const Point mid = (m.vertices()[a.south] + m.vertices()[a.north]) * 0.5;
  const Vec2 out = a.cell_k == k ? a.normal : -a.normal;
  return dot(mid - m.geometry(k).circumcenter, out);
}

}  // namespace ptg::test
