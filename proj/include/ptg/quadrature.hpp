#pragma once

#include <array>
#include <vector>

#include "ptg/mesh.hpp"

namespace ptg {

/// Symmetric rule on a triangle in barycentric coordinates; weights sum to 1.
class TriangleRule {
 public:
  /// Validates weights and monomial exactness up to `degree`; throws on failure.
  TriangleRule(std::vector<std::array<double, 3>> nodes, std::vector<double> weights, int degree);

  /// Edge-midpoint rule, degree 2.
  static const TriangleRule& midpoint();
  /// 12-point Dunavant rule, degree 6.
  static const TriangleRule& dunavant6();

  const std::vector<std::array<double, 3>>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  int degree() const noexcept { return degree_; }

 private:
  std::vector<std::array<double, 3>> nodes_;
  std::vector<double> weights_;
  int degree_;
};

/// Rule on (0, 1); weights sum to 1.
class IntervalRule {
 public:
  IntervalRule(std::vector<double> nodes, std::vector<double> weights, int degree);

  /// 4-point Gauss-Legendre, degree 7.
  static const IntervalRule& gauss4();

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  int degree() const noexcept { return degree_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int degree_;
};

/// Sum of w_q |K| f(x_q).
template <class F>
auto integrate_triangle(const TriangleRule& rule, const TriangleGeometry& geometry, F&& f) {
  using R = decltype(f(Point{}));
  R sum{};
  for (std::size_t q = 0; q < rule.weights().size(); ++q) {
    sum += rule.weights()[q] * f(geometry.from_barycentric(rule.nodes()[q]));
  }
  return geometry.area * sum;
}

template <class F>
double integrate_interval(const IntervalRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.weights().size(); ++q) {
    sum += rule.weights()[q] * f(rule.nodes()[q]);
  }
  return sum;
}

/// Line integral over the segment [a, b]; f receives the point a + s (b - a).
template <class F>
auto integrate_segment(const IntervalRule& rule, Point a, Point b, F&& f) {
  using R = decltype(f(Point{}));
  R sum{};
  for (std::size_t q = 0; q < rule.weights().size(); ++q) {
    sum += rule.weights()[q] * f(a + rule.nodes()[q] * (b - a));
  }
  return norm(b - a) * sum;
}

}  // namespace ptg
