#include "ptg/quadrature.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ptg/error.hpp"

namespace ptg {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

constexpr double kExactnessTol = 1e-13;

}  // namespace

TriangleRule::TriangleRule(std::vector<std::array<double, 3>> nodes, std::vector<double> weights,
                           int degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), degree_(degree) {
  if (nodes_.size() != weights_.size() || nodes_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "triangle rule: node/weight size mismatch");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-14) {
    throw Error(ErrorKind::InvalidArgument, "triangle rule: weights do not sum to 1");
  }
  // Reference triangle (0,0), (1,0), (0,1): mean of x^a y^b is 2 a! b! / (a+b+2)!.
  for (int a = 0; a <= degree_; ++a) {
    for (int b = 0; a + b <= degree_; ++b) {
      double q = 0.0;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        q += weights_[i] * std::pow(nodes_[i][1], a) * std::pow(nodes_[i][2], b);
      }
      const double exact = 2.0 * factorial(a) * factorial(b) / factorial(a + b + 2);
      if (std::abs(q - exact) > kExactnessTol) {
        throw Error(ErrorKind::InvalidArgument,
                    "triangle rule fails exactness for x^" + std::to_string(a) + " y^" +
                        std::to_string(b));
      }
    }
  }
}

const TriangleRule& TriangleRule::midpoint() {
  static const TriangleRule rule({{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}},
                                 {1.0 / 3, 1.0 / 3, 1.0 / 3}, 2);
  return rule;
}

const TriangleRule& TriangleRule::dunavant6() {
  static const TriangleRule rule = [] {
    constexpr double a = 0.24928674517091042129163855310702;
    constexpr double wa = 0.11678627572637936602528961138558;
    constexpr double b = 0.063089014491502228340331602870819;
    constexpr double wb = 0.050844906370206816920936809106869;
    constexpr double c1 = 0.053145049844816947353249671631398;
    constexpr double c2 = 0.31035245103378440541660773395655;
    constexpr double c3 = 1.0 - c1 - c2;
    constexpr double wc = 0.082851075618373575193553456420442;
    std::vector<std::array<double, 3>> nodes = {
        {1 - 2 * a, a, a}, {a, 1 - 2 * a, a}, {a, a, 1 - 2 * a},
        {1 - 2 * b, b, b}, {b, 1 - 2 * b, b}, {b, b, 1 - 2 * b},
        {c1, c2, c3},      {c1, c3, c2},      {c2, c1, c3},
        {c2, c3, c1},      {c3, c1, c2},      {c3, c2, c1},
    };
    std::vector<double> weights = {wa, wa, wa, wb, wb, wb, wc, wc, wc, wc, wc, wc};
    return TriangleRule(std::move(nodes), std::move(weights), 6);
  }();
  return rule;
}

IntervalRule::IntervalRule(std::vector<double> nodes, std::vector<double> weights, int degree)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), degree_(degree) {
  if (nodes_.size() != weights_.size() || nodes_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "interval rule: node/weight size mismatch");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-14) {
    throw Error(ErrorKind::InvalidArgument, "interval rule: weights do not sum to 1");
  }
  for (int k = 0; k <= degree_; ++k) {
    double q = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) q += weights_[i] * std::pow(nodes_[i], k);
    if (std::abs(q - 1.0 / (k + 1)) > kExactnessTol) {
      throw Error(ErrorKind::InvalidArgument,
                  "interval rule fails exactness for s^" + std::to_string(k));
    }
  }
}

const IntervalRule& IntervalRule::gauss4() {
  static const IntervalRule rule = [] {
    constexpr double x1 = 0.33998104358485626480266575910324;
    constexpr double x2 = 0.86113631159405257522394648889281;
    constexpr double w1 = 0.65214515486254614262693605077800;
    constexpr double w2 = 0.34785484513745385737306394922200;
    return IntervalRule({0.5 * (1 - x2), 0.5 * (1 - x1), 0.5 * (1 + x1), 0.5 * (1 + x2)},
                        {0.5 * w2, 0.5 * w1, 0.5 * w1, 0.5 * w2}, 7);
  }();
  return rule;
}

}  // namespace ptg
