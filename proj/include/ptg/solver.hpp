#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ptg/dual.hpp"
#include "ptg/error.hpp"
#include "ptg/mesh.hpp"
#include "ptg/spaces.hpp"

namespace ptg {

/// Compressed-row sparse matrix with sorted column indices per row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> cols;
  std::vector<double> vals;

  void multiply(std::span<const double> x, std::span<double> y) const;
  /// Entry (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;
  bool is_symmetric(double tol = 0.0) const;
  std::vector<double> diagonal() const;
};

/// Cell-centered system A u = b, rows indexed by triangle.
struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
};

/// Boundary trace means, one per entry of `Mesh::boundary_edges()`.
struct DirichletData {
  std::vector<double> values;

  static DirichletData homogeneous(const Mesh& mesh);
  /// Edge means of `u` on each boundary edge.
  static DirichletData from_function(const Mesh& mesh, const std::function<double(Point)>& u,
                                     const IntervalRule& rule = IntervalRule::gauss4());
};

struct SolverOptions {
  double tol = 1e-12;
  /// 0 selects 10 * rows + 100.
  int max_iter = 0;
};

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> history;
};

class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, std::vector<double> history)
      : Error(ErrorKind::NotConverged, what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

/// Jacobi-preconditioned conjugate gradient with serial, fixed-order reductions.
/// Stops on the true relative residual ||b - A x|| / ||b|| <= tol.
CgResult conjugate_gradient(const SparseSystem& system, const SolverOptions& options = {});

struct Solution {
  P0Field u;
  RTField p;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Internal a = (K|L): p_a = (u_L - u_K) / c_a; boundary: p_a = (ubar_a - u_K) / c_a.
RTField discrete_gradient(const Mesh& mesh, const DualCoefficients& coeffs, const P0Field& u,
                          const DirichletData& bc);

/// Row K: sum over edges of (u_K - u_neighbour) / c_a = |K| f_K + sum_boundary ubar_a / c_a.
SparseSystem assemble(const Mesh& mesh, const DualCoefficients& coeffs, const P0Field& f,
                      const DirichletData& bc);

/// assemble + conjugate_gradient + discrete_gradient.
Solution solve(const Mesh& mesh, const DualCoefficients& coeffs, const P0Field& f,
               const DirichletData& bc, const SolverOptions& options = {});

struct BalanceReport {
  /// |K| (f_K + (div p)_K) per cell.
  std::vector<double> residuals;
  double max_residual = 0.0;
  /// sum_K |K| f_K + sum_{boundary a} p_a.
  double global_imbalance = 0.0;
};

BalanceReport flux_balance_check(const Mesh& mesh, const Solution& solution, const P0Field& f);

}  // namespace ptg
