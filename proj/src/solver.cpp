#include "ptg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ptg {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<std::size_t> boundary_positions(const Mesh& mesh) {
  std::vector<std::size_t> pos(mesh.num_edges(), kNone);
  const auto b = mesh.boundary_edges();
  for (std::size_t i = 0; i < b.size(); ++i) pos[b[i]] = i;
  return pos;
}

void check_bc(const Mesh& mesh, const DirichletData& bc) {
  if (bc.values.size() != mesh.boundary_edges().size()) {
    throw Error(ErrorKind::InvalidArgument, "Dirichlet data size does not match boundary edges");
  }
}

std::string edge_list(const std::vector<EdgeId>& edges) {
  std::string s;
  for (std::size_t i = 0; i < edges.size() && i < 10; ++i) {
    if (i) s += ", ";
    s += std::to_string(edges[i]);
  }
  if (edges.size() > 10) s += ", ...";
  return s;
}

}  // namespace

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += vals[k] * x[cols[k]];
    y[i] = s;
  }
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  return (it != last && *it == j) ? vals[static_cast<std::size_t>(it - cols.begin())] : 0.0;
}

bool CsrMatrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (std::abs(vals[k] - at(cols[k], i)) > tol) return false;
    }
  }
  return true;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows);
  for (std::size_t i = 0; i < rows; ++i) d[i] = at(i, i);
  return d;
}

DirichletData DirichletData::homogeneous(const Mesh& mesh) {
  return {std::vector<double>(mesh.boundary_edges().size(), 0.0)};
}

DirichletData DirichletData::from_function(const Mesh& mesh,
                                           const std::function<double(Point)>& u,
                                           const IntervalRule& rule) {
  DirichletData bc;
  const auto verts = mesh.vertices();
  for (EdgeId e : mesh.boundary_edges()) {
    const Edge& ed = mesh.edge(e);
    bc.values.push_back(integrate_segment(rule, verts[ed.south], verts[ed.north], u) / ed.length);
  }
  return bc;
}

CgResult conjugate_gradient(const SparseSystem& system, const SolverOptions& options) {
  const CsrMatrix& a = system.matrix;
  const std::size_t n = a.rows;
  const std::vector<double>& b = system.rhs;
  if (b.size() != n) throw Error(ErrorKind::InvalidArgument, "rhs size does not match matrix");
  const int max_iter = options.max_iter > 0 ? options.max_iter : static_cast<int>(10 * n + 100);

  CgResult res;
  res.x.assign(n, 0.0);
  const double bnorm = norm(b);
  if (bnorm == 0.0) return res;

  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw Error(ErrorKind::InvalidArgument, "matrix diagonal is not positive");
    d = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  const auto true_residual = [&] {
    a.multiply(res.x, q);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
    return norm(r) / bnorm;
  };

  double rel = true_residual();
  res.history.push_back(rel);
  // The outer loop restarts from the current iterate when the recurrence
  // residual has drifted away from the true one.
  while (rel > options.tol && res.iterations < max_iter) {
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);
    while (res.iterations < max_iter) {
      a.multiply(p, q);
      const double alpha = rz / dot(p, q);
      for (std::size_t i = 0; i < n; ++i) {
        res.x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
      }
      ++res.iterations;
      const double rec = norm(r) / bnorm;
      res.history.push_back(rec);
      if (rec <= options.tol) break;
      for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
      const double rz_new = dot(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rel = true_residual();
  }
  res.relative_residual = rel;
  if (rel > options.tol) {
    throw NotConvergedError("conjugate gradient did not reach tolerance in " +
                                std::to_string(res.iterations) + " iterations (residual " +
                                std::to_string(rel) + ")",
                            res.history);
  }
  return res;
}

RTField discrete_gradient(const Mesh& mesh, const DualCoefficients& coeffs, const P0Field& u,
                          const DirichletData& bc) {
  check_bc(mesh, bc);
  if (u.size() != mesh.num_cells() || coeffs.size() != mesh.num_edges()) {
    throw Error(ErrorKind::InvalidArgument, "field sizes do not match the mesh");
  }
  const auto bpos = boundary_positions(mesh);
  RTField p = RTField::zeros(mesh);
  for (EdgeId e = 0; e < mesh.num_edges(); ++e) {
    const double c = coeffs[e];
    if (std::abs(c) <= kCoefficientFloor) {
      throw Error(ErrorKind::InadmissibleMesh,
                  "zero transmissibility coefficient on edge " + std::to_string(e));
    }
    const Edge& ed = mesh.edge(e);
    const double outer = ed.is_boundary() ? bc.values[bpos[e]] : u[ed.cell_l];
    p[e] = (outer - u[ed.cell_k]) / c;
  }
  return p;
}

SparseSystem assemble(const Mesh& mesh, const DualCoefficients& coeffs, const P0Field& f,
                      const DirichletData& bc) {
  check_bc(mesh, bc);
  if (f.size() != mesh.num_cells() || coeffs.size() != mesh.num_edges()) {
    throw Error(ErrorKind::InvalidArgument, "field sizes do not match the mesh");
  }
  if (!coeffs.all_positive()) {
    throw Error(ErrorKind::InadmissibleMesh,
                "non-positive transmissibility on edge(s) " + edge_list(coeffs.nonpositive_edges));
  }
  const auto bpos = boundary_positions(mesh);
  const std::size_t n = mesh.num_cells();

  SparseSystem sys;
  CsrMatrix& a = sys.matrix;
  a.rows = n;
  a.row_ptr.assign(n + 1, 0);
  sys.rhs.assign(n, 0.0);

  std::vector<std::pair<std::size_t, double>> row;
  for (CellId k = 0; k < n; ++k) {
    row.clear();
    double diag = 0.0;
    sys.rhs[k] = mesh.geometry(k).area * f[k];
    for (EdgeId e : mesh.cell_edges(k).edges) {
      const Edge& ed = mesh.edge(e);
      const double t = 1.0 / coeffs[e];
      diag += t;
      if (ed.is_boundary()) {
        sys.rhs[k] += bc.values[bpos[e]] * t;
      } else {
        row.emplace_back(ed.cell_k == k ? ed.cell_l : ed.cell_k, -t);
      }
    }
    row.emplace_back(k, diag);
    std::sort(row.begin(), row.end());
    for (const auto& [j, v] : row) {
      a.cols.push_back(j);
      a.vals.push_back(v);
    }
    a.row_ptr[k + 1] = a.cols.size();
  }
  return sys;
}

Solution solve(const Mesh& mesh, const DualCoefficients& coeffs, const P0Field& f,
               const DirichletData& bc, const SolverOptions& options) {
  const SparseSystem sys = assemble(mesh, coeffs, f, bc);
  CgResult cg = conjugate_gradient(sys, options);
  Solution s;
  s.u.values = std::move(cg.x);
  s.p = discrete_gradient(mesh, coeffs, s.u, bc);
  s.iterations = cg.iterations;
  s.relative_residual = cg.relative_residual;
  return s;
}

BalanceReport flux_balance_check(const Mesh& mesh, const Solution& solution, const P0Field& f) {
  BalanceReport r;
  const P0Field div = divergence(mesh, solution.p);
  r.residuals.resize(mesh.num_cells());
  for (CellId k = 0; k < mesh.num_cells(); ++k) {
    const double area = mesh.geometry(k).area;
    r.residuals[k] = area * (f[k] + div[k]);
    r.max_residual = std::max(r.max_residual, std::abs(r.residuals[k]));
    r.global_imbalance += area * f[k];
  }
  for (EdgeId e : mesh.boundary_edges()) r.global_imbalance += solution.p[e];
  return r;
}

}  // namespace ptg
