#include "ptg/ptg.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptg/analysis.hpp"
#include "ptg/dual.hpp"
#include "ptg/mesh.hpp"
#include "ptg/solver.hpp"

struct ptg_mesh {
  ptg::Mesh mesh;
};

struct ptg_solution {
  std::string source;
  ptg::Solution solution;
  double tol = 0.0;
  ptg::BalanceReport balance;
  double balance_bound = 0.0;
  std::optional<ptg::ErrorNorms> errors;
};

namespace {

using Json = nlohmann::ordered_json;

thread_local std::string g_last_error;

ptg_status status_of(ptg::ErrorKind kind) {
  switch (kind) {
    case ptg::ErrorKind::InvalidArgument: return PTG_ERR_INVALID_ARGUMENT;
    case ptg::ErrorKind::Io: return PTG_ERR_IO;
    case ptg::ErrorKind::Parse: return PTG_ERR_PARSE;
    case ptg::ErrorKind::NonConformingMesh: return PTG_ERR_NON_CONFORMING;
    case ptg::ErrorKind::DegenerateTriangle: return PTG_ERR_DEGENERATE;
    case ptg::ErrorKind::InadmissibleMesh: return PTG_ERR_INADMISSIBLE;
    case ptg::ErrorKind::SingularSystem: return PTG_ERR_SINGULAR;
    case ptg::ErrorKind::NotConverged: return PTG_ERR_NOT_CONVERGED;
  }
  return PTG_ERR_INTERNAL;
}

ptg_status fail(ptg_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
ptg_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const ptg::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PTG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PTG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PTG_ERR_INTERNAL, "unknown error");
  }
}

ptg_status null_arg(const char* name) {
  return fail(PTG_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

ptg_status emit_mesh(ptg::Mesh mesh, ptg_mesh** out) {
  *out = new ptg_mesh{std::move(mesh)};
  return PTG_OK;
}

double norm2_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::unique_ptr<ptg_solution> run_solve(const ptg::Mesh& mesh, const ptg::P0Field& f, double tol,
                                        int max_iter) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw ptg::Error(ptg::ErrorKind::InvalidArgument, "tolerance must be positive");
  }
  const ptg::MeshQualityReport q = ptg::quality_report(mesh);
  if (!q.admissible) {
    std::string ids;
    for (auto e : q.offending_edges()) ids += (ids.empty() ? "" : ", ") + std::to_string(e);
    throw ptg::Error(ptg::ErrorKind::InadmissibleMesh, "mesh is not admissible (edges: " + ids + ")");
  }
  const ptg::DualCoefficients coeffs = ptg::cotan_coefficients(mesh);
  const auto bc = ptg::DirichletData::homogeneous(mesh);
  const ptg::SparseSystem system = ptg::assemble(mesh, coeffs, f, bc);
  auto s = std::make_unique<ptg_solution>();
  s->tol = tol;
  s->solution = ptg::solve(mesh, coeffs, f, bc, {tol, max_iter > 0 ? max_iter : 0});
  s->balance = ptg::flux_balance_check(mesh, s->solution, f);
  s->balance_bound = 10.0 * tol * norm2_of(system.rhs);
  return s;
}

Json parsed(const std::string& text) { return Json::parse(text); }

}  // namespace

extern "C" {

const char* ptg_last_error_message(void) { return g_last_error.c_str(); }

const char* ptg_status_name(ptg_status status) {
  switch (status) {
    case PTG_OK: return "ok";
    case PTG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PTG_ERR_IO: return "i/o error";
    case PTG_ERR_PARSE: return "parse error";
    case PTG_ERR_NON_CONFORMING: return "non-conforming mesh";
    case PTG_ERR_DEGENERATE: return "degenerate triangle";
    case PTG_ERR_INADMISSIBLE: return "inadmissible mesh";
    case PTG_ERR_SINGULAR: return "singular system";
    case PTG_ERR_NOT_CONVERGED: return "not converged";
    case PTG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ptg_string_free(char* s) { std::free(s); }

const char* ptg_version(void) { return "0.1.0"; }

ptg_status ptg_mesh_create(const double* xy, size_t num_vertices, const size_t* triangles,
                           size_t num_triangles, ptg_mesh** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    *out = nullptr;
    if (!xy || !triangles) return null_arg("xy/triangles");
    std::vector<ptg::Point> v(num_vertices);
    for (size_t i = 0; i < num_vertices; ++i) v[i] = {xy[2 * i], xy[2 * i + 1]};
    std::vector<std::array<ptg::VertexId, 3>> t(num_triangles);
    for (size_t i = 0; i < num_triangles; ++i)
      t[i] = {triangles[3 * i], triangles[3 * i + 1], triangles[3 * i + 2]};
    return emit_mesh(ptg::Mesh::build(std::move(v), std::move(t)), out);
  });
}

ptg_status ptg_mesh_generate_rhombus(int n, ptg_mesh** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    *out = nullptr;
    return emit_mesh(ptg::generate_rhombus_equilateral(n), out);
  });
}

ptg_status ptg_mesh_read(const char* path, ptg_mesh** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    *out = nullptr;
    if (!path) return null_arg("path");
    return emit_mesh(ptg::load_mesh(path), out);
  });
}

ptg_status ptg_mesh_parse(const char* text, ptg_mesh** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    *out = nullptr;
    if (!text) return null_arg("text");
    return emit_mesh(ptg::read_mesh(text), out);
  });
}

ptg_status ptg_mesh_write(const ptg_mesh* mesh, const char* path) {
  return guarded([&] {
    if (!mesh || !path) return null_arg("mesh/path");
    ptg::save_mesh(mesh->mesh, path);
    return PTG_OK;
  });
}

ptg_status ptg_mesh_to_text(const ptg_mesh* mesh, char** out) {
  return guarded([&] {
    if (!mesh || !out) return null_arg("mesh/out");
    *out = dup_string(ptg::write_mesh(mesh->mesh));
    return PTG_OK;
  });
}

void ptg_mesh_destroy(ptg_mesh* mesh) { delete mesh; }

ptg_status ptg_mesh_counts(const ptg_mesh* mesh, size_t* vertices, size_t* cells, size_t* edges) {
  return guarded([&] {
    if (!mesh) return null_arg("mesh");
    if (vertices) *vertices = mesh->mesh.num_vertices();
    if (cells) *cells = mesh->mesh.num_cells();
    if (edges) *edges = mesh->mesh.num_edges();
    return PTG_OK;
  });
}

ptg_status ptg_mesh_h(const ptg_mesh* mesh, double* h) {
  return guarded([&] {
    if (!mesh || !h) return null_arg("mesh/h");
    *h = mesh->mesh.max_edge_length();
    return PTG_OK;
  });
}

ptg_status ptg_mesh_is_admissible(const ptg_mesh* mesh, int* admissible) {
  return guarded([&] {
    if (!mesh || !admissible) return null_arg("mesh/admissible");
    *admissible = ptg::quality_report(mesh->mesh).admissible ? 1 : 0;
    return PTG_OK;
  });
}

ptg_status ptg_mesh_quality_json(const ptg_mesh* mesh, char** json) {
  return guarded([&] {
    if (!mesh || !json) return null_arg("mesh/json");
    *json = dup_string(ptg::quality_report_json(mesh->mesh));
    return PTG_OK;
  });
}

size_t ptg_case_count(void) { return ptg::builtin_cases().size(); }

const char* ptg_case_name(size_t index) {
  const auto& cases = ptg::builtin_cases();
  return index < cases.size() ? cases[index].id.c_str() : nullptr;
}

ptg_status ptg_solve_case(const ptg_mesh* mesh, const char* case_id, double tol, int max_iter,
                          ptg_solution** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    *out = nullptr;
    if (!mesh || !case_id) return null_arg("mesh/case_id");
    const ptg::ManufacturedCase& mc = ptg::find_case(case_id);
    const ptg::P0Field f = ptg::interpolate_p0(mc.f, mesh->mesh);
    auto s = run_solve(mesh->mesh, f, tol, max_iter);
    s->source = mc.id;
    s->errors = ptg::error_norms(mesh->mesh, s->solution, mc);
    *out = s.release();
    return PTG_OK;
  });
}

ptg_status ptg_solve_constant(const ptg_mesh* mesh, double value, double tol, int max_iter,
                              ptg_solution** out) {
  return guarded([&] {
    if (!out) return null_arg("out");
    *out = nullptr;
    if (!mesh) return null_arg("mesh");
    if (!std::isfinite(value)) return fail(PTG_ERR_INVALID_ARGUMENT, "right-hand side must be finite");
    ptg::P0Field f{std::vector<double>(mesh->mesh.num_cells(), value)};
    auto s = run_solve(mesh->mesh, f, tol, max_iter);
    s->source = "constant";
    *out = s.release();
    return PTG_OK;
  });
}

void ptg_solution_destroy(ptg_solution* solution) { delete solution; }

ptg_status ptg_solution_cell_values(const ptg_solution* s, const double** values, size_t* count) {
  return guarded([&] {
    if (!s || !values || !count) return null_arg("solution/values/count");
    *values = s->solution.u.values.data();
    *count = s->solution.u.values.size();
    return PTG_OK;
  });
}

ptg_status ptg_solution_fluxes(const ptg_solution* s, const double** values, size_t* count) {
  return guarded([&] {
    if (!s || !values || !count) return null_arg("solution/values/count");
    *values = s->solution.p.fluxes.data();
    *count = s->solution.p.fluxes.size();
    return PTG_OK;
  });
}

ptg_status ptg_solution_stats(const ptg_solution* s, int* iterations, double* relative_residual) {
  return guarded([&] {
    if (!s) return null_arg("solution");
    if (iterations) *iterations = s->solution.iterations;
    if (relative_residual) *relative_residual = s->solution.relative_residual;
    return PTG_OK;
  });
}

ptg_status ptg_solution_balance(const ptg_solution* s, double* max_residual, double* bound, int* ok) {
  return guarded([&] {
    if (!s) return null_arg("solution");
    if (max_residual) *max_residual = s->balance.max_residual;
    if (bound) *bound = s->balance_bound;
    if (ok) *ok = s->balance.max_residual <= s->balance_bound ? 1 : 0;
    return PTG_OK;
  });
}

ptg_status ptg_solution_errors(const ptg_solution* s, double* eu, double* ep, double* ediv,
                               int* has_errors) {
  return guarded([&] {
    if (!s) return null_arg("solution");
    const ptg::ErrorNorms e = s->errors.value_or(ptg::ErrorNorms{});
    if (eu) *eu = e.u;
    if (ep) *ep = e.p;
    if (ediv) *ediv = e.div;
    if (has_errors) *has_errors = s->errors ? 1 : 0;
    return PTG_OK;
  });
}

ptg_status ptg_solution_csv(const ptg_solution* s, char** csv) {
  return guarded([&] {
    if (!s || !csv) return null_arg("solution/csv");
    *csv = dup_string(ptg::solution_csv(s->solution));
    return PTG_OK;
  });
}

ptg_status ptg_solution_json(const ptg_solution* s, char** json) {
  return guarded([&] {
    if (!s || !json) return null_arg("solution/json");
    Json j;
    j["source"] = s->source;
    j["tol"] = s->tol;
    j["iterations"] = s->solution.iterations;
    j["relative_residual"] = s->solution.relative_residual;
    j["balance"] = {{"max_residual", s->balance.max_residual},
                    {"bound", s->balance_bound},
                    {"global_imbalance", s->balance.global_imbalance},
                    {"passed", s->balance.max_residual <= s->balance_bound}};
    if (s->errors) {
      j["errors"] = {{"eu", s->errors->u},
                     {"ep", s->errors->p},
                     {"ediv", s->errors->div},
                     {"combined", s->errors->combined()}};
    } else {
      j["errors"] = nullptr;
    }
    j["u"] = s->solution.u.values;
    j["p"] = s->solution.p.fluxes;
    *json = dup_string(j.dump(2) + "\n");
    return PTG_OK;
  });
}

ptg_status ptg_convergence_study(const char* case_id, const int* levels, size_t num_levels,
                                 double tol, char** csv, double* rate_combined, double* rate_p) {
  return guarded([&] {
    if (!case_id || (!levels && num_levels > 0)) return null_arg("case_id/levels");
    if (!(tol > 0.0)) return fail(PTG_ERR_INVALID_ARGUMENT, "tolerance must be positive");
    const auto& mc = ptg::find_case(case_id);
    const std::vector<int> lv(levels, levels + num_levels);
    const ptg::ConvergenceReport r = ptg::convergence_study(mc, lv, {tol, 0});
    if (csv) *csv = dup_string(ptg::convergence_csv(r));
    if (rate_combined) *rate_combined = r.rate_combined.back();
    if (rate_p) *rate_p = r.rate_p.back();
    return PTG_OK;
  });
}

ptg_status ptg_verify(size_t samples, uint64_t seed, const ptg_mesh* mesh, size_t trials, char** json,
                      int* all_passed) {
  return guarded([&] {
    ptg::LemmaSuiteOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    const ptg::LemmaSuiteReport lemmas = ptg::lemma_suite(opts);
    bool passed = lemmas.passed();
    Json j;
    j["seed"] = seed;
    j["samples"] = samples;
    j["lemmas"] = parsed(ptg::lemma_report_json(lemmas));
    if (mesh) {
      const ptg::StabilityReport st = ptg::stability_check(mesh->mesh, trials, seed);
      passed = passed && st.passed();
      j["stability"] = parsed(ptg::stability_report_json(st));
    } else {
      j["stability"] = nullptr;
    }
    j["passed"] = passed;
    if (json) *json = dup_string(j.dump(2) + "\n");
    if (all_passed) *all_passed = passed ? 1 : 0;
    return PTG_OK;
  });
}

}  // extern "C"
