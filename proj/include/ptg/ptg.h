/* C interface to the ptg library. All handles are opaque; functions report
 * failures through ptg_status and ptg_last_error_message(). Strings returned
 * through char** are owned by the caller and released with ptg_string_free. */
#ifndef PTG_PTG_H
#define PTG_PTG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PTG_BUILDING_LIBRARY)
#define PTG_API __declspec(dllexport)
#else
#define PTG_API __declspec(dllimport)
#endif
#else
#define PTG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ptg_mesh ptg_mesh;
typedef struct ptg_solution ptg_solution;

typedef enum ptg_status {
  PTG_OK = 0,
  PTG_ERR_INVALID_ARGUMENT = 1,
  PTG_ERR_IO = 2,
  PTG_ERR_PARSE = 3,
  PTG_ERR_NON_CONFORMING = 4,
  PTG_ERR_DEGENERATE = 5,
  PTG_ERR_INADMISSIBLE = 6,
  PTG_ERR_SINGULAR = 7,
  PTG_ERR_NOT_CONVERGED = 8,
  PTG_ERR_INTERNAL = 9
} ptg_status;

/* Message of the last failure on the calling thread; empty after success. */
PTG_API const char* ptg_last_error_message(void);
PTG_API const char* ptg_status_name(ptg_status status);
PTG_API void ptg_string_free(char* s);
PTG_API const char* ptg_version(void);

/* ---- meshes ---- */

/* xy holds 2*num_vertices coordinates, triangles 3*num_triangles vertex ids. */
PTG_API ptg_status ptg_mesh_create(const double* xy, size_t num_vertices, const size_t* triangles,
                                   size_t num_triangles, ptg_mesh** out);
PTG_API ptg_status ptg_mesh_generate_rhombus(int n, ptg_mesh** out);
PTG_API ptg_status ptg_mesh_read(const char* path, ptg_mesh** out);
PTG_API ptg_status ptg_mesh_parse(const char* text, ptg_mesh** out);
PTG_API ptg_status ptg_mesh_write(const ptg_mesh* mesh, const char* path);
PTG_API ptg_status ptg_mesh_to_text(const ptg_mesh* mesh, char** out);
PTG_API void ptg_mesh_destroy(ptg_mesh* mesh);

PTG_API ptg_status ptg_mesh_counts(const ptg_mesh* mesh, size_t* vertices, size_t* cells,
                                   size_t* edges);
/* Longest edge length. */
PTG_API ptg_status ptg_mesh_h(const ptg_mesh* mesh, double* h);
/* Strict Delaunay on internal edges and acute angles at boundary edges. */
PTG_API ptg_status ptg_mesh_is_admissible(const ptg_mesh* mesh, int* admissible);
PTG_API ptg_status ptg_mesh_quality_json(const ptg_mesh* mesh, char** json);

/* ---- manufactured cases ---- */

PTG_API size_t ptg_case_count(void);
/* NULL when index is out of range. */
PTG_API const char* ptg_case_name(size_t index);

/* ---- solving ---- */

/* max_iter <= 0 selects the default iteration cap. */
PTG_API ptg_status ptg_solve_case(const ptg_mesh* mesh, const char* case_id, double tol,
                                  int max_iter, ptg_solution** out);
/* -Lap u = value with u = 0 on the boundary. */
PTG_API ptg_status ptg_solve_constant(const ptg_mesh* mesh, double value, double tol, int max_iter,
                                      ptg_solution** out);
PTG_API void ptg_solution_destroy(ptg_solution* solution);

/* Views stay valid until the solution is destroyed. */
PTG_API ptg_status ptg_solution_cell_values(const ptg_solution* solution, const double** values,
                                            size_t* count);
PTG_API ptg_status ptg_solution_fluxes(const ptg_solution* solution, const double** values,
                                       size_t* count);
PTG_API ptg_status ptg_solution_stats(const ptg_solution* solution, int* iterations,
                                      double* relative_residual);
/* max_K ||K| f_K + |K| (div p)_K| against 10 * tol * ||b||. */
PTG_API ptg_status ptg_solution_balance(const ptg_solution* solution, double* max_residual,
                                        double* bound, int* ok);
/* has_errors is 0 for constant right-hand sides, which carry no exact solution. */
PTG_API ptg_status ptg_solution_errors(const ptg_solution* solution, double* eu, double* ep,
                                       double* ediv, int* has_errors);
PTG_API ptg_status ptg_solution_csv(const ptg_solution* solution, char** csv);
PTG_API ptg_status ptg_solution_json(const ptg_solution* solution, char** json);

/* ---- studies and verification ---- */

/* Rates refer to the two finest levels. */
PTG_API ptg_status ptg_convergence_study(const char* case_id, const int* levels, size_t num_levels,
                                         double tol, char** csv, double* rate_combined,
                                         double* rate_p);
/* Lemma suite over `samples` random triangles; with a mesh, also the stability
 * check over `trials` random fields. */
PTG_API ptg_status ptg_verify(size_t samples, uint64_t seed, const ptg_mesh* mesh, size_t trials,
                              char** json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
