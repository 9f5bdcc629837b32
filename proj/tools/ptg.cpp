// ptg command-line front end. Exit codes: 0 success, 1 usage, 2 I/O or parse,
// 3 inadmissible mesh, 4 verification failure.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptg/ptg.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kInadmissible = 3, kFailed = 4 };

int exit_for(ptg_status s) {
  switch (s) {
    case PTG_OK: return kOk;
    case PTG_ERR_INVALID_ARGUMENT: return kUsage;
    case PTG_ERR_IO:
    case PTG_ERR_PARSE:
    case PTG_ERR_NON_CONFORMING:
    case PTG_ERR_DEGENERATE: return kIo;
    case PTG_ERR_INADMISSIBLE: return kInadmissible;
    case PTG_ERR_SINGULAR:
    case PTG_ERR_NOT_CONVERGED: return kFailed;
    default: return kUsage;
  }
}

int report(ptg_status s) {
  std::fprintf(stderr, "ptg: %s: %s\n", ptg_status_name(s), ptg_last_error_message());
  return exit_for(s);
}

struct MeshDeleter {
  void operator()(ptg_mesh* m) const { ptg_mesh_destroy(m); }
};
struct SolutionDeleter {
  void operator()(ptg_solution* s) const { ptg_solution_destroy(s); }
};
struct StringDeleter {
  void operator()(char* s) const { ptg_string_free(s); }
};
using MeshPtr = std::unique_ptr<ptg_mesh, MeshDeleter>;
using SolutionPtr = std::unique_ptr<ptg_solution, SolutionDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  out.flush();
  return static_cast<bool>(out);
}

std::string known_cases() {
  std::string s;
  for (size_t i = 0; i < ptg_case_count(); ++i) s += (i ? ", " : "") + std::string(ptg_case_name(i));
  return s;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += static_cast<char>(c);
    } else if (c < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out + "\"";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PTG_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::fprintf(stderr, "ptg: ignoring invalid PTG_SEED '%s'\n", env);
    }
  }
  return 42;
}

int cmd_generate(const std::string& domain, int n, const std::string& out) {
  if (domain != "rhombus") {
    std::fprintf(stderr, "ptg: unknown domain '%s' (known: rhombus)\n", domain.c_str());
    return kUsage;
  }
  ptg_mesh* raw = nullptr;
  if (auto s = ptg_mesh_generate_rhombus(n, &raw); s != PTG_OK) return report(s);
  MeshPtr mesh(raw);
  if (auto s = ptg_mesh_write(mesh.get(), out.c_str()); s != PTG_OK) return report(s);
  size_t nv = 0, nc = 0, ne = 0;
  double h = 0.0;
  ptg_mesh_counts(mesh.get(), &nv, &nc, &ne);
  ptg_mesh_h(mesh.get(), &h);
  std::printf("vertices=%zu cells=%zu edges=%zu h=%.17g\n", nv, nc, ne, h);
  return kOk;
}

int load(const std::string& path, MeshPtr& mesh) {
  ptg_mesh* raw = nullptr;
  if (auto s = ptg_mesh_read(path.c_str(), &raw); s != PTG_OK) return report(s);
  mesh.reset(raw);
  return kOk;
}

int cmd_mesh_info(const std::string& path) {
  MeshPtr mesh;
  if (int rc = load(path, mesh)) return rc;
  char* raw = nullptr;
  if (auto s = ptg_mesh_quality_json(mesh.get(), &raw); s != PTG_OK) return report(s);
  StringPtr json(raw);
  std::fputs(json.get(), stdout);
  return kOk;
}

struct SolveArgs {
  std::string mesh;
  std::string case_id;
  std::optional<double> rhs_const;
  double tol = 1e-10;
  int max_iter = 0;
  std::string out;
  std::string format = "csv";
};

int cmd_solve(const SolveArgs& a) {
  if (a.case_id.empty() == !a.rhs_const) {
    std::fprintf(stderr, "ptg: solve needs exactly one of --case or --rhs-const\n");
    return kUsage;
  }
  if (!a.case_id.empty()) {
    bool known = false;
    for (size_t i = 0; i < ptg_case_count(); ++i) known = known || a.case_id == ptg_case_name(i);
    if (!known) {
      std::fprintf(stderr, "ptg: unknown case '%s' (known: %s)\n", a.case_id.c_str(), known_cases().c_str());
      return kUsage;
    }
  }
  MeshPtr mesh;
  if (int rc = load(a.mesh, mesh)) return rc;

  int admissible = 0;
  ptg_mesh_is_admissible(mesh.get(), &admissible);
  if (!admissible) {
    char* raw = nullptr;
    ptg_mesh_quality_json(mesh.get(), &raw);
    StringPtr json(raw);
    std::fprintf(stderr, "ptg: mesh is not admissible\n");
    std::fputs(json.get(), stdout);
    return kInadmissible;
  }

  ptg_solution* raw = nullptr;
  const ptg_status s = a.rhs_const
                           ? ptg_solve_constant(mesh.get(), *a.rhs_const, a.tol, a.max_iter, &raw)
                           : ptg_solve_case(mesh.get(), a.case_id.c_str(), a.tol, a.max_iter, &raw);
  if (s != PTG_OK) return report(s);
  SolutionPtr sol(raw);

  char* body_raw = nullptr;
  const ptg_status fs = a.format == "json" ? ptg_solution_json(sol.get(), &body_raw)
                                           : ptg_solution_csv(sol.get(), &body_raw);
  if (fs != PTG_OK) return report(fs);
  StringPtr body(body_raw);

  int iterations = 0;
  double residual = 0.0, max_res = 0.0, bound = 0.0;
  int balance_ok = 0;
  ptg_solution_stats(sol.get(), &iterations, &residual);
  ptg_solution_balance(sol.get(), &max_res, &bound, &balance_ok);
  double eu = 0.0, ep = 0.0, ediv = 0.0;
  int has_errors = 0;
  ptg_solution_errors(sol.get(), &eu, &ep, &ediv, &has_errors);

  if (a.out.empty()) {
    std::fputs(body.get(), stdout);
  } else {
    if (!write_file(a.out, body.get())) {
      std::fprintf(stderr, "ptg: cannot write '%s'\n", a.out.c_str());
      return kIo;
    }
    // Sidecar: run metadata next to the solution file.
    std::string side = "{\n  \"mesh_file\": " + json_string(a.mesh) + ",\n";
    side += "  \"source\": " + json_string(a.rhs_const ? std::string("constant") : a.case_id) + ",\n";
    if (a.rhs_const) side += "  \"rhs_const\": " + fmt("%.17g", *a.rhs_const) + ",\n";
    side += "  \"tol\": " + fmt("%.17g", a.tol) + ",\n";
    side += "  \"iterations\": " + std::to_string(iterations) + ",\n";
    side += "  \"relative_residual\": " + fmt("%.17g", residual) + ",\n";
    side += "  \"balance_max_residual\": " + fmt("%.17g", max_res) + ",\n";
    side += "  \"balance_bound\": " + fmt("%.17g", bound) + ",\n";
    side += std::string("  \"balance_passed\": ") + (balance_ok ? "true" : "false");
    if (has_errors) {
      side += ",\n  \"eu\": " + fmt("%.17g", eu) + ",\n  \"ep\": " + fmt("%.17g", ep) +
              ",\n  \"ediv\": " + fmt("%.17g", ediv);
    }
    side += "\n}\n";
    if (!write_file(a.out + ".json", side)) {
      std::fprintf(stderr, "ptg: cannot write '%s.json'\n", a.out.c_str());
      return kIo;
    }
    std::printf("iterations=%d residual=%.3e balance=%.3e/%.3e\n", iterations, residual, max_res, bound);
    if (has_errors) std::printf("eu=%.10e ep=%.10e ediv=%.10e\n", eu, ep, ediv);
  }

  if (residual > a.tol || !balance_ok) {
    std::fprintf(stderr, "ptg: residual or flux balance check failed\n");
    return kFailed;
  }
  return kOk;
}

int cmd_convergence(const std::string& case_id, const std::vector<int>& levels, double tol,
                    const std::string& out) {
  if (levels.size() < 2) {
    std::fprintf(stderr, "ptg: convergence needs at least two levels\n");
    return kUsage;
  }
  for (size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) {
      std::fprintf(stderr, "ptg: levels must be strictly increasing\n");
      return kUsage;
    }
  }
  char* raw = nullptr;
  double rate = 0.0, rate_p = 0.0;
  if (auto s = ptg_convergence_study(case_id.c_str(), levels.data(), levels.size(), tol, &raw, &rate, &rate_p);
      s != PTG_OK) {
    if (s == PTG_ERR_INVALID_ARGUMENT) {
      std::fprintf(stderr, "ptg: %s\n", ptg_last_error_message());
      return kUsage;
    }
    return report(s);
  }
  StringPtr csv(raw);
  if (out.empty()) {
    std::fputs(csv.get(), stdout);
  } else if (!write_file(out, csv.get())) {
    std::fprintf(stderr, "ptg: cannot write '%s'\n", out.c_str());
    return kIo;
  }
  if (!(rate >= 0.9)) {
    std::fprintf(stderr, "ptg: final combined rate %.4f below 0.9\n", rate);
    return kFailed;
  }
  return kOk;
}

int cmd_verify(std::size_t samples, std::uint64_t seed, const std::string& mesh_path, std::size_t trials,
               const std::string& out) {
  MeshPtr mesh;
  if (!mesh_path.empty()) {
    if (int rc = load(mesh_path, mesh)) return rc;
  }
  char* raw = nullptr;
  int passed = 0;
  if (auto s = ptg_verify(samples, seed, mesh.get(), trials, &raw, &passed); s != PTG_OK) return report(s);
  StringPtr json(raw);
  if (out.empty()) {
    std::fputs(json.get(), stdout);
  } else if (!write_file(out, json.get())) {
    std::fprintf(stderr, "ptg: cannot write '%s'\n", out.c_str());
    return kIo;
  }
  return passed ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed Petrov-Galerkin / four-point finite volume Poisson solver"};
  app.require_subcommand(1);

  std::string domain = "rhombus";
  int n = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write a structured mesh");
  gen->add_option("--domain", domain, "Domain (rhombus)")->capture_default_str();
  gen->add_option("--n", n, "Subdivisions per side")->required()->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output mesh file")->required();

  std::string info_path;
  auto* info = app.add_subcommand("mesh-info", "Print the mesh quality report as JSON");
  info->add_option("file", info_path, "Mesh file")->required();

  SolveArgs sa;
  double rhs = 0.0;
  auto* solve = app.add_subcommand("solve", "Solve -Lap u = f with u = 0 on the boundary");
  solve->add_option("--mesh", sa.mesh, "Mesh file")->required();
  auto* case_opt = solve->add_option("--case", sa.case_id, "Manufactured case id");
  auto* rhs_opt = solve->add_option("--rhs-const", rhs, "Constant right-hand side");
  case_opt->excludes(rhs_opt);
  solve->add_option("--tol", sa.tol, "Relative residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", sa.max_iter, "Iteration cap (0: automatic)")->capture_default_str();
  solve->add_option("--out", sa.out, "Output file (stdout when omitted)");
  solve->add_option("--format", sa.format, "csv or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));

  std::string conv_case = "rhombus-sine";
  std::vector<int> levels = {8, 16, 32, 64};
  double conv_tol = 1e-12;
  std::string conv_out;
  auto* conv = app.add_subcommand("convergence", "Observed convergence rates (CSV)");
  conv->add_option("--case", conv_case, "Manufactured case id")->capture_default_str();
  conv->add_option("--levels", levels, "Comma-separated subdivision counts")
      ->delimiter(',')
      ->capture_default_str();
  conv->add_option("--tol", conv_tol, "Solver tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  conv->add_option("--out", conv_out, "Output CSV (stdout when omitted)");

  std::size_t samples = 10000;
  std::uint64_t seed = default_seed();
  std::string verify_mesh;
  std::size_t trials = 100;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Run the lemma suite and stability checks");
  verify->add_option("--samples", samples, "Random triangles per check")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "RNG seed (default: PTG_SEED or 42)")->capture_default_str();
  verify->add_option("--mesh", verify_mesh, "Mesh for the stability check");
  verify->add_option("--trials", trials, "Random fields for the stability check")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--out", verify_out, "Output JSON (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*gen) return cmd_generate(domain, n, gen_out);
  if (*info) return cmd_mesh_info(info_path);
  if (*solve) {
    if (*rhs_opt) sa.rhs_const = rhs;
    return cmd_solve(sa);
  }
  if (*conv) return cmd_convergence(conv_case, levels, conv_tol, conv_out);
  if (*verify) return cmd_verify(samples, seed, verify_mesh, trials, verify_out);
  return kUsage;
}
