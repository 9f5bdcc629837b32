#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ptg/mesh.hpp"
#include "ptg/solver.hpp"

namespace ptg {

/// Analytic solution of -Lap u = f with u = 0 on the boundary of its domain.
struct ManufacturedCase {
  std::string id;
  std::string description;
  std::function<Mesh(int)> domain;
  std::function<double(Point)> u;
  std::function<Vec2(Point)> gradient;
  std::function<double(Point)> f;
};

const std::vector<ManufacturedCase>& builtin_cases();
/// Throws InvalidArgument listing the known ids.
const ManufacturedCase& find_case(std::string_view id);

struct ErrorNorms {
  double u = 0.0;    // ||u - u_T||_0
  double p = 0.0;    // ||p - p_T||_0
  double div = 0.0;  // ||div(p - p_T)||_0

  /// ||u - u_T||_0 + ||p - p_T||_{H(div)}.
  double combined() const noexcept;
};

ErrorNorms error_norms(const Mesh& mesh, const Solution& solution, const ManufacturedCase& mcase,
                       const TriangleRule& rule = TriangleRule::dunavant6());

struct ConvergenceLevel {
  int n = 0;
  double h = 0.0;
  ErrorNorms errors;
  int iterations = 0;
  double residual = 0.0;
};

struct ConvergenceReport {
  std::string case_id;
  std::vector<ConvergenceLevel> levels;
  /// Observed orders between consecutive levels, log(e_i/e_{i+1}) / log(h_i/h_{i+1}).
  std::vector<double> rate_u, rate_p, rate_div, rate_combined;
};

/// Levels must be strictly increasing subdivision counts, at least two.
ConvergenceReport convergence_study(const ManufacturedCase& mcase, const std::vector<int>& levels,
                                    const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Verification suite

struct CheckOutcome {
  /// Signed margin, normalized; the check passes when slack >= 0.
  double slack = 0.0;
};

struct TriangleCheck {
  std::string name;
  std::function<CheckOutcome(const TriangleGeometry&)> run;
};

/// Per-triangle identities and inequalities: gyration radius, cotangent
/// identities, local Gram matrix, eigenvalue bounds, circumcenter distances,
/// delta_K constraints, energy closed form and bounds.
const std::vector<TriangleCheck>& triangle_checks();

struct CheckResult {
  std::string check;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst_slack = 0.0;
  /// Vertices of the sample with the smallest slack.
  std::vector<Point> witness;

  bool passed() const noexcept { return failures == 0; }
};

struct LemmaSuiteReport {
  std::vector<CheckResult> checks;
  bool passed() const noexcept;
};

enum class TriangleSampler {
  /// Vertices uniform in the unit square, rejecting small angles.
  UnitSquare,
  /// Equilateral triangles under random rotation, translation and scale.
  Equilateral,
};

struct LemmaSuiteOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 42;
  TriangleSampler sampler = TriangleSampler::UnitSquare;
  double min_angle = 5.0 * kPi / 180.0;
};

TriangleGeometry sample_triangle(std::mt19937_64& rng, TriangleSampler sampler, double min_angle);

/// Each check draws its own samples from a stream seeded by (seed, check index).
LemmaSuiteReport lemma_suite(const LemmaSuiteOptions& options = {});

struct StabilityReport {
  std::size_t trials = 0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  double A = 0.0;  // (2/5) cot(theta_max) tan(theta_min)
  double C = 1.0;
  double D = 0.0;  // sqrt(nu(theta_min))
  double h1_min_ratio = 0.0;      // min (p, Pi p) / ||p||^2
  double h3_max_deviation = 0.0;  // max |(div p, div Pi p) / ||div p||^2 - 1|
  double h4_max_ratio = 0.0;      // max ||div Pi p|| / ||div p||
  double max_sqrt_energy = 0.0;   // max_K sqrt(I_K)
  bool h1_passed = false;
  bool h3_passed = false;
  bool h4_passed = false;

  bool passed() const noexcept { return h1_passed && h3_passed && h4_passed; }
};

/// Checks H1, H3, H4 on random RT fields with i.i.d. standard normal fluxes.
StabilityReport stability_check(const Mesh& mesh, std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Serialization (stable key order).

std::string quality_report_json(const Mesh& mesh);
std::string lemma_report_json(const LemmaSuiteReport& report);
std::string stability_report_json(const StabilityReport& report);
std::string convergence_csv(const ConvergenceReport& report);
/// `cell,u` rows followed by `edge,flux` rows.
std::string solution_csv(const Solution& solution);

}  // namespace ptg
