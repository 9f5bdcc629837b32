#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ptg/analysis.hpp"
#include "ptg/dual.hpp"
#include "ptg/spaces.hpp"

namespace ptg {

namespace {

double cot(double a) { return std::cos(a) / std::sin(a); }

// Slack of an identity |err| <= tol.
CheckOutcome within(double err, double tol) { return {tol - std::abs(err)}; }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::array<double, 3> gram_eigenvalues(const LocalGram& g) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(1), ev(2)};
}

std::vector<TriangleCheck> make_checks() {
  std::vector<TriangleCheck> c;

  c.push_back({"gyration-radius-identity", [](const TriangleGeometry& g) {
                 const Point G = g.centroid;
                 const double q = integrate_triangle(TriangleRule::midpoint(), g,
                                                     [&](Point x) { return norm2(x - G); });
                 return within(rel(q / g.area, g.gyration_radius2), 1e-12);
               }});

  c.push_back({"gyration-radius-bounds", [](const TriangleGeometry& g) {
                 const double r = g.gyration_radius2 / g.area;
                 const double upper = 1.0 / (3.0 * std::tan(g.min_angle()));
                 // The equilateral triangle attains the upper bound.
                 return CheckOutcome{std::min(r - 1.0 / 6.0, upper - r) / upper + 1e-12};
               }});

  c.push_back({"cotangent-sum", [](const TriangleGeometry& g) {
                 double s = 0.0;
                 for (double a : g.angles) s += cot(a);
                 return within(rel(s, 9.0 * g.gyration_radius2 / g.area), 1e-11);
               }});

  c.push_back({"cotangent-pair-sum", [](const TriangleGeometry& g) {
                 const auto& t = g.angles;
                 const double s = cot(t[0]) * cot(t[1]) + cot(t[1]) * cot(t[2]) + cot(t[2]) * cot(t[0]);
                 return within(s - 1.0, 1e-11);
               }});

  c.push_back({"gram-closed-form", [](const TriangleGeometry& g) {
                 const LocalGram a = local_gram_closed_form(g);
                 const LocalGram b = local_gram_quadrature(g);
                 // Off-diagonal entries can vanish; scale each by sqrt(G_ii G_jj).
                 double err = 0.0;
                 for (int i = 0; i < 3; ++i)
                   for (int j = 0; j < 3; ++j)
                     err = std::max(err, std::abs(a(i, j) - b(i, j)) / std::sqrt(b(i, i) * b(j, j)));
                 return within(err, 1e-11);
               }});

  c.push_back({"gram-invariants", [](const TriangleGeometry& g) {
                 const LocalGram q = local_gram_quadrature(g);
                 const double s = g.gyration_radius2 / g.area;
                 const double e1 = rel(q.trace(), 15.0 * s / 4.0);
                 const double e2 = rel(q.determinant(), g.gyration_radius2 / (16.0 * g.area));
                 const double e3 = rel(q.minor_sum(), 1.0 / 12.0 + 9.0 / 4.0 * s * s);
                 return within(std::max({e1, e2, e3}), 1e-10);
               }});

  c.push_back({"gram-eigenvalue-bounds", [](const TriangleGeometry& g) {
                 const auto ev = gram_eigenvalues(local_gram_closed_form(g));
                 const double t = std::tan(g.min_angle());
                 const double lo = t * t / 48.0;
                 const double hi = 5.0 / (4.0 * t);
                 return CheckOutcome{std::min((ev[0] - lo) / lo, (hi - ev[2]) / hi)};
               }});

  c.push_back({"circumcenter-distance", [](const TriangleGeometry& g) {
                 double slack = std::numeric_limits<double>::infinity();
                 for (int i = 0; i < 3; ++i) {
                   const auto ends = g.edge_endpoints(i);
                   const Point mid = (ends[0] + ends[1]) * 0.5;
                   // Signed: positive when the circumcenter lies on the inner side.
                   const double d = dot(mid - g.circumcenter, g.outward_normal(i));
                   const double half_cot = cot(g.angles[i]) / 2.0;
                   const double err = d / g.edge_lengths[i] - half_cot;
                   slack = std::min(slack, within(err, 1e-11 * std::max(1.0, std::abs(half_cot))).slack);
                 }
                 return CheckOutcome{slack};
               }});

  c.push_back({"delta-constraints", [](const TriangleGeometry& g) {
                 const DeltaK d = solve_delta_k(g);
                 const double h = g.max_edge_length();
                 double err = std::abs(d.mass - 1.0);
                 for (double m : d.moments) err = std::max(err, std::abs(m) / (h * h));
                 return within(err, 1e-10);
               }});

  c.push_back({"delta-energy-closed-form", [](const TriangleGeometry& g) {
                 const double quad = solve_delta_k(g).energy;
                 return within(rel(delta_energy_closed_form(g), quad), 1e-8);
               }});

  c.push_back({"delta-energy-bound", [](const TriangleGeometry& g) {
                 const double nu = nu_bound(g.min_angle());
                 return CheckOutcome{(nu - solve_delta_k(g).energy) / nu};
               }});

  c.push_back({"energy-denominator-bound", [](const TriangleGeometry& g) {
                 const DeltaEnergyTerms t = delta_energy_terms(g);
                 const double s4 = t.sigma2 * t.sigma2;
                 // Equality holds for the equilateral triangle.
                 return CheckOutcome{(t.D - 5.0 / 12.0 * s4) / s4 + 1e-12};
               }});

  c.push_back({"energy-numerator-bound", [](const TriangleGeometry& g) {
                 const DeltaEnergyTerms t = delta_energy_terms(g);
                 const double cap = 23.0 * std::pow(t.sigma2, 6);
                 return CheckOutcome{(cap - t.N) / cap};
               }});

  return c;
}

CheckResult g_profile_check() {
  CheckResult r;
  r.check = "g-profile";
  r.samples = 101;
  const GMoments m = g_moments();
  double err = std::max({std::abs(m.m0 - 1.0), std::abs(m.m2), std::abs(g_profile(0.0)),
                         std::abs(g_profile(1.0))});
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    err = std::max(err, std::abs(g_profile(s) - g_profile(1.0 - s)));
  }
  r.worst_slack = 1e-13 - err;
  r.failures = r.worst_slack >= 0.0 ? 0 : 1;
  return r;
}

}  // namespace

const std::vector<TriangleCheck>& triangle_checks() {
  static const std::vector<TriangleCheck> checks = make_checks();
  return checks;
}

bool LemmaSuiteReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

TriangleGeometry sample_triangle(std::mt19937_64& rng, TriangleSampler sampler, double min_angle) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (sampler == TriangleSampler::Equilateral) {
    const double phi = 2.0 * kPi * unit(rng);
    const double side = 0.1 + unit(rng);
    const Point center{unit(rng), unit(rng)};
    std::array<Point, 3> v;
    for (int i = 0; i < 3; ++i) {
      const double a = phi + 2.0 * kPi * i / 3.0;
      v[i] = center + Vec2{std::cos(a), std::sin(a)} * (side / std::sqrt(3.0));
    }
    return TriangleGeometry::from_vertices(v[0], v[1], v[2]);
  }
  for (;;) {
    const Point a{unit(rng), unit(rng)};
    const Point b{unit(rng), unit(rng)};
    const Point c{unit(rng), unit(rng)};
    try {
      TriangleGeometry g = TriangleGeometry::from_vertices(a, b, c);
      if (g.min_angle() >= min_angle) return g;
    } catch (const Error&) {
    }
  }
}

LemmaSuiteReport lemma_suite(const LemmaSuiteOptions& options) {
  if (options.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  if (!(options.min_angle > 0.0 && options.min_angle < kPi / 3.0 + 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "min_angle must lie in (0, pi/3]");
  }
  LemmaSuiteReport report;
  const auto& checks = triangle_checks();
  for (std::size_t idx = 0; idx < checks.size(); ++idx) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(idx)};
    std::mt19937_64 rng(seq);
    CheckResult r;
    r.check = checks[idx].name;
    r.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < options.samples; ++s) {
      const TriangleGeometry g = sample_triangle(rng, options.sampler, options.min_angle);
      double slack;
      try {
        slack = checks[idx].run(g).slack;
      } catch (const Error&) {
        slack = -1.0;
      }
      if (std::isnan(slack)) slack = -1.0;
      ++r.samples;
      if (slack < 0.0) ++r.failures;
      if (slack < r.worst_slack) {
        r.worst_slack = slack;
        r.witness.assign(g.vertices.begin(), g.vertices.end());
      }
    }
    report.checks.push_back(std::move(r));
  }
  report.checks.push_back(g_profile_check());
  return report;
}

StabilityReport stability_check(const Mesh& mesh, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
  const MeshQualityReport quality = quality_report(mesh);
  if (!quality.admissible) {
    throw Error(ErrorKind::InadmissibleMesh, "stability check needs an admissible mesh");
  }
  const DualCoefficients coeffs = cotan_coefficients(mesh);
  if (!coeffs.all_positive()) {
    throw Error(ErrorKind::InadmissibleMesh, "non-positive transmissibility");
  }

  StabilityReport r;
  r.trials = trials;
  r.theta_min = quality.min_angle;
  r.theta_max = quality.max_angle;
  r.A = 0.4 * cot(r.theta_max) * std::tan(r.theta_min);
  r.C = 1.0;
  const double nu = nu_bound(r.theta_min);
  r.D = std::sqrt(nu);

  std::vector<double> mass(mesh.num_cells());
  std::vector<double> energy(mesh.num_cells());
  double max_energy = 0.0;
  for (CellId k = 0; k < mesh.num_cells(); ++k) {
    const DeltaK d = solve_delta_k(mesh.geometry(k));
    mass[k] = d.mass;
    energy[k] = d.energy;
    max_energy = std::max(max_energy, d.energy);
  }
  r.max_sqrt_energy = std::sqrt(max_energy);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  r.h1_min_ratio = std::numeric_limits<double>::infinity();
  r.h3_max_deviation = 0.0;
  r.h4_max_ratio = 0.0;
  RTField p = RTField::zeros(mesh);
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& v : p.fluxes) v = normal(rng);
    double pairing = 0.0;
    for (EdgeId e = 0; e < mesh.num_edges(); ++e) pairing += coeffs[e] * p[e] * p[e];
    r.h1_min_ratio = std::min(r.h1_min_ratio, pairing / rt_norm2(mesh, p));

    const P0Field div = divergence(mesh, p);
    double div2 = 0.0;
    double cross_term = 0.0;
    double proj2 = 0.0;
    for (CellId k = 0; k < mesh.num_cells(); ++k) {
      const double w = mesh.geometry(k).area * div[k] * div[k];
      div2 += w;
      cross_term += w * mass[k];
      proj2 += w * energy[k];
    }
    if (div2 > 0.0) {
      r.h3_max_deviation = std::max(r.h3_max_deviation, std::abs(cross_term / div2 - 1.0));
      r.h4_max_ratio = std::max(r.h4_max_ratio, std::sqrt(proj2 / div2));
    }
  }
  r.h1_passed = r.h1_min_ratio >= r.A * (1.0 - 1e-12);
  r.h3_passed = r.h3_max_deviation <= 1e-12;
  r.h4_passed = r.h4_max_ratio <= r.D && max_energy <= nu;
  return r;
}

}  // namespace ptg
