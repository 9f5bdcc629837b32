#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "ptg/analysis.hpp"
#include "ptg/dual.hpp"

namespace ptg {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kDeg = 180.0 / kPi;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Non-finite values become null in JSON.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json points(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back({p.x, p.y});
  return a;
}

}  // namespace

std::string quality_report_json(const Mesh& mesh) {
  const MeshQualityReport q = quality_report(mesh);
  const DualCoefficients c = cotan_coefficients(mesh);
  double cmin = std::numeric_limits<double>::infinity();
  double cmax = -cmin;
  for (double v : c.values) {
    cmin = std::min(cmin, v);
    cmax = std::max(cmax, v);
  }
  Json j;
  j["vertices"] = mesh.num_vertices();
  j["cells"] = mesh.num_cells();
  j["edges"] = mesh.num_edges();
  j["internal_edges"] = mesh.internal_edges().size();
  j["boundary_edges"] = mesh.boundary_edges().size();
  j["h"] = mesh.max_edge_length();
  j["min_angle_deg"] = q.min_angle * kDeg;
  j["max_angle_deg"] = q.max_angle * kDeg;
  j["acute"] = q.acute;
  j["admissible"] = q.admissible;
  j["offending_edges"] = q.offending_edges();
  Json bad = Json::array();
  for (const auto& e : q.internal)
    if (!e.ok) bad.push_back({{"edge", e.edge}, {"kind", "internal"}, {"angle_sum_deg", e.angle * kDeg}});
  for (const auto& e : q.boundary)
    if (!e.ok) bad.push_back({{"edge", e.edge}, {"kind", "boundary"}, {"angle_deg", e.angle * kDeg}});
  j["violations"] = bad;
  j["transmissibility"] = {{"min", number(cmin)}, {"max", number(cmax)}};
  return j.dump(2) + "\n";
}

std::string lemma_report_json(const LemmaSuiteReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["check"] = c.check;
    j["samples"] = c.samples;
    j["passed"] = c.passed();
    j["failures"] = c.failures;
    j["worst_slack"] = number(c.worst_slack);
    j["witness"] = points(c.witness);
    checks.push_back(j);
  }
  Json j;
  j["passed"] = report.passed();
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

std::string stability_report_json(const StabilityReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["theta_min_deg"] = r.theta_min * kDeg;
  j["theta_max_deg"] = r.theta_max * kDeg;
  j["A"] = r.A;
  j["C"] = r.C;
  j["D"] = r.D;
  j["h1"] = {{"min_ratio", number(r.h1_min_ratio)}, {"bound", r.A}, {"passed", r.h1_passed}};
  j["h3"] = {{"max_deviation", number(r.h3_max_deviation)}, {"passed", r.h3_passed}};
  j["h4"] = {{"max_ratio", number(r.h4_max_ratio)},
             {"bound", r.D},
             {"max_sqrt_energy", r.max_sqrt_energy},
             {"passed", r.h4_passed}};
  j["passed"] = r.passed();
  return j.dump(2) + "\n";
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "n,h,eu,ep,ediv,combined,rate_combined,rate_p,rate_u,rate_div\n";
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const auto& l = report.levels[i];
    out += std::to_string(l.n);
    for (double v : {l.h, l.errors.u, l.errors.p, l.errors.div, l.errors.combined()})
      out += fmt(",%.10e", v);
    if (i == 0) {
      out += ",,,,";
    } else {
      for (const auto* rates : {&report.rate_combined, &report.rate_p, &report.rate_u, &report.rate_div})
        out += fmt(",%.6f", (*rates)[i - 1]);
    }
    out += '\n';
  }
  return out;
}

std::string solution_csv(const Solution& solution) {
  std::string out = "cell,u\n";
  for (std::size_t k = 0; k < solution.u.values.size(); ++k)
    out += std::to_string(k) + fmt(",%.17g\n", solution.u.values[k]);
  out += "edge,flux\n";
  for (std::size_t e = 0; e < solution.p.fluxes.size(); ++e)
    out += std::to_string(e) + fmt(",%.17g\n", solution.p.fluxes[e]);
  return out;
}

}  // namespace ptg
