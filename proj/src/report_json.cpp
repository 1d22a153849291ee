#include "isozmc/report_json.hpp"

namespace isozmc {

OrderedJson family_to_json(const WeierstrassFamily& f) {
  OrderedJson j;
  j["tag"] = to_string(f.tag);
  switch (f.tag) {
    case FamilyTag::Plane:
      break;
    case FamilyTag::TrivialEnneper:
      j["c"] = f.c;
      break;
    case FamilyTag::Catenoid:
    case FamilyTag::DeformTanh:
      j["alpha"] = f.alpha;
      break;
    case FamilyTag::EnneperType:
      j["beta"] = f.beta;
      break;
    case FamilyTag::BonnetType:
      j["alpha"] = f.alpha;
      j["beta"] = f.beta;
      break;
    case FamilyTag::DeformPolar:
      j["r"] = f.r;
      j["theta"] = f.theta;
      break;
  }
  j["conjugated"] = f.conjugated;
  j["point_reflected"] = f.point_reflected;
  j["display_normalization"] = f.display_normalization;
  return j;
}

OrderedJson grid_to_json(const GridSpec& grid) {
  OrderedJson j;
  j["u_min"] = grid.u_min;
  j["u_max"] = grid.u_max;
  j["v_min"] = grid.v_min;
  j["v_max"] = grid.v_max;
  j["n_u"] = grid.n_u;
  j["n_v"] = grid.n_v;
  return j;
}

OrderedJson tolerances_to_json(const Tolerances& tol) {
  OrderedJson j;
  j["mean_curvature_analytic"] = tol.mean_curvature_analytic;
  j["mean_curvature_fd"] = tol.mean_curvature_fd;
  j["hopf"] = tol.hopf;
  j["conformality"] = tol.conformality;
  j["metric_match"] = tol.metric_match;
  j["hopf_constancy"] = tol.hopf_constancy;
  j["gauss_weingarten"] = tol.gauss_weingarten;
  j["ode"] = tol.ode;
  j["pde"] = tol.pde;
  j["planarity"] = tol.planarity;
  j["axial"] = tol.axial;
  j["affine_mean"] = tol.affine_mean;
  j["affine_lt_nt"] = tol.affine_lt_nt;
  j["affine_metric"] = tol.affine_metric;
  j["affine_solve"] = tol.affine_solve;
  j["fd_match_factor"] = tol.fd_match_factor;
  j["path_independence"] = tol.path_independence;
  j["gauss_map"] = tol.gauss_map;
  j["degenerate_floor"] = tol.degenerate_floor;
  j["max_excluded_fraction"] = tol.max_excluded_fraction;
  return j;
}

OrderedJson numerics_to_json(const NumericsConfig& num) {
  OrderedJson j;
  j["quadrature_panels"] = num.quad.panels;
  j["quadrature_nodes"] = num.quad.nodes;
  j["base_point_re"] = num.quad.base_point.real();
  j["base_point_im"] = num.quad.base_point.imag();
  j["fd_step_jet"] = num.fd_step_jet;
  j["fd_step_affine"] = num.fd_step_affine;
  j["seed"] = num.seed;
  return j;
}

OrderedJson job_to_json(const JobConfig& job) {
  OrderedJson j;
  j["family"] = family_to_json(job.family);
  j["grid"] = grid_to_json(job.resolved_grid());
  j["numerics"] = numerics_to_json(job.numerics);
  j["tolerances"] = tolerances_to_json(job.tolerances);
  return j;
}

OrderedJson report_to_json(const VerificationReport& report) {
  OrderedJson j;
  j["family"] = report.family_name;
  j["conjugated"] = report.conjugated;
  j["grid_points"] = report.grid_points;
  j["excluded_total"] = report.excluded_total;
  OrderedJson excluded = OrderedJson::array();
  for (const auto& ij : report.excluded_indices) excluded.push_back({ij[0], ij[1]});
  j["excluded_indices"] = std::move(excluded);
  OrderedJson checks = OrderedJson::array();
  for (const CheckRecord& c : report.checks) {
    OrderedJson rec;
    rec["name"] = c.name;
    rec["max_residual"] = c.max_residual;
    rec["tolerance"] = c.tolerance;
    rec["pass"] = c.pass;
    rec["excluded_points"] = c.excluded_points;
    checks.push_back(std::move(rec));
  }
  j["checks"] = std::move(checks);
  j["overall_pass"] = report.overall_pass;
  return j;
}

OrderedJson verification_document(const JobConfig& job,
                                  std::span<const VerificationReport> runs) {
  OrderedJson doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["job"] = job_to_json(job);
  OrderedJson arr = OrderedJson::array();
  bool all_pass = true;
  for (const VerificationReport& r : runs) {
    all_pass = all_pass && r.overall_pass;
    arr.push_back(report_to_json(r));
  }
  doc["runs"] = std::move(arr);
  doc["overall_pass"] = all_pass;
  return doc;
}

}  // namespace isozmc
