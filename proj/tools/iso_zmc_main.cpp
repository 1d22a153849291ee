#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "isozmc/catalog.hpp"
#include "isozmc/mesh_io.hpp"
#include "isozmc/report_json.hpp"

namespace {

using namespace isozmc;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct CliOptions {
  std::string family = "catenoid";
  double alpha = 1.0;
  double beta = 1.0;
  double r = 1.0;
  double theta = 0.7853981633974483;
  double c = 0.0;
  bool conjugated = false;
  bool display_normalization = false;
  std::string u_range, v_range;
  int n_u = 0, n_v = 0;
  int panels = 8, order = 16;
  double fd_step = 1e-3;
  double fd_step_affine = 1e-3;
  unsigned long long seed = 20240817ull;
  std::string out = "surface.obj";
  std::string report;
  Tolerances tol;

  // deform only
  std::string kind = "tanh";
  int frames = 0;
  std::vector<double> params;
};

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must be given as lo:hi");
  std::size_t used_lo = 0, used_hi = 0;
  const double lo = std::stod(text.substr(0, colon), &used_lo);
  const double hi = std::stod(text.substr(colon + 1), &used_hi);
  if (used_lo != colon || used_hi != text.size() - colon - 1)
    throw std::invalid_argument("range must be given as lo:hi");
  return {lo, hi};
}

WeierstrassFamily family_from_options(const CliOptions& opt) {
  const auto tag = family_tag_from_string(opt.family);
  if (!tag) throw std::invalid_argument("unknown family tag: " + opt.family);
  WeierstrassFamily f;
  switch (*tag) {
    case FamilyTag::Plane: f = WeierstrassFamily::plane(); break;
    case FamilyTag::TrivialEnneper: f = WeierstrassFamily::trivial_enneper(opt.c); break;
    case FamilyTag::Catenoid: f = WeierstrassFamily::catenoid(opt.alpha); break;
    case FamilyTag::EnneperType: f = WeierstrassFamily::enneper_type(opt.beta); break;
    case FamilyTag::BonnetType: f = WeierstrassFamily::bonnet_type(opt.alpha, opt.beta); break;
    case FamilyTag::DeformTanh: f = WeierstrassFamily::deform_tanh(opt.alpha); break;
    case FamilyTag::DeformPolar: f = WeierstrassFamily::deform_polar(opt.r, opt.theta); break;
  }
  f.conjugated = opt.conjugated;
  f.display_normalization = opt.display_normalization;
  return f;
}

JobConfig job_from_options(const CliOptions& opt) {
  JobConfig job;
  job.family = family_from_options(opt);
  GridSpec grid = default_grid(job.family.tag);
  if (!opt.u_range.empty()) std::tie(grid.u_min, grid.u_max) = parse_range(opt.u_range);
  if (!opt.v_range.empty()) std::tie(grid.v_min, grid.v_max) = parse_range(opt.v_range);
  if (opt.n_u > 0) grid.n_u = opt.n_u;
  if (opt.n_v > 0) grid.n_v = opt.n_v;
  job.grid = grid;
  job.numerics.quad.panels = opt.panels;
  job.numerics.quad.nodes = opt.order;
  job.numerics.fd_step_jet = opt.fd_step;
  job.numerics.fd_step_affine = opt.fd_step_affine;
  job.numerics.seed = opt.seed;
  job.tolerances = opt.tol;
  job.out_path = opt.out;
  job.report_path = opt.report;
  job.validate();
  return job;
}

void add_common_options(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--family", opt.family,
                  "plane | trivial-enneper | catenoid | enneper | bonnet | deform-tanh | "
                  "deform-polar");
  sub->add_option("--alpha", opt.alpha, "alpha parameter (> 0)");
  sub->add_option("--beta", opt.beta, "beta parameter (> 0)");
  sub->add_option("--r", opt.r, "polar radius (> 0)");
  sub->add_option("--theta", opt.theta, "polar angle in (0, pi/2)");
  sub->add_option("--c", opt.c, "trivial-enneper constant");
  sub->add_flag("--conjugated", opt.conjugated, "use the conjugate data (eta -> i eta)");
  sub->add_flag("--display-normalization", opt.display_normalization,
                "rescale eta to the textbook listing");
  sub->add_option("--u-range", opt.u_range, "u interval as lo:hi");
  sub->add_option("--v-range", opt.v_range, "v interval as lo:hi");
  sub->add_option("--nu", opt.n_u, "grid samples in u (>= 2)");
  sub->add_option("--nv", opt.n_v, "grid samples in v (>= 2)");
  sub->add_option("--panels", opt.panels, "quadrature panels per segment");
  sub->add_option("--order", opt.order, "Gauss-Legendre order per panel");
  sub->add_option("--fd-step", opt.fd_step, "finite-difference step for jets");
  sub->add_option("--fd-step-affine", opt.fd_step_affine,
                  "finite-difference step for the affine shape operator");
  sub->add_option("--seed", opt.seed, "seed echoed into reports");
  sub->add_option("--out", opt.out, "output mesh path");
  sub->add_option("--report", opt.report, "report JSON path (stdout when empty)");
  sub->add_option("--tol-mean-analytic", opt.tol.mean_curvature_analytic, "");
  sub->add_option("--tol-mean-fd", opt.tol.mean_curvature_fd, "");
  sub->add_option("--tol-hopf", opt.tol.hopf, "");
  sub->add_option("--tol-conformality", opt.tol.conformality, "");
  sub->add_option("--tol-metric", opt.tol.metric_match, "");
  sub->add_option("--tol-gw", opt.tol.gauss_weingarten, "");
  sub->add_option("--tol-ode", opt.tol.ode, "");
  sub->add_option("--tol-pde", opt.tol.pde, "");
  sub->add_option("--tol-planarity", opt.tol.planarity, "");
  sub->add_option("--tol-axial", opt.tol.axial, "");
  sub->add_option("--tol-affine", opt.tol.affine_mean, "");
  sub->add_option("--tol-path", opt.tol.path_independence, "");
  sub->add_option("--tol-fd-factor", opt.tol.fd_match_factor, "");
  sub->fallthrough();  // lets the root-level --config appear after the subcommand
}

// Sectionless config keys apply to the active subcommand; explicitly passed
// flags keep precedence. Section form ([generate] etc.) is handled by the
// parser itself.
void apply_plain_config_keys(CLI::App& app, CLI::App* active) {
  const CLI::Option* cfg = app.get_config_ptr();
  if (cfg == nullptr || cfg->count() == 0) return;
  for (const CLI::ConfigItem& item : app.get_config_formatter()->from_file(cfg->as<std::string>())) {
    if (!item.parents.empty() || item.name == "++" || item.name == "--") continue;
    CLI::Option* op = active->get_option_no_throw("--" + item.name);
    if (op == nullptr) throw std::invalid_argument("unknown config key: " + item.name);
    if (op->count() > 0) continue;
    for (const std::string& input : item.inputs) op->add_result(input);
    op->run_callback();
  }
}

void emit_report(const std::string& path, const OrderedJson& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty())
    std::fwrite(text.data(), 1, text.size(), stdout);
  else
    write_text_atomic(path, text);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int cmd_generate(const CliOptions& opt) {
  const JobConfig job = job_from_options(opt);
  const MeshBuffer mesh = tessellate_family(job.family, job.resolved_grid(),
                                            job.numerics.quad,
                                            job.tolerances.degenerate_floor);
  write_text_atomic(job.out_path, obj_text(mesh));
  write_text_atomic(job.out_path + ".lines.txt", polyline_sidecar_text(mesh));
  std::cout << job.out_path << ": " << mesh.vertices.size() << " vertices, "
            << mesh.triangles.size() << " triangles, " << mesh.polylines.size()
            << " lines\n";
  return kExitPass;
}

int cmd_verify(const CliOptions& opt, bool family_given) {
  const JobConfig job = job_from_options(opt);
  std::vector<VerificationReport> runs;
  if (family_given) {
    runs.push_back(run_invariant_suite(job.family, paired_model(job.family),
                                       job.resolved_grid(), job.tolerances, job.numerics));
  } else {
    // Catalog sweep over every family tag with its default window.
    const std::vector<WeierstrassFamily> sweep = {
        WeierstrassFamily::plane(),
        WeierstrassFamily::trivial_enneper(),
        WeierstrassFamily::catenoid(1.0),
        WeierstrassFamily::enneper_type(2.0),
        WeierstrassFamily::bonnet_type(1.0, 1.0),
        WeierstrassFamily::deform_tanh(1.0),
        WeierstrassFamily::deform_polar(1.0, 0.7853981633974483),
    };
    for (WeierstrassFamily f : sweep) {
      f.conjugated = opt.conjugated;
      runs.push_back(run_invariant_suite(f, paired_model(f), default_grid(f.tag),
                                         job.tolerances, job.numerics));
    }
  }
  const OrderedJson doc = verification_document(job, runs);
  emit_report(job.report_path, doc);
  for (const VerificationReport& r : runs) {
    std::cout << (r.overall_pass ? "PASS " : "FAIL ") << r.family_name
              << (r.conjugated ? " (conjugated)" : "") << "\n";
  }
  return doc["overall_pass"].get<bool>() ? kExitPass : kExitVerifyFail;
}

int cmd_conjugate(const CliOptions& opt) {
  const JobConfig job = job_from_options(opt);
  const WeierstrassFamily primal = job.family;
  const WeierstrassFamily conj = conjugate(primal);
  const GridSpec grid = job.resolved_grid();

  const MeshBuffer mesh_a = tessellate_family(primal, grid, job.numerics.quad,
                                              job.tolerances.degenerate_floor);
  const MeshBuffer mesh_b = tessellate_family(conj, grid, job.numerics.quad,
                                              job.tolerances.degenerate_floor);
  const std::string path_a = with_suffix(job.out_path, "_surface");
  const std::string path_b = with_suffix(job.out_path, "_conjugate");
  write_text_atomic(path_a, obj_text(mesh_a));
  write_text_atomic(path_b, obj_text(mesh_b));

  // Pairing contract: shared metric, Hopf coefficient rotated by i.
  double metric_dev = 0.0, hopf_dev = 0.0;
  for (int i = 0; i < grid.n_u; ++i) {
    for (int j = 0; j < grid.n_v; ++j) {
      const Complex z(grid.u_at(i), grid.v_at(j));
      metric_dev = std::max(metric_dev,
                            std::abs(metric_factor(primal, z) - metric_factor(conj, z)));
      if (primal.tag != FamilyTag::Plane)
        hopf_dev = std::max(hopf_dev, std::abs(hopf_coefficient(conj, z) -
                                               Complex(0, 1) * hopf_coefficient(primal, z)));
    }
  }
  const bool pass = metric_dev <= job.tolerances.metric_match &&
                    hopf_dev <= job.tolerances.hopf;
  OrderedJson doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["job"] = job_to_json(job);
  doc["surface_mesh"] = path_a;
  doc["conjugate_mesh"] = path_b;
  doc["metric_agreement_max"] = metric_dev;
  doc["hopf_rotation_residual"] = hopf_dev;
  doc["overall_pass"] = pass;
  emit_report(job.report_path, doc);
  std::cout << (pass ? "PASS" : "FAIL") << " conjugate pairing " << to_string(primal.tag)
            << "\n";
  return pass ? kExitPass : kExitVerifyFail;
}

int cmd_deform(const CliOptions& opt) {
  const JobConfig job = job_from_options(opt);
  DeformationKind kind;
  if (opt.kind == "tanh")
    kind = DeformationKind::TanhPath;
  else if (opt.kind == "polar")
    kind = DeformationKind::PolarPath;
  else
    throw std::invalid_argument("deform kind must be 'tanh' or 'polar'");

  std::vector<double> params = opt.params;
  if (params.empty()) {
    const int n = opt.frames > 0 ? opt.frames : 8;
    if (kind == DeformationKind::TanhPath) {
      double a = opt.alpha;
      for (int i = 0; i < n; ++i, a *= 0.5) params.push_back(a);
    } else {
      for (int i = 0; i < n; ++i)
        params.push_back(0.1 + (1.47 - 0.1) * i / std::max(n - 1, 1));
    }
  }

  std::vector<Complex> grid_pts;
  const GridSpec grid = job.resolved_grid();
  for (int i = 0; i < grid.n_u; ++i)
    for (int j = 0; j < grid.n_v; ++j) grid_pts.emplace_back(grid.u_at(i), grid.v_at(j));

  OrderedJson frames = OrderedJson::array();
  for (std::size_t k = 0; k < params.size(); ++k) {
    const WeierstrassFamily f = deformation_data(kind, params[k], opt.r);
    char tag[16];
    std::snprintf(tag, sizeof tag, "_%03zu", k);
    const std::string path = with_suffix(job.out_path, tag);
    const MeshBuffer mesh = tessellate_family(f, grid, job.numerics.quad,
                                              job.tolerances.degenerate_floor);
    write_text_atomic(path, obj_text(mesh));
    OrderedJson rec;
    rec["param"] = params[k];
    rec["mesh"] = path;
    frames.push_back(std::move(rec));
  }

  OrderedJson tables = OrderedJson::array();
  auto add_table = [&](LimitTarget target, const char* name, double fixed,
                       std::span<const double> seq) {
    OrderedJson table;
    table["limit"] = name;
    OrderedJson rows = OrderedJson::array();
    for (const DeviationRow& row : limit_convergence_rate(target, fixed, grid_pts, seq)) {
      OrderedJson r;
      r["param"] = row.param;
      r["h_deviation"] = row.h_dev;
      r["eta_deviation"] = row.eta_dev;
      rows.push_back(std::move(r));
    }
    table["rows"] = std::move(rows);
    tables.push_back(std::move(table));
  };
  if (kind == DeformationKind::TanhPath) {
    add_table(LimitTarget::TanhToTrivialEnneper, "trivial-enneper", 0.0, params);
  } else {
    std::vector<double> ascending = params, descending = params;
    std::sort(ascending.begin(), ascending.end(), std::greater<>());   // toward 0
    std::sort(descending.begin(), descending.end());                   // toward pi/2
    add_table(LimitTarget::PolarToCatenoid, "catenoid", opt.r, ascending);
    add_table(LimitTarget::PolarToEnneperType, "enneper", opt.r, descending);
  }

  OrderedJson doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["job"] = job_to_json(job);
  doc["kind"] = opt.kind;
  doc["frames"] = std::move(frames);
  doc["convergence_tables"] = std::move(tables);
  emit_report(job.report_path, doc);
  std::cout << "wrote " << params.size() << " frames\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero mean curvature surfaces with planar curvature lines in isotropic "
               "3-space: tessellation, conjugation, deformation, verification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "structured config file; explicit flags take precedence");

  CliOptions gen_opt, ver_opt, con_opt, def_opt;
  CLI::App* gen = app.add_subcommand("generate", "tessellate one surface to an OBJ mesh");
  add_common_options(gen, gen_opt);
  CLI::App* ver = app.add_subcommand("verify", "run the invariant suite and write a report");
  add_common_options(ver, ver_opt);
  CLI::App* con = app.add_subcommand("conjugate", "write a conjugate pair of meshes");
  add_common_options(con, con_opt);
  CLI::App* def = app.add_subcommand("deform", "write a deformation sequence of meshes");
  add_common_options(def, def_opt);
  def->add_option("--kind", def_opt.kind, "tanh | polar");
  def->add_option("--frames", def_opt.frames, "number of frames");
  def->add_option("--params", def_opt.params, "explicit parameter list")->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    CLI::App* active = gen->parsed() ? gen : ver->parsed() ? ver : con->parsed() ? con : def;
    apply_plain_config_keys(app, active);
    if (gen->parsed()) return cmd_generate(gen_opt);
    if (ver->parsed()) return cmd_verify(ver_opt, ver->count("--family") > 0);
    if (con->parsed()) return cmd_conjugate(con_opt);
    if (def->parsed()) return cmd_deform(def_opt);
  } catch (const DegeneracyError& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
