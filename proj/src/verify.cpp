#include "isozmc/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

namespace isozmc {

void GridSpec::validate() const {
  if (!(std::isfinite(u_min) && std::isfinite(u_max) && std::isfinite(v_min) &&
        std::isfinite(v_max)))
    throw std::invalid_argument("grid: ranges must be finite");
  if (!(u_min < u_max) || !(v_min < v_max))
    throw std::invalid_argument("grid: empty range");
  if (n_u < 2 || n_v < 2) throw std::invalid_argument("grid: need at least 2x2 samples");
}

void Tolerances::validate() const {
  for (double t : {mean_curvature_analytic, mean_curvature_fd, hopf, conformality,
                   metric_match, hopf_constancy, gauss_weingarten, ode, pde, planarity, axial,
                   affine_mean, affine_lt_nt, affine_metric, affine_solve, fd_match_factor,
                   path_independence, gauss_map, degenerate_floor, max_excluded_fraction}) {
    if (!(t > 0.0)) throw std::invalid_argument("tolerances must be positive");
  }
}

GridSpec default_grid(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Plane:
    case FamilyTag::TrivialEnneper:
    case FamilyTag::Catenoid:
      return {-1.0, 1.0, -1.0, 1.0, 41, 41};
    case FamilyTag::EnneperType:
      return {0.5, 2.0, 0.5, 2.0, 41, 41};
    case FamilyTag::BonnetType:
      return {0.6, 2.2, 0.6, 2.0 * M_PI - 0.6, 41, 41};
    case FamilyTag::DeformTanh:
      return {-1.0, 1.0, -1.5, 1.5, 41, 41};
    case FamilyTag::DeformPolar:
      return {-1.2, 0.3, 0.3, 2.2, 41, 41};
  }
  return {};
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("ISO_ZMC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned long>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1 || count < 2) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const CheckRecord& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

struct PointData {
  bool valid = false;
  SurfaceJet jet;
  OmegaJet om;
  Complex h{};
  Complex q_w{};
  double eta_abs = 0.0;
};

struct SuiteContext {
  const WeierstrassFamily& f;
  const ConformalFactorModel& m;
  const GridSpec& grid;
  const Tolerances& tol;
  const NumericsConfig& num;
  std::vector<PointData> points;
  VerificationReport report;

  const PointData& at(int i, int j) const { return points[i * grid.n_v + j]; }

  void add_check(const std::string& name, double residual, double tolerance,
                 int excluded = 0) {
    CheckRecord rec{name, residual, tolerance, residual <= tolerance, excluded};
    report.overall_pass = report.overall_pass && rec.pass;
    report.checks.push_back(std::move(rec));
  }
};

void compute_points(SuiteContext& ctx) {
  const int total = ctx.grid.n_u * ctx.grid.n_v;
  ctx.points.resize(total);
  parallel_for(total, [&](int idx) {
    const int i = idx / ctx.grid.n_v;
    const int j = idx % ctx.grid.n_v;
    const Complex z(ctx.grid.u_at(i), ctx.grid.v_at(j));
    PointData& pt = ctx.points[idx];
    try {
      if (near_degeneracy(ctx.f, z, ctx.tol.degenerate_floor)) return;
      pt.jet = analytic_jet(ctx.f, z, ctx.num.quad, /*with_position=*/false);
      pt.h = eval_h(ctx.f, z);
      pt.q_w = hopf_coefficient(ctx.f, z);
      pt.eta_abs = metric_factor(ctx.f, z);
      pt.om = omega_jet(ctx.m, z.real(), z.imag());
      pt.valid = !pt.om.degenerate;
    } catch (const DegeneracyError&) {
      pt.valid = false;
    }
  });
  ctx.report.grid_points = total;
  for (int idx = 0; idx < total; ++idx) {
    if (ctx.points[idx].valid) continue;
    ++ctx.report.excluded_total;
    ctx.report.excluded_indices.push_back({idx / ctx.grid.n_v, idx % ctx.grid.n_v});
  }
}

void check_gauss_map(SuiteContext& ctx) {
  double null_res = 0.0, pair_res = 0.0;
  const Vec4 p = null_p();
  for (const PointData& pt : ctx.points) {
    if (!pt.valid) continue;
    null_res = std::max(null_res, std::abs(minkowski_form(pt.jet.n, pt.jet.n)));
    pair_res = std::max(pair_res, std::abs(minkowski_form(pt.jet.n, p) - 1.0));
  }
  // Fixed-seed sample of the disc |h| <= 10 keeps the contract independent
  // of the grid.
  std::mt19937_64 rng(ctx.num.seed);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  int tested = 0;
  while (tested < 1000) {
    const Complex h(dist(rng), dist(rng));
    if (std::norm(h) > 100.0) continue;
    ++tested;
    const Vec4 n = gauss_map_from_h(h);
    null_res = std::max(null_res, std::abs(minkowski_form(n, n)));
    pair_res = std::max(pair_res, std::abs(minkowski_form(n, p) - 1.0));
  }
  ctx.add_check("gauss_map_null", null_res, ctx.tol.gauss_map);
  ctx.add_check("gauss_map_pairing", pair_res, ctx.tol.gauss_map);
}

void check_metric_and_forms(SuiteContext& ctx) {
  double metric_res = 0.0, conf_res = 0.0, mean_res = 0.0;
  double hopf_w_res = 0.0, hopf_j_res = 0.0, constancy = 0.0;
  const Complex q_const = hopf_constant(ctx.f);
  std::optional<Complex> q_ref;
  for (const PointData& pt : ctx.points) {
    if (!pt.valid) continue;
    const double e_omega = pt.om.e_omega;
    metric_res = std::max(metric_res, std::abs(pt.eta_abs - e_omega) / e_omega);
    const FundamentalForms ff = fundamental_forms(pt.jet);
    conf_res = std::max(conf_res, std::abs(ff.E - ff.G) / ff.E);
    conf_res = std::max(conf_res, std::abs(ff.F) / ff.E);
    mean_res = std::max(mean_res, std::abs(mean_curvature(pt.jet)));
    hopf_w_res = std::max(hopf_w_res, std::abs(pt.q_w - q_const));
    hopf_j_res = std::max(hopf_j_res, std::abs(hopf_from_jet(pt.jet) - q_const));
    if (!q_ref) q_ref = pt.q_w;
    constancy = std::max(constancy, std::abs(pt.q_w - *q_ref));
  }
  ctx.add_check("metric_match", metric_res, ctx.tol.metric_match);
  ctx.add_check("conformality", conf_res, ctx.tol.conformality);
  ctx.add_check("mean_curvature_analytic", mean_res, ctx.tol.mean_curvature_analytic);
  ctx.add_check("hopf_weierstrass", hopf_w_res, ctx.tol.hopf);
  ctx.add_check("hopf_jet", hopf_j_res, ctx.tol.hopf);
  ctx.add_check("hopf_constancy", constancy, ctx.tol.hopf_constancy);
}

void check_gauss_weingarten(SuiteContext& ctx) {
  const Complex q_const = hopf_constant(ctx.f);
  double res = 0.0;
  for (const PointData& pt : ctx.points) {
    if (!pt.valid) continue;
    res = std::max(res, gauss_weingarten_residuals(pt.jet, pt.om, q_const).max());
  }
  ctx.add_check("gauss_weingarten", res, ctx.tol.gauss_weingarten);
}

void check_model_residuals(SuiteContext& ctx) {
  double ode_res = 0.0, pde_res = 0.0;
  for (int i = 0; i < ctx.grid.n_u; ++i) {
    for (int j = 0; j < ctx.grid.n_v; ++j) {
      const PointData& pt = ctx.at(i, j);
      if (!pt.valid) continue;
      const double u = ctx.grid.u_at(i), v = ctx.grid.v_at(j);
      for (double r : ode_residuals(ctx.m, u, v)) ode_res = std::max(ode_res, std::abs(r));
      const auto [laplace, planar] = pde_residuals_from(
          pt.om.omega_u, pt.om.omega_v, pt.om.omega_uu, pt.om.omega_uv, pt.om.omega_vv);
      pde_res = std::max(pde_res, std::max(std::abs(laplace), std::abs(planar)));
    }
  }
  ctx.add_check("ode_residuals", ode_res, ctx.tol.ode);
  ctx.add_check("pde_residuals", pde_res, ctx.tol.pde);
}

void check_mean_curvature_fd(SuiteContext& ctx) {
  const auto sampler = [&](double u, double v) {
    return integrate_surface(ctx.f, Complex(u, v), ctx.num.quad);
  };
  const int total = ctx.grid.n_u * ctx.grid.n_v;
  std::vector<double> h_abs(total, -1.0);
  parallel_for(total, [&](int idx) {
    const int i = idx / ctx.grid.n_v;
    const int j = idx % ctx.grid.n_v;
    if (!ctx.points[idx].valid) return;
    try {
      const SurfaceJet jet = fd_jet(sampler, ctx.grid.u_at(i), ctx.grid.v_at(j),
                                    ctx.num.fd_step_jet);
      h_abs[idx] = std::abs(mean_curvature(jet));
    } catch (const DegeneracyError&) {
      h_abs[idx] = -1.0;
    }
  });
  double res = 0.0;
  int excluded = 0;
  for (int idx = 0; idx < total; ++idx) {
    if (!ctx.points[idx].valid) continue;
    if (h_abs[idx] < 0.0) {
      ++excluded;
      continue;
    }
    res = std::max(res, h_abs[idx]);
  }
  ctx.add_check("mean_curvature_fd", res, ctx.tol.mean_curvature_fd, excluded);
}

void check_fd_vs_analytic(SuiteContext& ctx) {
  const auto sampler = [&](double u, double v) {
    return integrate_surface(ctx.f, Complex(u, v), ctx.num.quad);
  };
  const int stride_i = std::max(1, (ctx.grid.n_u - 1) / 8);
  const int stride_j = std::max(1, (ctx.grid.n_v - 1) / 8);
  std::vector<std::pair<int, int>> samples;
  for (int i = 0; i < ctx.grid.n_u; i += stride_i)
    for (int j = 0; j < ctx.grid.n_v; j += stride_j)
      if (ctx.at(i, j).valid) samples.emplace_back(i, j);

  std::vector<double> diffs(samples.size(), 0.0);
  parallel_for(static_cast<int>(samples.size()), [&](int k) {
    const auto [i, j] = samples[k];
    const double u = ctx.grid.u_at(i), v = ctx.grid.v_at(j);
    try {
      const SurfaceJet fd = fd_jet(sampler, u, v, ctx.num.fd_step_jet);
      const SurfaceJet& an = ctx.at(i, j).jet;
      double d = 0.0;
      d = std::max(d, (fd.X_u - an.X_u).cwiseAbs().maxCoeff());
      d = std::max(d, (fd.X_v - an.X_v).cwiseAbs().maxCoeff());
      d = std::max(d, (fd.X_uu - an.X_uu).cwiseAbs().maxCoeff());
      d = std::max(d, (fd.X_uv - an.X_uv).cwiseAbs().maxCoeff());
      d = std::max(d, (fd.X_vv - an.X_vv).cwiseAbs().maxCoeff());
      d = std::max(d, (fd.n - an.n).cwiseAbs().maxCoeff());
      diffs[k] = d;
    } catch (const DegeneracyError&) {
      diffs[k] = -1.0;
    }
  });
  double res = 0.0;
  int excluded = 0;
  for (double d : diffs) {
    if (d < 0.0)
      ++excluded;
    else
      res = std::max(res, d);
  }
  const double tolerance = ctx.tol.fd_match_factor * ctx.num.fd_step_jet * ctx.num.fd_step_jet;
  ctx.add_check("fd_vs_analytic", res, tolerance, excluded);
}

void check_planarity(SuiteContext& ctx) {
  if (ctx.f.conjugated) return;
  constexpr int kLines = 21;
  constexpr int kSamples = 64;
  for (CoordDirection dir : {CoordDirection::ULine, CoordDirection::VLine}) {
    const bool ulines = dir == CoordDirection::ULine;
    const double fixed_lo = ulines ? ctx.grid.v_min : ctx.grid.u_min;
    const double fixed_hi = ulines ? ctx.grid.v_max : ctx.grid.u_max;
    const double run_lo = ulines ? ctx.grid.u_min : ctx.grid.v_min;
    const double run_hi = ulines ? ctx.grid.u_max : ctx.grid.v_max;
    double res = 0.0;
    int excluded = 0;
    std::vector<std::vector<Vec3>> lines(kLines);
    parallel_for(kLines, [&](int k) {
      const double fixed = fixed_lo + (fixed_hi - fixed_lo) * k / (kLines - 1.0);
      try {
        lines[k] = extract_coordinate_polyline(ctx.f, dir, fixed, run_lo, run_hi, kSamples,
                                               ctx.num.quad);
      } catch (const DegeneracyError&) {
        lines[k].clear();
      }
    });
    for (const auto& line : lines) {
      if (line.empty()) {
        ++excluded;
        continue;
      }
      res = std::max(res, plane_fit_residual(line));
    }
    ctx.add_check(ulines ? "planarity_u_lines" : "planarity_v_lines", res,
                  ctx.tol.planarity, excluded);
  }
}

void check_axial(SuiteContext& ctx) {
  if (ctx.f.conjugated) return;
  if (ctx.m.tag != CaseTag::Case1b && ctx.m.tag != CaseTag::Case1c) return;
  std::vector<AxialResult> results;
  results.reserve(ctx.points.size());
  for (const PointData& pt : ctx.points) {
    if (!pt.valid) continue;
    results.push_back(axial_directions(ctx.m, pt.om, pt.jet));
  }
  const CarrierCheckResult agg = plane_carrier_checks(results, ctx.m.beta);
  ctx.add_check("axial_w1_norm", agg.max_w1_norm_err, ctx.tol.axial);
  ctx.add_check("axial_w2_norm", agg.max_w2_norm_err, ctx.tol.axial);
  ctx.add_check("axial_orthogonality", agg.max_w1_dot_w2, ctx.tol.axial);
  ctx.add_check("axial_w1_constancy", agg.w1_constancy, ctx.tol.axial);
  ctx.add_check("axial_w2_constancy", agg.w2_constancy, ctx.tol.axial);
  ctx.add_check("carrier_m1_w1", agg.max_m1_w1, ctx.tol.axial);
  ctx.add_check("carrier_m2_w2", agg.max_m2_w2, ctx.tol.axial);
}

void check_affine(SuiteContext& ctx) {
  if (!ctx.f.conjugated) return;
  double lt_nt = 0.0, metric_res = 0.0;
  for (const PointData& pt : ctx.points) {
    if (!pt.valid) continue;
    const AffineData data = affine_forms(pt.jet);
    lt_nt = std::max({lt_nt, std::abs(data.Lt), std::abs(data.Nt)});
    if (data.Mt > 0.0)
      metric_res = std::max(metric_res, std::abs(std::sqrt(data.Mt) - pt.om.e_omega));
  }
  ctx.add_check("affine_lt_nt", lt_nt, ctx.tol.affine_lt_nt);
  ctx.add_check("affine_metric", metric_res, ctx.tol.affine_metric);

  // Shape operator on a coarse subgrid; the FD stencil must stay pole-free.
  const int stride_i = std::max(1, (ctx.grid.n_u - 1) / 6);
  const int stride_j = std::max(1, (ctx.grid.n_v - 1) / 6);
  std::vector<Complex> centers;
  for (int i = 1; i + 1 < ctx.grid.n_u; i += stride_i)
    for (int j = 1; j + 1 < ctx.grid.n_v; j += stride_j)
      if (ctx.at(i, j).valid) centers.emplace_back(ctx.grid.u_at(i), ctx.grid.v_at(j));

  std::vector<AffineShapeResult> shapes(centers.size());
  std::vector<char> ok(centers.size(), 0);
  parallel_for(static_cast<int>(centers.size()), [&](int k) {
    try {
      shapes[k] = affine_shape(ctx.f, centers[k], ctx.num.fd_step_affine);
      ok[k] = 1;
    } catch (const DegeneracyError&) {
      ok[k] = 0;
    }
  });
  double h_shape = 0.0, h_direct = 0.0, solve_res = 0.0;
  int excluded = 0;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (!ok[k]) {
      ++excluded;
      continue;
    }
    h_shape = std::max(h_shape, std::abs(shapes[k].H));
    h_direct = std::max(h_direct, std::abs(shapes[k].H_direct));
    solve_res = std::max(solve_res, shapes[k].solve_residual);
  }
  ctx.add_check("affine_mean_shape", h_shape, ctx.tol.affine_mean, excluded);
  ctx.add_check("affine_mean_direct", h_direct, ctx.tol.affine_mean, excluded);
  ctx.add_check("affine_solve_residual", solve_res, ctx.tol.affine_solve, excluded);
}

void check_path_independence(SuiteContext& ctx) {
  const Complex a(ctx.grid.u_min, ctx.grid.v_min);
  const Complex b(ctx.grid.u_max, ctx.grid.v_max);
  const Complex mid(ctx.grid.u_max, ctx.grid.v_min);
  const std::vector<Complex> straight{a, b};
  const std::vector<Complex> detour{a, mid, b};
  const double res = path_independence_check(ctx.f, straight, detour, ctx.num.quad);
  ctx.add_check("path_independence", res, ctx.tol.path_independence);
}

void check_degenerate_fraction(SuiteContext& ctx) {
  const double frac =
      static_cast<double>(ctx.report.excluded_total) / ctx.report.grid_points;
  ctx.add_check("degenerate_fraction", frac, ctx.tol.max_excluded_fraction,
                ctx.report.excluded_total);
}

}  // namespace

VerificationReport run_invariant_suite(const WeierstrassFamily& f,
                                       const ConformalFactorModel& m, const GridSpec& grid,
                                       const Tolerances& tol, const NumericsConfig& num) {
  f.validate();
  grid.validate();
  tol.validate();
  SuiteContext ctx{f, m, grid, tol, num, {}, {}};
  ctx.report.family_name = to_string(f.tag);
  ctx.report.conjugated = f.conjugated;

  compute_points(ctx);
  check_gauss_map(ctx);
  check_metric_and_forms(ctx);
  check_gauss_weingarten(ctx);
  check_model_residuals(ctx);
  check_mean_curvature_fd(ctx);
  check_fd_vs_analytic(ctx);
  check_planarity(ctx);
  check_axial(ctx);
  check_affine(ctx);
  check_path_independence(ctx);
  check_degenerate_fraction(ctx);
  return ctx.report;
}

}  // namespace isozmc
