#include "isozmc/diffgeo.hpp"

#include <cmath>

namespace isozmc {

namespace {

constexpr double kDegenerateFloor = 1e-12;
constexpr double kDerivativeZero = 1e-10;  // |omega_u| or |omega_v| below this: carrier undefined

Vec4 normal_derivative_u(Complex h, Complex hp) {
  const Complex w = std::conj(h) * hp;
  return Vec4(-w.real(), -hp.real(), hp.imag(), -w.real());
}

Vec4 normal_derivative_v(Complex h, Complex hp) {
  const Complex w = std::conj(h) * hp;
  return Vec4(w.imag(), hp.imag(), hp.real(), w.imag());
}

}  // namespace

SurfaceJet analytic_jet(const WeierstrassFamily& f, Complex z, const QuadratureConfig& quad,
                        bool with_position) {
  SurfaceJet jet;
  const CVec3 w = eval_integrand(f, z);
  const CVec3 wp = eval_integrand_prime(f, z);
  jet.X_u = w.real();
  jet.X_v = -w.imag();
  jet.X_uu = wp.real();
  jet.X_uv = -wp.imag();
  jet.X_vv = -wp.real();
  const Complex h = eval_h(f, z);
  const Complex hp = eval_h_prime(f, z);
  jet.n = gauss_map_from_h(h);
  jet.n_u = normal_derivative_u(h, hp);
  jet.n_v = normal_derivative_v(h, hp);
  jet.has_normal_derivatives = true;
  jet.degenerate = metric_factor(f, z) < kDegenerateFloor;
  if (with_position) jet.X = integrate_surface(f, z, quad);
  return jet;
}

SurfaceJet fd_jet(const SurfaceSampler& sample, double u, double v, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd_jet: step must be positive");
  const double s = step;
  SurfaceJet jet;
  const Vec3 c = sample(u, v);
  const Vec3 pu = sample(u + s, v), mu = sample(u - s, v);
  const Vec3 pv = sample(u, v + s), mv = sample(u, v - s);
  const Vec3 pp = sample(u + s, v + s), pm = sample(u + s, v - s);
  const Vec3 mp = sample(u - s, v + s), mm = sample(u - s, v - s);
  jet.X = c;
  jet.X_u = (pu - mu) / (2.0 * s);
  jet.X_v = (pv - mv) / (2.0 * s);
  jet.X_uu = (pu - 2.0 * c + mu) / (s * s);
  jet.X_vv = (pv - 2.0 * c + mv) / (s * s);
  jet.X_uv = (pp - pm - mp + mm) / (4.0 * s * s);

  // Lightlike normal: with n = lambda p + p~ + b e1 + c e2 the tangency
  // conditions are linear in (b, c) and the null condition fixes lambda.
  Eigen::Matrix2d A;
  A << jet.X_u(1), jet.X_u(2), jet.X_v(1), jet.X_v(2);
  Eigen::Vector2d rhs(-jet.X_u(0), -jet.X_v(0));
  const double scale = A.cwiseAbs().maxCoeff();
  if (std::abs(A.determinant()) <= 1e-10 * std::max(scale * scale, 1e-30))
    throw DegeneracyError("fd_jet: tangent plane degenerate");
  const Eigen::Vector2d bc = A.partialPivLu().solve(rhs);
  const double lambda = -0.5 * (bc(0) * bc(0) + bc(1) * bc(1));
  jet.n = Vec4(lambda - 0.5, bc(0), bc(1), lambda + 0.5);
  return jet;
}

FundamentalForms fundamental_forms(const SurfaceJet& jet) {
  FundamentalForms ff;
  ff.E = iso_inner(jet.X_u, jet.X_u);
  ff.F = iso_inner(jet.X_u, jet.X_v);
  ff.G = iso_inner(jet.X_v, jet.X_v);
  ff.L = minkowski_form(embed(jet.X_uu), jet.n);
  ff.M = minkowski_form(embed(jet.X_uv), jet.n);
  ff.N = minkowski_form(embed(jet.X_vv), jet.n);
  return ff;
}

double mean_curvature(const SurfaceJet& jet) {
  const FundamentalForms ff = fundamental_forms(jet);
  if (ff.E < kDegenerateFloor) throw DegeneracyError("mean_curvature: degenerate metric");
  return 0.5 * (ff.L + ff.N) / ff.E;
}

Complex hopf_from_jet(const SurfaceJet& jet) {
  const FundamentalForms ff = fundamental_forms(jet);
  return Complex(0.25 * (ff.L - ff.N), -0.5 * ff.M);
}

std::vector<Vec3> extract_coordinate_polyline(const WeierstrassFamily& f, CoordDirection dir,
                                              double fixed, double lo, double hi, int samples,
                                              const QuadratureConfig& quad) {
  if (samples < 4) throw std::invalid_argument("extract_coordinate_polyline: samples >= 4");
  std::vector<Vec3> points;
  points.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1.0);
    const Complex z = dir == CoordDirection::ULine ? Complex(t, fixed) : Complex(fixed, t);
    if (near_degeneracy(f, z))
      throw DegeneracyError("extract_coordinate_polyline: pole on line");
    points.push_back(integrate_surface(f, z, quad));
  }
  return points;
}

std::vector<Vec3> extract_coordinate_polyline(const SurfaceSampler& sample, CoordDirection dir,
                                              double fixed, double lo, double hi, int samples) {
  if (samples < 4) throw std::invalid_argument("extract_coordinate_polyline: samples >= 4");
  std::vector<Vec3> points;
  points.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1.0);
    points.push_back(dir == CoordDirection::ULine ? sample(t, fixed) : sample(fixed, t));
  }
  return points;
}

PlaneFitResult fit_plane(std::span<const Vec3> points) {
  if (points.size() < 4)
    throw std::invalid_argument("fit_plane: need at least 4 points");
  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Eigen::MatrixXd A(points.size(), 3);
  for (std::size_t i = 0; i < points.size(); ++i) A.row(i) = (points[i] - centroid).transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
  const Eigen::Vector3d s = svd.singularValues();
  PlaneFitResult fit;
  fit.centroid = centroid;
  fit.singular_values = {s(0), s(1), s(2)};
  if (s(0) <= 0.0) throw std::invalid_argument("fit_plane: all points coincide");
  fit.residual = s(2) / s(0);
  fit.rank_deficient = s(1) <= 1e-10 * s(0);
  fit.normal = svd.matrixV().col(2);
  return fit;
}

double plane_fit_residual(std::span<const Vec3> points) { return fit_plane(points).residual; }

const Vec4& AxialResult::require_w1() const {
  if (!has_w1) throw std::domain_error("axial direction w1 undefined: f identically zero");
  return w1;
}

const Vec4& AxialResult::require_w2() const {
  if (!has_w2) throw std::domain_error("axial direction w2 undefined: g identically zero");
  return w2;
}

AxialResult axial_directions(const ConformalFactorModel& m, const OmegaJet& om,
                             const SurfaceJet& jet) {
  if (om.degenerate) throw DegeneracyError("axial_directions: metric degenerate point");
  AxialResult res;
  const Vec4 p = null_p();
  const Vec4 xu = embed(jet.X_u), xv = embed(jet.X_v);
  const bool f_nonzero = m.tag != CaseTag::Case2;
  const bool g_nonzero = m.tag == CaseTag::Case1b || m.tag == CaseTag::Case1c;

  if (f_nonzero) {
    res.has_w1 = true;
    res.w1 = om.omega_uu * xu - om.omega_uv * xv + om.omega_u * p;
    res.w1_norm2 = minkowski_form(res.w1, res.w1);
  }
  if (g_nonzero) {
    res.has_w2 = true;
    res.w2 = om.omega_uv * xu - om.omega_vv * xv + om.omega_v * p;
    res.w2_norm2 = minkowski_form(res.w2, res.w2);
  }
  if (res.has_w1 && res.has_w2) res.w1_dot_w2 = minkowski_form(res.w1, res.w2);

  const double inv_e2w = 1.0 / (om.e_omega * om.e_omega);
  if (g_nonzero && std::abs(om.omega_v) > kDerivativeZero) {
    res.has_m1 = true;
    res.m1 = -inv_e2w * xv + om.omega_v * jet.n - (inv_e2w / (2.0 * om.omega_v)) * p;
    if (res.has_w1) res.m1_dot_w1 = minkowski_form(res.m1, res.w1);
  }
  if (std::abs(om.omega_u) > kDerivativeZero) {
    res.has_m2 = true;
    res.m2 = inv_e2w * xu + om.omega_u * jet.n - (inv_e2w / (2.0 * om.omega_u)) * p;
    if (res.has_w2) res.m2_dot_w2 = minkowski_form(res.m2, res.w2);
  }
  return res;
}

AxialResult axial_directions(const ConformalFactorModel& m, const WeierstrassFamily& f,
                             Complex z, const QuadratureConfig& quad) {
  const SurfaceJet jet = analytic_jet(f, z, quad, /*with_position=*/false);
  const OmegaJet om = omega_jet(m, z.real(), z.imag());
  return axial_directions(m, om, jet);
}

CarrierCheckResult plane_carrier_checks(std::span<const AxialResult> grid, double beta) {
  CarrierCheckResult out;
  const double b2 = beta * beta;
  const AxialResult* ref = nullptr;
  for (const AxialResult& a : grid) {
    ++out.points;
    if (ref == nullptr) ref = &a;
    if (a.has_w1) {
      out.max_w1_norm_err = std::max(out.max_w1_norm_err, std::abs(a.w1_norm2 - b2));
      if (ref->has_w1)
        out.w1_constancy =
            std::max(out.w1_constancy, (a.w1 - ref->w1).cwiseAbs().maxCoeff());
    }
    if (a.has_w2) {
      out.max_w2_norm_err = std::max(out.max_w2_norm_err, std::abs(a.w2_norm2 - b2));
      if (ref->has_w2)
        out.w2_constancy =
            std::max(out.w2_constancy, (a.w2 - ref->w2).cwiseAbs().maxCoeff());
    }
    if (a.has_w1 && a.has_w2)
      out.max_w1_dot_w2 = std::max(out.max_w1_dot_w2, std::abs(a.w1_dot_w2));
    if (a.has_m1) out.max_m1_w1 = std::max(out.max_m1_w1, std::abs(a.m1_dot_w1));
    if (a.has_m2) out.max_m2_w2 = std::max(out.max_m2_w2, std::abs(a.m2_dot_w2));
  }
  return out;
}

namespace {

double det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  Eigen::Matrix3d m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  return m.determinant();
}

}  // namespace

AffineData affine_forms(const SurfaceJet& jet) {
  AffineData data;
  data.Lt = det3(jet.X_u, jet.X_v, jet.X_uu);
  data.Mt = det3(jet.X_u, jet.X_v, jet.X_uv);
  data.Nt = det3(jet.X_u, jet.X_v, jet.X_vv);
  if (data.Mt > 0.0) {
    data.has_normal = true;
    data.normal = jet.X_uv / std::sqrt(data.Mt);
  }
  return data;
}

namespace {

Vec3 affine_normal_at(const WeierstrassFamily& f, Complex z) {
  const SurfaceJet jet = analytic_jet(f, z, {}, /*with_position=*/false);
  const AffineData data = affine_forms(jet);
  if (!data.has_normal)
    throw DegeneracyError("affine_shape: Mt <= 0 (not an asymptotic patch?)");
  return data.normal;
}

double half_log_mt(const WeierstrassFamily& f, Complex z) {
  const SurfaceJet jet = analytic_jet(f, z, {}, /*with_position=*/false);
  const double mt = det3(jet.X_u, jet.X_v, jet.X_uv);
  if (mt <= 0.0) throw DegeneracyError("affine_shape: Mt <= 0 (not an asymptotic patch?)");
  return 0.5 * std::log(mt);
}

}  // namespace

AffineShapeResult affine_shape(const WeierstrassFamily& f, Complex z, double step) {
  if (step <= 0.0) throw std::invalid_argument("affine_shape: step must be positive");
  const double s = step;
  const Complex du{s, 0.0}, dv{0.0, s};

  const Vec3 nu = (affine_normal_at(f, z + du) - affine_normal_at(f, z - du)) / (2.0 * s);
  const Vec3 nv = (affine_normal_at(f, z + dv) - affine_normal_at(f, z - dv)) / (2.0 * s);

  const SurfaceJet jet = analytic_jet(f, z, {}, /*with_position=*/false);
  Eigen::Matrix<double, 3, 2> frame;
  frame.col(0) = jet.X_u;
  frame.col(1) = jet.X_v;
  const auto solver = frame.colPivHouseholderQr();
  if (solver.rank() < 2) throw DegeneracyError("affine_shape: tangent solve ill-conditioned");

  AffineShapeResult out;
  const Eigen::Vector2d s1 = solver.solve(-nu);
  const Eigen::Vector2d s2 = solver.solve(-nv);
  out.S.col(0) = s1;
  out.S.col(1) = s2;
  out.solve_residual = std::max((frame * s1 + nu).cwiseAbs().maxCoeff(),
                                (frame * s2 + nv).cwiseAbs().maxCoeff());
  out.H = 0.5 * out.S.trace();
  out.K = out.S.determinant();

  // Direct route: omega measured as 1/2 log Mt, differentiated by FD.
  const double w_c = half_log_mt(f, z);
  const double w_pu = half_log_mt(f, z + du), w_mu = half_log_mt(f, z - du);
  const double w_pv = half_log_mt(f, z + dv), w_mv = half_log_mt(f, z - dv);
  const double w_pp = half_log_mt(f, z + du + dv), w_pm = half_log_mt(f, z + du - dv);
  const double w_mp = half_log_mt(f, z - du + dv), w_mm = half_log_mt(f, z - du - dv);
  const double wu = (w_pu - w_mu) / (2.0 * s);
  const double wv = (w_pv - w_mv) / (2.0 * s);
  const double wuv = (w_pp - w_pm - w_mp + w_mm) / (4.0 * s * s);
  out.H_direct = -std::exp(-w_c) * (wuv + wu * wv);
  return out;
}

double GaussWeingartenResiduals::max() const {
  return std::max({x_uu, x_uv, x_vv, n_u, n_v});
}

GaussWeingartenResiduals gauss_weingarten_residuals(const SurfaceJet& jet, const OmegaJet& om,
                                                    Complex Q) {
  if (om.degenerate)
    throw DegeneracyError("gauss_weingarten_residuals: metric degenerate point");
  GaussWeingartenResiduals res;
  const Vec4 p = null_p();
  const Vec4 xu = embed(jet.X_u), xv = embed(jet.X_v);
  const double inv_e2w = 1.0 / (om.e_omega * om.e_omega);

  const Vec4 r_uu =
      embed(jet.X_uu) - (om.omega_u * xu - om.omega_v * xv + 2.0 * Q.real() * p);
  const Vec4 r_uv =
      embed(jet.X_uv) - (om.omega_v * xu + om.omega_u * xv - 2.0 * Q.imag() * p);
  const Vec4 r_vv =
      embed(jet.X_vv) - (-om.omega_u * xu + om.omega_v * xv - 2.0 * Q.real() * p);
  res.x_uu = r_uu.cwiseAbs().maxCoeff();
  res.x_uv = r_uv.cwiseAbs().maxCoeff();
  res.x_vv = r_vv.cwiseAbs().maxCoeff();

  if (jet.has_normal_derivatives) {
    const Vec4 r_nu = jet.n_u + 2.0 * inv_e2w * (Q.real() * xu - Q.imag() * xv);
    const Vec4 r_nv = jet.n_v - 2.0 * inv_e2w * (Q.imag() * xu + Q.real() * xv);
    res.n_u = r_nu.cwiseAbs().maxCoeff();
    res.n_v = r_nv.cwiseAbs().maxCoeff();
  }
  return res;
}

}  // namespace isozmc
