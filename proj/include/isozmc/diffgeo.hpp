#pragma once

#include <functional>
#include <span>
#include <vector>

#include "isozmc/catalog.hpp"

// Numerical differential geometry on surface jets: fundamental forms, mean
// curvature and Hopf coefficient, curvature-line extraction and plane
// fitting, axial directions with their plane carriers, Gauss-Weingarten
// residuals, and the affine (Berwald-Blaschke) quantities.

namespace isozmc {

struct SurfaceJet {
  Vec3 X = Vec3::Zero();
  Vec3 X_u = Vec3::Zero(), X_v = Vec3::Zero();
  Vec3 X_uu = Vec3::Zero(), X_uv = Vec3::Zero(), X_vv = Vec3::Zero();
  Vec4 n = Vec4::Zero();
  Vec4 n_u = Vec4::Zero(), n_v = Vec4::Zero();
  bool has_normal_derivatives = false;
  bool degenerate = false;
};

// First derivatives from the integrand W, second from W', Gauss map from h;
// the position itself comes from quadrature (skipped when with_position is
// false, which the grid suites use).
SurfaceJet analytic_jet(const WeierstrassFamily& f, Complex z,
                        const QuadratureConfig& quad = {}, bool with_position = true);

using SurfaceSampler = std::function<Vec3(double, double)>;

// Central second-order differences; the lightlike normal is solved from
// <X_u,n> = <X_v,n> = 0, <n,p> = 1, <n,n> = 0 (linear in the e1,e2 part,
// then the p-component closes the null condition).
SurfaceJet fd_jet(const SurfaceSampler& sample, double u, double v, double step);

struct FundamentalForms {
  double E = 0, F = 0, G = 0;  // first form via the degenerate metric
  double L = 0, M = 0, N = 0;  // second form via <X_.., n>
};

FundamentalForms fundamental_forms(const SurfaceJet& jet);

/// H = 1/2 e^{-2 omega} (L + N) with e^{2 omega} = E.
double mean_curvature(const SurfaceJet& jet);

/// Q = 1/4 (L - N - 2iM).
Complex hopf_from_jet(const SurfaceJet& jet);

enum class CoordDirection { ULine, VLine };

std::vector<Vec3> extract_coordinate_polyline(const WeierstrassFamily& f, CoordDirection dir,
                                              double fixed, double lo, double hi, int samples,
                                              const QuadratureConfig& quad = {});
std::vector<Vec3> extract_coordinate_polyline(const SurfaceSampler& sample, CoordDirection dir,
                                              double fixed, double lo, double hi, int samples);

struct PlaneFitResult {
  double residual = 0.0;  // sigma_min / sigma_max of the centered points
  bool rank_deficient = false;
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  std::array<double, 3> singular_values{};
};

PlaneFitResult fit_plane(std::span<const Vec3> points);
double plane_fit_residual(std::span<const Vec3> points);

// Axial directions w1, w2 (the constant directions in the curvature-line
// planes) and the carriers m1, m2 of those planes.
struct AxialResult {
  bool has_w1 = false, has_w2 = false;
  Vec4 w1 = Vec4::Zero(), w2 = Vec4::Zero();
  double w1_norm2 = 0.0, w2_norm2 = 0.0, w1_dot_w2 = 0.0;
  bool has_m1 = false, has_m2 = false;
  Vec4 m1 = Vec4::Zero(), m2 = Vec4::Zero();
  double m1_dot_w1 = 0.0, m2_dot_w2 = 0.0;

  const Vec4& require_w1() const;
  const Vec4& require_w2() const;
};

AxialResult axial_directions(const ConformalFactorModel& m, const WeierstrassFamily& f,
                             Complex z, const QuadratureConfig& quad = {});
AxialResult axial_directions(const ConformalFactorModel& m, const OmegaJet& om,
                             const SurfaceJet& jet);

struct CarrierCheckResult {
  double max_m1_w1 = 0.0, max_m2_w2 = 0.0;
  double w1_constancy = 0.0, w2_constancy = 0.0;
  double max_w1_norm_err = 0.0, max_w2_norm_err = 0.0;  // vs beta^2
  double max_w1_dot_w2 = 0.0;
  int points = 0;
};

/// Aggregates per-point axial results; norm errors are measured against beta^2.
CarrierCheckResult plane_carrier_checks(std::span<const AxialResult> grid, double beta);

struct AffineData {
  double Lt = 0.0, Mt = 0.0, Nt = 0.0;  // det(X_u, X_v, X_..)
  Vec3 normal = Vec3::Zero();           // affine normal e^{-omega} X_uv
  bool has_normal = false;              // requires Mt > 0
};

AffineData affine_forms(const SurfaceJet& jet);

struct AffineShapeResult {
  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
  double H = 0.0, K = 0.0;
  double H_direct = 0.0;       // -e^{-omega}(omega_uv + omega_u omega_v), omega = 1/2 log Mt
  double solve_residual = 0.0; // tangential least-squares defect
};

// Shape operator on an asymptotic-coordinate (conjugated) patch: the affine
// normal is differentiated by central differences with the given step and
// resolved against the tangent frame in least squares.
AffineShapeResult affine_shape(const WeierstrassFamily& f, Complex z, double step);

struct GaussWeingartenResiduals {
  double x_uu = 0.0, x_uv = 0.0, x_vv = 0.0;
  double n_u = 0.0, n_v = 0.0;
  double max() const;
};

// Residuals of the structure equations for a constant Hopf coefficient Q;
// omega data comes from the paired catalog model.
GaussWeingartenResiduals gauss_weingarten_residuals(const SurfaceJet& jet, const OmegaJet& om,
                                                    Complex Q);

}  // namespace isozmc
