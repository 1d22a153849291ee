#pragma once

#include <array>
#include <span>
#include <vector>

#include "isozmc/weierstrass.hpp"

// Closed-form conformal-factor models (omega, f, g), the classification of
// the planar-curvature-line condition, the explicit parametrizations, and
// the two deformation paths with their endpoint limits.

namespace isozmc {

enum class CaseTag { Case1a, Case1b, Case1c, Case2 };
enum class InitialCondition { ZeroAtOrigin, OneAtOrigin };

std::string to_string(CaseTag tag);

/// Case from the sign pattern of (alpha, beta); (0,0) is the constant case.
CaseTag classify(double alpha, double beta);

// A solution pair (f, g) of
//   f'' = a f,  f'^2 = a f^2 + b,  g'' = -a g,  g'^2 = -a g^2 + b
// with (a, b) = (alpha^2, beta^2), together with the conformal factor
//   e^omega = (f^2 + g^2) / (f' + g')   (taken with positive sign).
//
// ZeroAtOrigin fixes f(0) = g(0) = 0 where possible; OneAtOrigin fixes
// f(0) = 1, g(0) = 0. g_sign = -1 selects the v -> v + pi/alpha shifted
// branch g = -(beta/alpha) sin(alpha v) used by the deformation families.
struct ConformalFactorModel {
  CaseTag tag = CaseTag::Case2;
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;  // Case2 only: omega = -c
  InitialCondition ic = InitialCondition::ZeroAtOrigin;
  int g_sign = +1;

  double a() const { return alpha * alpha; }
  double b() const { return beta * beta; }

  // Sign of f' + g' on the domain: e^omega = sign * (f^2+g^2)/(f'+g').
  int denominator_sign() const;

  static ConformalFactorModel case1a(double alpha);
  static ConformalFactorModel case1b(double beta, InitialCondition ic);
  static ConformalFactorModel case1c(double alpha, double beta, InitialCondition ic,
                                     int g_sign = +1);
  static ConformalFactorModel case2(double c);
};

double eval_f(const ConformalFactorModel& m, double u);
double eval_f_u(const ConformalFactorModel& m, double u);
double eval_f_uu(const ConformalFactorModel& m, double u);
double eval_g(const ConformalFactorModel& m, double v);
double eval_g_v(const ConformalFactorModel& m, double v);
double eval_g_vv(const ConformalFactorModel& m, double v);

/// e^omega as a positive closed form; ~0 at the isolated metric degeneracies.
double eval_omega(const ConformalFactorModel& m, double u, double v);

bool metric_degenerate(const ConformalFactorModel& m, double u, double v,
                       double floor = 1e-12);

// omega and its first and second partials, all analytic per case.
struct OmegaJet {
  double e_omega = 1.0;
  double omega_u = 0.0, omega_v = 0.0;
  double omega_uu = 0.0, omega_uv = 0.0, omega_vv = 0.0;
  bool degenerate = false;
};
OmegaJet omega_jet(const ConformalFactorModel& m, double u, double v);

/// (f''-af, f'^2-af^2-b, g''+ag, g'^2+ag^2-b) with analytic derivatives.
std::array<double, 4> ode_residuals(const ConformalFactorModel& m, double u, double v);
std::array<double, 4> ode_residuals_from(double f, double f_u, double f_uu, double g,
                                         double g_v, double g_vv, double a, double b);

/// (omega_uu + omega_vv, omega_uv + omega_u omega_v).
std::pair<double, double> pde_residuals(const ConformalFactorModel& m, double u, double v);
std::pair<double, double> pde_residuals_from(double omega_u, double omega_v, double omega_uu,
                                             double omega_uv, double omega_vv);

enum class SurfaceForm { TrivialEnneperX0, CatenoidXR, DeformXAlpha };

struct ClosedFormSurface {
  SurfaceForm tag = SurfaceForm::TrivialEnneperX0;
  double alpha = 1.0;  // DeformXAlpha
};

Vec3 closed_form_surface(const ClosedFormSurface& s, double u, double v);

enum class DeformationKind { TanhPath, PolarPath };

/// TanhPath: param = alpha > 0. PolarPath: param = theta in (0, pi/2), r > 0.
WeierstrassFamily deformation_data(DeformationKind kind, double param, double r = 1.0);

/// The conformal-factor model whose metric matches the family's |eta|.
ConformalFactorModel paired_model(const WeierstrassFamily& f);

enum class LimitTarget {
  BonnetToEnneperType,   // alpha -> 0, beta fixed
  TanhToTrivialEnneper,  // alpha -> 0
  PolarToCatenoid,       // theta -> 0, r fixed
  PolarToEnneperType,    // theta -> pi/2, r fixed
};

struct DeviationRow {
  double param = 0.0;
  double h_dev = 0.0;
  double eta_dev = 0.0;
};

/// Max over the grid of |h_param - h_limit| and |eta_param - eta_limit|.
std::vector<DeviationRow> limit_convergence_rate(LimitTarget target, double fixed_param,
                                                 std::span<const Complex> grid,
                                                 std::span<const double> params);

}  // namespace isozmc
