#include "isozmc/catalog.hpp"

#include <cmath>

namespace isozmc {

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1a: return "case-1a";
    case CaseTag::Case1b: return "case-1b";
    case CaseTag::Case1c: return "case-1c";
    case CaseTag::Case2: return "case-2";
  }
  return "unknown";
}

CaseTag classify(double alpha, double beta) {
  if (alpha < 0.0 || beta < 0.0)
    throw std::invalid_argument("classify: alpha and beta must be non-negative");
  if (alpha > 0.0 && beta == 0.0) return CaseTag::Case1a;
  if (alpha == 0.0 && beta > 0.0) return CaseTag::Case1b;
  if (alpha > 0.0 && beta > 0.0) return CaseTag::Case1c;
  return CaseTag::Case2;
}

int ConformalFactorModel::denominator_sign() const {
  switch (tag) {
    case CaseTag::Case1a:
      return -1;  // f' + g' = -alpha e^{-alpha u}
    case CaseTag::Case1b:
      return ic == InitialCondition::ZeroAtOrigin ? +1 : -1;
    case CaseTag::Case1c:
      return ic == InitialCondition::ZeroAtOrigin ? +1 : -1;
    case CaseTag::Case2:
      return +1;  // not meaningful: f = g = 0
  }
  return +1;
}

ConformalFactorModel ConformalFactorModel::case1a(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("case1a: alpha must be positive");
  ConformalFactorModel m;
  m.tag = CaseTag::Case1a;
  m.alpha = alpha;
  return m;
}

ConformalFactorModel ConformalFactorModel::case1b(double beta, InitialCondition ic) {
  if (beta <= 0.0) throw std::invalid_argument("case1b: beta must be positive");
  ConformalFactorModel m;
  m.tag = CaseTag::Case1b;
  m.beta = beta;
  m.ic = ic;
  // f' + g' must not vanish identically; the sign of g is forced per variant.
  m.g_sign = (ic == InitialCondition::ZeroAtOrigin) ? +1 : -1;
  return m;
}

ConformalFactorModel ConformalFactorModel::case1c(double alpha, double beta,
                                                  InitialCondition ic, int g_sign) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("case1c: alpha and beta must be positive");
  if (g_sign != 1 && g_sign != -1) throw std::invalid_argument("g_sign must be +-1");
  ConformalFactorModel m;
  m.tag = CaseTag::Case1c;
  m.alpha = alpha;
  m.beta = beta;
  m.ic = ic;
  m.g_sign = g_sign;
  return m;
}

ConformalFactorModel ConformalFactorModel::case2(double c) {
  ConformalFactorModel m;
  m.tag = CaseTag::Case2;
  m.c = c;
  return m;
}

namespace {

double case1c_k(const ConformalFactorModel& m) {
  return std::sqrt(m.alpha * m.alpha + m.beta * m.beta);
}

}  // namespace

double eval_f(const ConformalFactorModel& m, double u) {
  switch (m.tag) {
    case CaseTag::Case1a:
      return std::exp(-m.alpha * u);
    case CaseTag::Case1b:
      return m.ic == InitialCondition::ZeroAtOrigin ? m.beta * u : 1.0 - m.beta * u;
    case CaseTag::Case1c:
      if (m.ic == InitialCondition::ZeroAtOrigin)
        return (m.beta / m.alpha) * std::sinh(m.alpha * u);
      return std::cosh(m.alpha * u) - (case1c_k(m) / m.alpha) * std::sinh(m.alpha * u);
    case CaseTag::Case2:
      return 0.0;
  }
  return 0.0;
}

double eval_f_u(const ConformalFactorModel& m, double u) {
  switch (m.tag) {
    case CaseTag::Case1a:
      return -m.alpha * std::exp(-m.alpha * u);
    case CaseTag::Case1b:
      return m.ic == InitialCondition::ZeroAtOrigin ? m.beta : -m.beta;
    case CaseTag::Case1c:
      if (m.ic == InitialCondition::ZeroAtOrigin) return m.beta * std::cosh(m.alpha * u);
      return m.alpha * std::sinh(m.alpha * u) - case1c_k(m) * std::cosh(m.alpha * u);
    case CaseTag::Case2:
      return 0.0;
  }
  return 0.0;
}

double eval_f_uu(const ConformalFactorModel& m, double u) {
  switch (m.tag) {
    case CaseTag::Case1a:
      return m.alpha * m.alpha * std::exp(-m.alpha * u);
    case CaseTag::Case1b:
      return 0.0;
    case CaseTag::Case1c:
      return m.alpha * m.alpha * eval_f(m, u);
    case CaseTag::Case2:
      return 0.0;
  }
  return 0.0;
}

double eval_g(const ConformalFactorModel& m, double v) {
  switch (m.tag) {
    case CaseTag::Case1a:
    case CaseTag::Case2:
      return 0.0;
    case CaseTag::Case1b:
      return m.g_sign * m.beta * v;
    case CaseTag::Case1c:
      return m.g_sign * (m.beta / m.alpha) * std::sin(m.alpha * v);
  }
  return 0.0;
}

double eval_g_v(const ConformalFactorModel& m, double v) {
  switch (m.tag) {
    case CaseTag::Case1a:
    case CaseTag::Case2:
      return 0.0;
    case CaseTag::Case1b:
      return m.g_sign * m.beta;
    case CaseTag::Case1c:
      return m.g_sign * m.beta * std::cos(m.alpha * v);
  }
  return 0.0;
}

double eval_g_vv(const ConformalFactorModel& m, double v) {
  if (m.tag != CaseTag::Case1c) return 0.0;
  return -m.alpha * m.alpha * eval_g(m, v);
}

double eval_omega(const ConformalFactorModel& m, double u, double v) {
  switch (m.tag) {
    case CaseTag::Case1a:
      return std::exp(-m.alpha * u) / m.alpha;
    case CaseTag::Case1b: {
      if (m.ic == InitialCondition::ZeroAtOrigin)
        return 0.5 * m.beta * (u * u + v * v);
      const double q = 1.0 - m.beta * u;
      return (q * q + m.beta * m.beta * v * v) / (2.0 * m.beta);
    }
    case CaseTag::Case1c: {
      const double a = m.alpha;
      if (m.ic == InitialCondition::ZeroAtOrigin)
        return (m.beta / (a * a)) * (std::cosh(a * u) - m.g_sign * std::cos(a * v));
      const double k = case1c_k(m);
      return (k * std::cosh(a * u) - a * std::sinh(a * u) +
              m.g_sign * m.beta * std::cos(a * v)) /
             (a * a);
    }
    case CaseTag::Case2:
      return std::exp(-m.c);
  }
  return 0.0;
}

bool metric_degenerate(const ConformalFactorModel& m, double u, double v, double floor) {
  return eval_omega(m, u, v) < floor;
}

OmegaJet omega_jet(const ConformalFactorModel& m, double u, double v) {
  OmegaJet jet;
  jet.e_omega = eval_omega(m, u, v);
  jet.degenerate = jet.e_omega < 1e-12;
  const double a = m.alpha;
  switch (m.tag) {
    case CaseTag::Case2:
      break;
    case CaseTag::Case1a:
      jet.omega_u = -a;
      break;
    case CaseTag::Case1b: {
      if (m.ic == InitialCondition::ZeroAtOrigin) {
        const double d = u * u + v * v;
        if (jet.degenerate) break;
        jet.omega_u = 2.0 * u / d;
        jet.omega_v = 2.0 * v / d;
        jet.omega_uu = 2.0 * (v * v - u * u) / (d * d);
        jet.omega_vv = 2.0 * (u * u - v * v) / (d * d);
        jet.omega_uv = -4.0 * u * v / (d * d);
      } else {
        const double b = m.beta;
        const double q = 1.0 - b * u;
        const double d = q * q + b * b * v * v;
        if (jet.degenerate) break;
        jet.omega_u = -2.0 * b * q / d;
        jet.omega_v = 2.0 * b * b * v / d;
        jet.omega_uu = 2.0 * b * b * (b * b * v * v - q * q) / (d * d);
        jet.omega_vv = 2.0 * b * b * (q * q - b * b * v * v) / (d * d);
        jet.omega_uv = 4.0 * b * b * b * q * v / (d * d);
      }
      break;
    }
    case CaseTag::Case1c: {
      const double sg = m.g_sign;
      const double sh = std::sinh(a * u), ch = std::cosh(a * u);
      const double sn = std::sin(a * v), cs = std::cos(a * v);
      if (m.ic == InitialCondition::ZeroAtOrigin) {
        const double d = ch - sg * cs;
        if (jet.degenerate) break;
        jet.omega_u = a * sh / d;
        jet.omega_v = sg * a * sn / d;
        jet.omega_uu = a * a * (ch * d - sh * sh) / (d * d);
        jet.omega_vv = a * a * (sg * cs * d - sn * sn) / (d * d);
        jet.omega_uv = -a * a * sg * sh * sn / (d * d);
      } else {
        const double k = case1c_k(m);
        const double b = m.beta;
        const double d = k * ch - a * sh + sg * b * cs;
        const double A = k * ch - a * sh;          // = d - sg b cos
        const double Ap = a * (k * sh - a * ch);   // dA/du
        if (jet.degenerate) break;
        jet.omega_u = Ap / d;
        jet.omega_v = -sg * a * b * sn / d;
        jet.omega_uu = (a * a * A * d - Ap * Ap) / (d * d);
        jet.omega_vv = -a * a * b * (sg * cs * d + b * sn * sn) / (d * d);
        jet.omega_uv = sg * a * b * sn * Ap / (d * d);
      }
      break;
    }
  }
  return jet;
}

std::array<double, 4> ode_residuals_from(double f, double f_u, double f_uu, double g,
                                         double g_v, double g_vv, double a, double b) {
  return {f_uu - a * f,
          f_u * f_u - a * f * f - b,
          g_vv + a * g,
          g_v * g_v + a * g * g - b};
}

std::array<double, 4> ode_residuals(const ConformalFactorModel& m, double u, double v) {
  return ode_residuals_from(eval_f(m, u), eval_f_u(m, u), eval_f_uu(m, u),
                            eval_g(m, v), eval_g_v(m, v), eval_g_vv(m, v),
                            m.a(), m.b());
}

std::pair<double, double> pde_residuals_from(double omega_u, double omega_v, double omega_uu,
                                             double omega_uv, double omega_vv) {
  return {omega_uu + omega_vv, omega_uv + omega_u * omega_v};
}

std::pair<double, double> pde_residuals(const ConformalFactorModel& m, double u, double v) {
  const OmegaJet jet = omega_jet(m, u, v);
  if (jet.degenerate) throw DegeneracyError("pde_residuals: metric degenerate point");
  return pde_residuals_from(jet.omega_u, jet.omega_v, jet.omega_uu, jet.omega_uv,
                            jet.omega_vv);
}

Vec3 closed_form_surface(const ClosedFormSurface& s, double u, double v) {
  switch (s.tag) {
    case SurfaceForm::TrivialEnneperX0:
      return Vec3(-0.5 * (u * u - v * v), -u, -v);
    case SurfaceForm::CatenoidXR:
      return Vec3(u, -std::exp(-u) * std::cos(v), std::exp(-u) * std::sin(v));
    case SurfaceForm::DeformXAlpha: {
      const double a = s.alpha;
      const double chu = std::cosh(a * u), shu = std::sinh(a * u);
      const double csv = std::cos(a * v), snv = std::sin(a * v);
      const double k = -0.5 / (a * a);
      return Vec3(k * 2.0 * (chu * csv - 1.0),
                  k * a * (shu * csv + a * u),
                  k * a * (chu * snv + a * v));
    }
  }
  return Vec3::Zero();
}

WeierstrassFamily deformation_data(DeformationKind kind, double param, double r) {
  switch (kind) {
    case DeformationKind::TanhPath:
      return WeierstrassFamily::deform_tanh(param);
    case DeformationKind::PolarPath:
      return WeierstrassFamily::deform_polar(r, param);
  }
  throw std::logic_error("unreachable deformation kind");
}

ConformalFactorModel paired_model(const WeierstrassFamily& f) {
  switch (f.tag) {
    case FamilyTag::Plane:
      return ConformalFactorModel::case2(0.0);
    case FamilyTag::TrivialEnneper:
      return ConformalFactorModel::case2(f.c);
    case FamilyTag::Catenoid:
      return ConformalFactorModel::case1a(f.alpha);
    case FamilyTag::EnneperType:
      return ConformalFactorModel::case1b(f.beta, InitialCondition::ZeroAtOrigin);
    case FamilyTag::BonnetType:
      return ConformalFactorModel::case1c(f.alpha, f.beta, InitialCondition::ZeroAtOrigin);
    case FamilyTag::DeformTanh:
      // beta = alpha^2/2 on the deformation path; shifted g branch.
      return ConformalFactorModel::case1c(f.alpha, 0.5 * f.alpha * f.alpha,
                                          InitialCondition::ZeroAtOrigin, -1);
    case FamilyTag::DeformPolar:
      return ConformalFactorModel::case1c(f.r * std::cos(f.theta), f.r * std::sin(f.theta),
                                          InitialCondition::OneAtOrigin, -1);
  }
  throw std::logic_error("unreachable family tag");
}

namespace {

struct LimitData {
  Complex h;
  Complex eta;
};

LimitData limit_values(LimitTarget target, double fixed, Complex z) {
  switch (target) {
    case LimitTarget::BonnetToEnneperType:
      return {2.0 / (fixed * z), 0.5 * fixed * z * z};
    case LimitTarget::TanhToTrivialEnneper:
      return {z, Complex{-1.0, 0.0}};
    case LimitTarget::PolarToCatenoid:
      return {std::exp(fixed * z), -std::exp(-fixed * z) / fixed};
    case LimitTarget::PolarToEnneperType: {
      const Complex w = fixed * z - 1.0;
      return {2.0 / w, w * w / (2.0 * fixed)};
    }
  }
  throw std::logic_error("unreachable limit target");
}

WeierstrassFamily family_on_path(LimitTarget target, double fixed, double param) {
  switch (target) {
    case LimitTarget::BonnetToEnneperType:
      return WeierstrassFamily::bonnet_type(param, fixed);
    case LimitTarget::TanhToTrivialEnneper:
      return WeierstrassFamily::deform_tanh(param);
    case LimitTarget::PolarToCatenoid:
    case LimitTarget::PolarToEnneperType:
      return WeierstrassFamily::deform_polar(fixed, param);
  }
  throw std::logic_error("unreachable limit target");
}

}  // namespace

std::vector<DeviationRow> limit_convergence_rate(LimitTarget target, double fixed_param,
                                                 std::span<const Complex> grid,
                                                 std::span<const double> params) {
  std::vector<DeviationRow> rows;
  rows.reserve(params.size());
  for (double param : params) {
    const WeierstrassFamily f = family_on_path(target, fixed_param, param);
    DeviationRow row;
    row.param = param;
    for (Complex z : grid) {
      const LimitData lim = limit_values(target, fixed_param, z);
      // Poles of the limit data (e.g. 2/(rz-1) at z = 1/r) and of the family
      // itself are not part of the comparison set.
      if (!std::isfinite(std::abs(lim.h)) || !std::isfinite(std::abs(lim.eta))) continue;
      try {
        row.h_dev = std::max(row.h_dev, std::abs(eval_h(f, z) - lim.h));
        row.eta_dev = std::max(row.eta_dev, std::abs(eval_eta(f, z) - lim.eta));
      } catch (const DegeneracyError&) {
        continue;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace isozmc
