#include "isozmc/weierstrass.hpp"

#include <cmath>

namespace isozmc {

namespace {

constexpr double kPoleFloor = 1e-12;

const Complex kI{0.0, 1.0};

// Display rescaling of eta toward the textbook listing; unit modulus.
Complex display_scale(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::TrivialEnneper:
    case FamilyTag::Catenoid:
      return Complex{-1.0, 0.0};
    default:
      return Complex{1.0, 0.0};
  }
}

struct PolarConstants {
  double alpha;  // r cos(theta)
  double c;      // cos(theta)
  double s;      // sin(theta)
};

PolarConstants polar_constants(const WeierstrassFamily& f) {
  const double c = std::cos(f.theta);
  const double s = std::sin(f.theta);
  return {f.r * c, c, s};
}

// Denominator of the polar-path h: e^{-alpha z}(cos+1) - sin.
Complex polar_denominator(const PolarConstants& p, Complex z) {
  return std::exp(-p.alpha * z) * (p.c + 1.0) - p.s;
}

}  // namespace

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::Plane: return "plane";
    case FamilyTag::TrivialEnneper: return "trivial-enneper";
    case FamilyTag::Catenoid: return "catenoid";
    case FamilyTag::EnneperType: return "enneper";
    case FamilyTag::BonnetType: return "bonnet";
    case FamilyTag::DeformTanh: return "deform-tanh";
    case FamilyTag::DeformPolar: return "deform-polar";
  }
  return "unknown";
}

std::optional<FamilyTag> family_tag_from_string(const std::string& name) {
  for (FamilyTag tag : {FamilyTag::Plane, FamilyTag::TrivialEnneper, FamilyTag::Catenoid,
                        FamilyTag::EnneperType, FamilyTag::BonnetType, FamilyTag::DeformTanh,
                        FamilyTag::DeformPolar}) {
    if (to_string(tag) == name) return tag;
  }
  return std::nullopt;
}

WeierstrassFamily WeierstrassFamily::plane() { return {FamilyTag::Plane}; }

WeierstrassFamily WeierstrassFamily::trivial_enneper(double c) {
  WeierstrassFamily f{FamilyTag::TrivialEnneper};
  f.c = c;
  return f;
}

WeierstrassFamily WeierstrassFamily::catenoid(double alpha) {
  WeierstrassFamily f{FamilyTag::Catenoid};
  f.alpha = alpha;
  f.validate();
  return f;
}

WeierstrassFamily WeierstrassFamily::enneper_type(double beta) {
  WeierstrassFamily f{FamilyTag::EnneperType};
  f.beta = beta;
  f.validate();
  return f;
}

WeierstrassFamily WeierstrassFamily::bonnet_type(double alpha, double beta) {
  WeierstrassFamily f{FamilyTag::BonnetType};
  f.alpha = alpha;
  f.beta = beta;
  f.validate();
  return f;
}

WeierstrassFamily WeierstrassFamily::deform_tanh(double alpha) {
  WeierstrassFamily f{FamilyTag::DeformTanh};
  f.alpha = alpha;
  f.validate();
  return f;
}

WeierstrassFamily WeierstrassFamily::deform_polar(double r, double theta) {
  WeierstrassFamily f{FamilyTag::DeformPolar};
  f.r = r;
  f.theta = theta;
  f.validate();
  return f;
}

void WeierstrassFamily::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  switch (tag) {
    case FamilyTag::Plane:
    case FamilyTag::TrivialEnneper:
      break;
    case FamilyTag::Catenoid:
    case FamilyTag::DeformTanh:
      require(alpha > 0.0, "alpha must be positive");
      break;
    case FamilyTag::EnneperType:
      require(beta > 0.0, "beta must be positive");
      break;
    case FamilyTag::BonnetType:
      require(alpha > 0.0, "alpha must be positive");
      require(beta > 0.0, "beta must be positive");
      break;
    case FamilyTag::DeformPolar:
      require(r > 0.0, "r must be positive");
      require(theta > 0.0 && theta < 1.5707963267948966, "theta must lie in (0, pi/2)");
      break;
  }
}

Complex WeierstrassFamily::eta_scale() const {
  Complex scale{1.0, 0.0};
  if (conjugated) scale *= kI;
  if (point_reflected) scale *= -1.0;
  if (display_normalization) scale *= display_scale(tag);
  return scale;
}

Complex eval_h(const WeierstrassFamily& f, Complex z) {
  switch (f.tag) {
    case FamilyTag::Plane:
      return {0.0, 0.0};
    case FamilyTag::TrivialEnneper:
      return std::exp(f.c) * z;
    case FamilyTag::Catenoid:
      return std::exp(f.alpha * z);
    case FamilyTag::EnneperType: {
      if (std::abs(z) < kPoleFloor) throw DegeneracyError("enneper h: pole at z = 0");
      return 2.0 / (f.beta * z);
    }
    case FamilyTag::BonnetType: {
      const Complex sh = std::sinh(0.5 * f.alpha * z);
      if (std::abs(sh) < kPoleFloor) throw DegeneracyError("bonnet h: pole of coth");
      return (f.alpha / f.beta) * std::cosh(0.5 * f.alpha * z) / sh;
    }
    case FamilyTag::DeformTanh: {
      const Complex ch = std::cosh(0.5 * f.alpha * z);
      if (std::abs(ch) < kPoleFloor) throw DegeneracyError("deform-tanh h: pole of tanh");
      return (2.0 / f.alpha) * std::sinh(0.5 * f.alpha * z) / ch;
    }
    case FamilyTag::DeformPolar: {
      const PolarConstants p = polar_constants(f);
      const Complex den = polar_denominator(p, z);
      if (std::abs(den) < kPoleFloor) throw DegeneracyError("deform-polar h: denominator vanishes");
      return 2.0 * std::exp(2.0 * kI * f.theta) * p.c / den;
    }
  }
  throw std::logic_error("unreachable family tag");
}

Complex eval_h_prime(const WeierstrassFamily& f, Complex z) {
  switch (f.tag) {
    case FamilyTag::Plane:
      return {0.0, 0.0};
    case FamilyTag::TrivialEnneper:
      return {std::exp(f.c), 0.0};
    case FamilyTag::Catenoid:
      return f.alpha * std::exp(f.alpha * z);
    case FamilyTag::EnneperType: {
      if (std::abs(z) < kPoleFloor) throw DegeneracyError("enneper h': pole at z = 0");
      return -2.0 / (f.beta * z * z);
    }
    case FamilyTag::BonnetType: {
      const Complex sh = std::sinh(0.5 * f.alpha * z);
      if (std::abs(sh) < kPoleFloor) throw DegeneracyError("bonnet h': pole of coth");
      return -f.alpha * f.alpha / (2.0 * f.beta * sh * sh);
    }
    case FamilyTag::DeformTanh: {
      const Complex ch = std::cosh(0.5 * f.alpha * z);
      if (std::abs(ch) < kPoleFloor) throw DegeneracyError("deform-tanh h': pole of tanh");
      return 1.0 / (ch * ch);
    }
    case FamilyTag::DeformPolar: {
      const PolarConstants p = polar_constants(f);
      const Complex den = polar_denominator(p, z);
      if (std::abs(den) < kPoleFloor) throw DegeneracyError("deform-polar h': denominator vanishes");
      const Complex num = 2.0 * std::exp(2.0 * kI * f.theta) * p.c * p.alpha *
                          std::exp(-p.alpha * z) * (p.c + 1.0);
      return num / (den * den);
    }
  }
  throw std::logic_error("unreachable family tag");
}

namespace {

// Canonical eta (before the unit eta_scale factor); entire for every family.
Complex canonical_eta(const WeierstrassFamily& f, Complex z) {
  switch (f.tag) {
    case FamilyTag::Plane:
      return {1.0, 0.0};
    case FamilyTag::TrivialEnneper:
      return {-std::exp(-f.c), 0.0};
    case FamilyTag::Catenoid:
      return -std::exp(-f.alpha * z) / f.alpha;
    case FamilyTag::EnneperType:
      return 0.5 * f.beta * z * z;
    case FamilyTag::BonnetType: {
      const Complex sh = std::sinh(0.5 * f.alpha * z);
      return (2.0 * f.beta / (f.alpha * f.alpha)) * sh * sh;
    }
    case FamilyTag::DeformTanh: {
      const Complex ch = std::cosh(0.5 * f.alpha * z);
      return -ch * ch;
    }
    case FamilyTag::DeformPolar: {
      const PolarConstants p = polar_constants(f);
      const Complex num = p.c * std::sinh(p.alpha * z) - std::cosh(p.alpha * z) + p.s;
      return std::exp(-2.0 * kI * f.theta) * num / (f.r * p.c * p.c);
    }
  }
  throw std::logic_error("unreachable family tag");
}

Complex canonical_eta_prime(const WeierstrassFamily& f, Complex z) {
  switch (f.tag) {
    case FamilyTag::Plane:
    case FamilyTag::TrivialEnneper:
      return {0.0, 0.0};
    case FamilyTag::Catenoid:
      return std::exp(-f.alpha * z);
    case FamilyTag::EnneperType:
      return f.beta * z;
    case FamilyTag::BonnetType:
      return (f.beta / f.alpha) * std::sinh(f.alpha * z);
    case FamilyTag::DeformTanh:
      return -0.5 * f.alpha * std::sinh(f.alpha * z);
    case FamilyTag::DeformPolar: {
      const PolarConstants p = polar_constants(f);
      const Complex num = p.alpha * (p.c * std::cosh(p.alpha * z) - std::sinh(p.alpha * z));
      return std::exp(-2.0 * kI * f.theta) * num / (f.r * p.c * p.c);
    }
  }
  throw std::logic_error("unreachable family tag");
}

// h * canonical eta in cancelled closed form (poles of h cancel against the
// double zeros of eta).
Complex canonical_h_eta(const WeierstrassFamily& f, Complex z) {
  switch (f.tag) {
    case FamilyTag::Plane:
      return {0.0, 0.0};
    case FamilyTag::TrivialEnneper:
      return -z;
    case FamilyTag::Catenoid:
      return {-1.0 / f.alpha, 0.0};
    case FamilyTag::EnneperType:
      return z;
    case FamilyTag::BonnetType:
      return std::sinh(f.alpha * z) / f.alpha;
    case FamilyTag::DeformTanh:
      return -std::sinh(f.alpha * z) / f.alpha;
    case FamilyTag::DeformPolar: {
      const PolarConstants p = polar_constants(f);
      return -1.0 / p.alpha + (p.s / (p.alpha * (p.c + 1.0))) * std::exp(p.alpha * z);
    }
  }
  throw std::logic_error("unreachable family tag");
}

Complex canonical_h_eta_prime(const WeierstrassFamily& f, Complex z) {
  switch (f.tag) {
    case FamilyTag::Plane:
      return {0.0, 0.0};
    case FamilyTag::TrivialEnneper:
      return {-1.0, 0.0};
    case FamilyTag::Catenoid:
      return {0.0, 0.0};
    case FamilyTag::EnneperType:
      return {1.0, 0.0};
    case FamilyTag::BonnetType:
      return std::cosh(f.alpha * z);
    case FamilyTag::DeformTanh:
      return -std::cosh(f.alpha * z);
    case FamilyTag::DeformPolar: {
      const PolarConstants p = polar_constants(f);
      return (p.s / (p.c + 1.0)) * std::exp(p.alpha * z);
    }
  }
  throw std::logic_error("unreachable family tag");
}

}  // namespace

Complex eval_eta(const WeierstrassFamily& f, Complex z) {
  return f.eta_scale() * canonical_eta(f, z);
}

Complex eval_eta_prime(const WeierstrassFamily& f, Complex z) {
  return f.eta_scale() * canonical_eta_prime(f, z);
}

CVec3 eval_integrand(const WeierstrassFamily& f, Complex z) {
  const Complex scale = f.eta_scale();
  const Complex eta = scale * canonical_eta(f, z);
  const Complex h_eta = scale * canonical_h_eta(f, z);
  CVec3 w;
  w << h_eta, eta, -kI * eta;
  if (!w.allFinite()) throw DegeneracyError("non-finite integrand");
  return w;
}

CVec3 eval_integrand_prime(const WeierstrassFamily& f, Complex z) {
  const Complex scale = f.eta_scale();
  const Complex deta = scale * canonical_eta_prime(f, z);
  const Complex dh_eta = scale * canonical_h_eta_prime(f, z);
  CVec3 w;
  w << dh_eta, deta, -kI * deta;
  return w;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[k] = -x;
    nodes[n - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[k] = w;
    weights[n - 1 - k] = w;
  }
}

namespace {

CVec3 integrate_segment(const WeierstrassFamily& f, Complex a, Complex b,
                        const QuadratureConfig& quad,
                        const std::vector<double>& nodes,
                        const std::vector<double>& weights) {
  CVec3 total = CVec3::Zero();
  const Complex step = (b - a) / static_cast<double>(quad.panels);
  for (int p = 0; p < quad.panels; ++p) {
    const Complex lo = a + static_cast<double>(p) * step;
    const Complex mid = lo + 0.5 * step;
    CVec3 acc = CVec3::Zero();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Complex zeta = mid + 0.5 * step * nodes[k];
      acc += weights[k] * eval_integrand(f, zeta);
    }
    total += (0.5 * step) * acc;
  }
  return total;
}

void validate_quadrature(const QuadratureConfig& quad) {
  if (quad.panels < 1) throw std::invalid_argument("quadrature: panels must be >= 1");
  if (quad.nodes < 2) throw std::invalid_argument("quadrature: order must be >= 2");
}

}  // namespace

Vec3 integrate_surface(const WeierstrassFamily& f, Complex z, const QuadratureConfig& quad) {
  validate_quadrature(quad);
  std::vector<double> nodes, weights;
  gauss_legendre(quad.nodes, nodes, weights);
  const CVec3 value = integrate_segment(f, quad.base_point, z, quad, nodes, weights);
  return value.real();
}

Vec3 integrate_along(const WeierstrassFamily& f, std::span<const Complex> polyline,
                     const QuadratureConfig& quad) {
  validate_quadrature(quad);
  if (polyline.size() < 2) throw std::invalid_argument("polyline needs at least two vertices");
  std::vector<double> nodes, weights;
  gauss_legendre(quad.nodes, nodes, weights);
  CVec3 total = CVec3::Zero();
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i)
    total += integrate_segment(f, polyline[i], polyline[i + 1], quad, nodes, weights);
  return total.real();
}

WeierstrassFamily conjugate(const WeierstrassFamily& f) {
  WeierstrassFamily g = f;
  if (!f.conjugated) {
    g.conjugated = true;
  } else {
    // i * i = -1: back to the canonical family with a point reflection.
    g.conjugated = false;
    g.point_reflected = !f.point_reflected;
  }
  return g;
}

Vec4 gauss_map_from_h(Complex h) {
  const double m2 = std::norm(h);
  return Vec4(-0.5 * (1.0 + m2), -h.real(), h.imag(), -0.5 * (m2 - 1.0));
}

double metric_factor(const WeierstrassFamily& f, Complex z) {
  return std::abs(canonical_eta(f, z));
}

Complex hopf_coefficient(const WeierstrassFamily& f, Complex z) {
  if (f.tag == FamilyTag::Plane) return {0.0, 0.0};
  return 0.5 * eval_eta(f, z) * eval_h_prime(f, z);
}

Complex hopf_constant(const WeierstrassFamily& f) {
  if (f.tag == FamilyTag::Plane) return {0.0, 0.0};
  return -0.5 * f.eta_scale();
}

namespace {

// Squared modulus |eta|^2 = R^2(u,v) complexified: both slots accept complex
// arguments. Evaluated at ((z+conj(z0))/2, (z-conj(z0))/(2i)).
Complex modulus_squared_complexified(const WeierstrassFamily& f, Complex a, Complex b) {
  switch (f.tag) {
    case FamilyTag::Plane:
      return {1.0, 0.0};
    case FamilyTag::TrivialEnneper:
      return {std::exp(-2.0 * f.c), 0.0};
    case FamilyTag::Catenoid:
      return std::exp(-2.0 * f.alpha * a) / (f.alpha * f.alpha);
    case FamilyTag::EnneperType: {
      const Complex q = a * a + b * b;
      return 0.25 * f.beta * f.beta * q * q;
    }
    case FamilyTag::BonnetType: {
      const double k = f.beta / (f.alpha * f.alpha);
      const Complex d = std::cosh(f.alpha * a) - std::cos(f.alpha * b);
      return k * k * d * d;
    }
    case FamilyTag::DeformTanh: {
      const Complex d = std::cosh(f.alpha * a) + std::cos(f.alpha * b);
      return 0.25 * d * d;
    }
    case FamilyTag::DeformPolar: {
      const PolarConstants p = polar_constants(f);
      auto phi = [&](Complex w) {
        return p.c * std::sinh(p.alpha * w) - std::cosh(p.alpha * w) + p.s;
      };
      const double k = 1.0 / (f.r * p.c * p.c);
      return k * k * phi(a + kI * b) * phi(a - kI * b);
    }
  }
  throw std::logic_error("unreachable family tag");
}

Complex recover_impl(const WeierstrassFamily& f, Complex z0, Complex z, Complex eta_at_base) {
  if (std::abs(eta_at_base) < kPoleFloor)
    throw DegeneracyError("recover_eta: eta vanishes at the base point; choose another");
  const Complex a = 0.5 * (z + std::conj(z0));
  const Complex b = (z - std::conj(z0)) / (2.0 * kI);
  return modulus_squared_complexified(f, a, b) / std::conj(eta_at_base);
}

}  // namespace

Complex recover_eta_from_modulus(const WeierstrassFamily& f, Complex z0, Complex z) {
  return recover_impl(f, z0, z, eval_eta(f, z0));
}

Complex recover_eta_from_modulus(const WeierstrassFamily& f, Complex z0, Complex z,
                                 double base_phase) {
  const Complex base = std::polar(metric_factor(f, z0), base_phase);
  return recover_impl(f, z0, z, base);
}

double path_independence_check(const WeierstrassFamily& f,
                               std::span<const Complex> path_a,
                               std::span<const Complex> path_b,
                               const QuadratureConfig& quad) {
  if (path_a.front() != path_b.front() || path_a.back() != path_b.back())
    throw std::invalid_argument("path_independence_check: endpoints differ");
  const Vec3 xa = integrate_along(f, path_a, quad);
  const Vec3 xb = integrate_along(f, path_b, quad);
  return (xa - xb).cwiseAbs().maxCoeff();
}

bool near_degeneracy(const WeierstrassFamily& f, Complex z, double floor) {
  return metric_factor(f, z) < floor;
}

}  // namespace isozmc
