#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isozmc/iso_core.hpp"

// Weierstrass-type representation X = Re \int (h, 1, -i) eta dz for zero
// mean curvature surfaces in isotropic 3-space, specialized to the catalog
// of families with planar curvature lines and their conjugates.

namespace isozmc {

using Complex = std::complex<double>;
using CVec3 = Eigen::Vector3cd;

enum class FamilyTag {
  Plane,
  TrivialEnneper,
  Catenoid,
  EnneperType,
  BonnetType,
  DeformTanh,
  DeformPolar,
};

std::string to_string(FamilyTag tag);
std::optional<FamilyTag> family_tag_from_string(const std::string& name);

// Catalog entry. The canonical data satisfy eta = -1/h' so that the Hopf
// coefficient is exactly -1/2 (times i when conjugated, times -1 when
// point-reflected). display_normalization rescales eta by a unit constant
// to the textbook listing (e.g. catenoid (e^z, e^{-z} dz)); it flips the
// sign of eta for TrivialEnneper and Catenoid and is the identity elsewhere.
struct WeierstrassFamily {
  FamilyTag tag = FamilyTag::Plane;
  double alpha = 1.0;      // Catenoid, BonnetType, DeformTanh
  double beta = 1.0;       // EnneperType, BonnetType
  double r = 1.0;          // DeformPolar
  double theta = 0.7853981633974483;  // DeformPolar, in (0, pi/2)
  double c = 0.0;          // TrivialEnneper
  bool conjugated = false;
  bool point_reflected = false;
  bool display_normalization = false;

  static WeierstrassFamily plane();
  static WeierstrassFamily trivial_enneper(double c = 0.0);
  static WeierstrassFamily catenoid(double alpha = 1.0);
  static WeierstrassFamily enneper_type(double beta);
  static WeierstrassFamily bonnet_type(double alpha, double beta);
  static WeierstrassFamily deform_tanh(double alpha);
  static WeierstrassFamily deform_polar(double r, double theta);

  // i^conjugated * (-1)^point_reflected * display constant; |scale| = 1.
  Complex eta_scale() const;
  void validate() const;  // throws std::invalid_argument on bad parameters
};

struct QuadratureConfig {
  Complex base_point{0.0, 0.0};
  int panels = 8;
  int nodes = 16;  // Gauss-Legendre order per panel
};

Complex eval_h(const WeierstrassFamily& f, Complex z);
Complex eval_h_prime(const WeierstrassFamily& f, Complex z);
Complex eval_eta(const WeierstrassFamily& f, Complex z);
Complex eval_eta_prime(const WeierstrassFamily& f, Complex z);

// (h*eta, eta, -i*eta); the first component is evaluated in cancelled closed
// form, so the integrand is finite even at poles of h.
CVec3 eval_integrand(const WeierstrassFamily& f, Complex z);
CVec3 eval_integrand_prime(const WeierstrassFamily& f, Complex z);

/// X(z) = Re \int_{z0}^{z} integrand, straight segment, composite Gauss-Legendre.
Vec3 integrate_surface(const WeierstrassFamily& f, Complex z,
                       const QuadratureConfig& quad = {});

/// Same along a polyline of vertices (first vertex is the base point).
Vec3 integrate_along(const WeierstrassFamily& f, std::span<const Complex> polyline,
                     const QuadratureConfig& quad = {});

// eta -> i eta; applying it twice yields the point-reflected canonical family.
WeierstrassFamily conjugate(const WeierstrassFamily& f);

/// n = -1/2 (1+|h|^2, 2 Re h, -2 Im h, -1+|h|^2); <n,n> = 0 and <n,p> = 1.
Vec4 gauss_map_from_h(Complex h);

/// |eta(z)|; equals the conformal factor e^omega.
double metric_factor(const WeierstrassFamily& f, Complex z);

/// Q = 1/2 eta(z) h'(z); constant on every catalog family.
Complex hopf_coefficient(const WeierstrassFamily& f, Complex z);

/// The constant value of the Hopf coefficient (0 for the plane).
Complex hopf_constant(const WeierstrassFamily& f);

// Recovery of eta from its squared modulus R^2(u,v), complexified per family:
// eta(z) = R^2((z+conj(z0))/2, (z-conj(z0))/(2i)) / conj(eta(z0)).
// With the exact base value the recovery is exact; base_phase replaces
// eta(z0) by e^{i phase} R(z0), exhibiting the unit-modulus freedom.
Complex recover_eta_from_modulus(const WeierstrassFamily& f, Complex z0, Complex z);
Complex recover_eta_from_modulus(const WeierstrassFamily& f, Complex z0, Complex z,
                                 double base_phase);

/// Max coordinate difference of the integrals along two polylines sharing endpoints.
double path_independence_check(const WeierstrassFamily& f,
                               std::span<const Complex> path_a,
                               std::span<const Complex> path_b,
                               const QuadratureConfig& quad = {});

/// True when |eta(z)| is below the floor (metric degeneracy / pole of h).
bool near_degeneracy(const WeierstrassFamily& f, Complex z, double floor = 1e-12);

/// Gauss-Legendre nodes and weights on [-1,1], n >= 2.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace isozmc
