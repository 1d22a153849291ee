#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "isozmc/diffgeo.hpp"
#include "oracles.hpp"

using namespace isozmc;

namespace {

const Complex I{0.0, 1.0};

WeierstrassFamily display_catenoid() {
  WeierstrassFamily f = WeierstrassFamily::catenoid(1.0);
  f.display_normalization = true;
  return f;
}

}  // namespace

TEST_CASE("analytic jets evaluate the integrand and its derivative") {
  const SurfaceJet cat = analytic_jet(display_catenoid(), {0, 0});
  CHECK((cat.X_u - Vec3(1, 1, 0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cat.X_v - Vec3(0, 0, 1)).cwiseAbs().maxCoeff() == 0.0);

  const SurfaceJet plane = analytic_jet(WeierstrassFamily::plane(), {2.0, -1.0});
  CHECK(plane.X_uu.cwiseAbs().maxCoeff() == 0.0);
  CHECK(plane.X_uv.cwiseAbs().maxCoeff() == 0.0);

  const SurfaceJet triv = analytic_jet(WeierstrassFamily::trivial_enneper(), {0.0, 1.0});
  CHECK((triv.X_u - Vec3(0, -1, 0)).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("jet positions integrate from the base point") {
  const SurfaceJet jet = analytic_jet(display_catenoid(), {1.0, 0.0});
  CHECK(jet.X(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jet.X(1) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("finite-difference jets against analytic jets") {
  const WeierstrassFamily cat = display_catenoid();
  const auto sampler = [&](double u, double v) {
    return oracle::surface_point(cat, Complex(u, v));
  };
  for (Complex z : {Complex{0.3, 0.8}, Complex{-0.5, 0.2}}) {
    const SurfaceJet fd = fd_jet(sampler, z.real(), z.imag(), 1e-3);
    const SurfaceJet an = analytic_jet(cat, z);
    CHECK((fd.X_u - an.X_u).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((fd.X_v - an.X_v).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((fd.X_uu - an.X_uu).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((fd.X_uv - an.X_uv).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((fd.X_vv - an.X_vv).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((fd.n - an.n).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("fd jet of the flat plane") {
  const auto flat = [](double u, double v) { return Vec3(0.0, u, v); };
  const SurfaceJet jet = fd_jet(flat, 0.4, -1.2, 1e-3);
  CHECK(jet.X_uu.cwiseAbs().maxCoeff() == 0.0);
  CHECK(jet.X_uv.cwiseAbs().maxCoeff() == 0.0);
  CHECK((jet.n - Vec4(-0.5, 0, 0, 0.5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fd jet is exact on the quadratic surface") {
  const auto x0 = [](double u, double v) {
    return closed_form_surface({SurfaceForm::TrivialEnneperX0}, u, v);
  };
  const SurfaceJet jet = fd_jet(x0, 0.7, -0.4, 1e-3);
  CHECK(jet.X_uv.cwiseAbs().maxCoeff() <= 1e-11);
  CHECK((jet.X_uu - Vec3(-1, 0, 0)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("fd jet rejects rank-deficient tangent data") {
  const auto collapsed = [](double u, double v) { return Vec3(u + v, u + v, u + v); };
  CHECK_THROWS_AS(fd_jet(collapsed, 0.0, 0.0, 1e-3), DegeneracyError);
}

TEST_CASE("mean curvature vanishes on the catalog and not on the sphere graph") {
  for (const auto& f : {WeierstrassFamily::catenoid(1.0),
                        WeierstrassFamily::bonnet_type(1.0, 1.0),
                        WeierstrassFamily::deform_tanh(1.0)}) {
    for (Complex z : {Complex{0.9, 0.6}, Complex{-0.4, 1.1}}) {
      CHECK(std::abs(mean_curvature(analytic_jet(f, z))) <= 1e-10);
    }
  }
  // Isotropic sphere l = (x^2+y^2)/2: strictly curved.
  const auto bowl = [](double u, double v) { return Vec3(0.5 * (u * u + v * v), u, v); };
  const SurfaceJet jet = fd_jet(bowl, 0.0, 0.0, 1e-3);
  CHECK(std::abs(mean_curvature(jet)) > 0.1);
}

TEST_CASE("Hopf coefficient from jets agrees with the Weierstrass route") {
  for (auto f : {WeierstrassFamily::catenoid(1.0), WeierstrassFamily::enneper_type(2.0),
                 WeierstrassFamily::bonnet_type(1.0, 1.0)}) {
    for (bool conj : {false, true}) {
      f.conjugated = conj;
      const Complex z{0.8, 0.5};
      const Complex q_jet = hopf_from_jet(analytic_jet(f, z));
      const Complex q_w = hopf_coefficient(f, z);
      CHECK(std::abs(q_jet - q_w) <= 1e-8);
      CHECK(std::abs(q_jet - (conj ? -0.5 * I : Complex{-0.5, 0.0})) <= 1e-8);
    }
  }
}

TEST_CASE("coordinate lines of the trivial Enneper surface are parabolas") {
  const auto line = extract_coordinate_polyline(WeierstrassFamily::trivial_enneper(),
                                                CoordDirection::ULine, 1.0, -2.0, 2.0, 64);
  CHECK(plane_fit_residual(line) <= 1e-14);
}

TEST_CASE("catenoid profile circles are planar") {
  const auto line = extract_coordinate_polyline(display_catenoid(), CoordDirection::VLine,
                                                0.0, 0.0, 2.0 * M_PI, 64);
  CHECK(plane_fit_residual(line) <= 1e-12);
}

TEST_CASE("helicoid coordinate helices are not planar") {
  const WeierstrassFamily helicoid = conjugate(WeierstrassFamily::catenoid(1.0));
  const auto helix = extract_coordinate_polyline(helicoid, CoordDirection::VLine, 0.0, 0.0,
                                                 2.0 * M_PI, 64);
  CHECK(plane_fit_residual(helix) >= 1e-2);
  // The closed form (v, e^{-u} sin v, e^{-u} cos v - 1) reproduces the samples.
  for (std::size_t k = 0; k < helix.size(); k += 9) {
    const double v = 2.0 * M_PI * k / 63.0;
    const Vec3 expected(v, std::sin(v), std::cos(v) - 1.0);
    CHECK((helix[k] - expected).cwiseAbs().maxCoeff() <= 1e-10);
  }
  // The other family is ruled: straight lines fit a plane trivially.
  const auto ruling = extract_coordinate_polyline(helicoid, CoordDirection::ULine, 0.7, -1.0,
                                                  1.0, 16);
  const PlaneFitResult fit = fit_plane(ruling);
  CHECK(fit.residual <= 1e-12);
  CHECK(fit.rank_deficient);
}

TEST_CASE("plane fit degenerate inputs") {
  std::vector<Vec3> collinear;
  for (int i = 0; i < 8; ++i) collinear.push_back(Vec3(i, 2.0 * i, -i));
  const PlaneFitResult fit = fit_plane(collinear);
  CHECK(fit.residual <= 1e-14);
  CHECK(fit.rank_deficient);

  std::vector<Vec3> coincident(5, Vec3(1, 2, 3));
  CHECK_THROWS_AS(fit_plane(coincident), std::invalid_argument);
  std::vector<Vec3> too_few{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  CHECK_THROWS_AS(fit_plane(too_few), std::invalid_argument);
}

TEST_CASE("axial directions on the Bonnet family") {
  const WeierstrassFamily f = WeierstrassFamily::bonnet_type(1.0, 1.0);
  const ConformalFactorModel m = paired_model(f);
  const AxialResult at = axial_directions(m, f, {1.0, 0.7});
  REQUIRE(at.has_w1);
  REQUIRE(at.has_w2);
  CHECK(std::abs(at.w1_norm2 - 1.0) <= 1e-8);
  CHECK(std::abs(at.w2_norm2 - 1.0) <= 1e-8);
  CHECK(std::abs(at.w1_dot_w2) <= 1e-8);
  REQUIRE(at.has_m1);
  REQUIRE(at.has_m2);
  CHECK(std::abs(at.m1_dot_w1) <= 1e-8);
  CHECK(std::abs(at.m2_dot_w2) <= 1e-8);
}

TEST_CASE("axial directions on the Enneper family stay constant on a grid") {
  const WeierstrassFamily f = WeierstrassFamily::enneper_type(2.0);
  const ConformalFactorModel m = paired_model(f);
  std::vector<AxialResult> results;
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j)
      results.push_back(
          axial_directions(m, f, Complex(0.3 + 1.2 * i / 20.0, 0.3 + 1.2 * j / 20.0)));
  const CarrierCheckResult agg = plane_carrier_checks(results, m.beta);
  CHECK(agg.w1_constancy <= 1e-7);
  CHECK(agg.w2_constancy <= 1e-7);
  CHECK(agg.max_w1_norm_err <= 1e-7);
  CHECK(agg.max_w2_norm_err <= 1e-7);
  CHECK(agg.max_w1_dot_w2 <= 1e-7);
  CHECK(agg.max_m1_w1 <= 1e-7);
  CHECK(agg.max_m2_w2 <= 1e-7);
}

TEST_CASE("the rotational family has no second axial direction") {
  const WeierstrassFamily f = WeierstrassFamily::catenoid(1.0);
  const ConformalFactorModel m = paired_model(f);
  const AxialResult at = axial_directions(m, f, {0.5, 0.5});
  CHECK(at.has_w1);
  CHECK_FALSE(at.has_w2);
  CHECK_FALSE(at.has_m1);  // omega_v = 0: the u-line planes have no carrier here
  CHECK(at.has_m2);
  CHECK_THROWS_AS(at.require_w2(), std::domain_error);
  CHECK_NOTHROW(at.require_w1());
}

TEST_CASE("perturbing the surface destroys axial constancy") {
  const WeierstrassFamily f = WeierstrassFamily::enneper_type(2.0);
  const ConformalFactorModel m = paired_model(f);
  const auto perturbed = [&](double u, double v) {
    return oracle::surface_point(f, Complex(u, v)) + Vec3(0.01 * u * u * u, 0.0, 0.0);
  };
  std::vector<AxialResult> results;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      const double u = 0.4 + 1.0 * i / 8.0, v = 0.4 + 1.0 * j / 8.0;
      const SurfaceJet jet = fd_jet(perturbed, u, v, 1e-3);
      results.push_back(axial_directions(m, omega_jet(m, u, v), jet));
    }
  }
  const CarrierCheckResult agg = plane_carrier_checks(results, m.beta);
  CHECK(agg.w1_constancy > 1e-3);
}

TEST_CASE("affine forms on asymptotic patches") {
  const WeierstrassFamily helicoid = conjugate(WeierstrassFamily::catenoid(1.0));
  for (Complex z : {Complex{0.3, 0.9}, Complex{-0.6, 2.0}}) {
    const SurfaceJet jet = analytic_jet(helicoid, z, {}, false);
    const AffineData data = affine_forms(jet);
    CHECK(std::abs(data.Lt) <= 1e-8);
    CHECK(std::abs(data.Nt) <= 1e-8);
    const double e2w = std::exp(-2.0 * z.real());
    CHECK(data.Mt == doctest::Approx(e2w).epsilon(1e-8));
    REQUIRE(data.has_normal);
  }
}

TEST_CASE("conjugate trivial Enneper has a constant affine normal") {
  const WeierstrassFamily conj_triv = conjugate(WeierstrassFamily::trivial_enneper());
  Vec3 first;
  for (int k = 0; k < 5; ++k) {
    const SurfaceJet jet = analytic_jet(conj_triv, Complex(0.2 * k, -0.3 * k), {}, false);
    const AffineData data = affine_forms(jet);
    REQUIRE(data.has_normal);
    if (k == 0)
      first = data.normal;
    else
      CHECK((data.normal - first).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(std::abs(std::abs(first(0)) - 1.0) <= 1e-12);
}

TEST_CASE("isothermic patches fail the asymptotic identities") {
  const SurfaceJet jet = analytic_jet(display_catenoid(), {0.0, 0.5}, {}, false);
  const AffineData data = affine_forms(jet);
  CHECK(std::abs(data.Lt) > 0.1);
  CHECK(std::abs(data.Nt) > 0.1);
}

TEST_CASE("affine shape operator: minimality of the conjugated catalog") {
  const std::vector<WeierstrassFamily> families = {
      conjugate(WeierstrassFamily::catenoid(1.0)),
      conjugate(WeierstrassFamily::trivial_enneper()),
      conjugate(WeierstrassFamily::enneper_type(2.0)),
      conjugate(WeierstrassFamily::bonnet_type(1.0, 1.0)),
  };
  for (const auto& f : families) {
    const Complex z = f.tag == FamilyTag::EnneperType ? Complex{0.9, 0.8} : Complex{0.8, 1.1};
    const AffineShapeResult shape = affine_shape(f, z, 1e-3);
    CHECK(std::abs(shape.H) <= 1e-4);
    CHECK(std::abs(shape.H_direct) <= 1e-4);
    CHECK(shape.solve_residual <= 1e-5);
  }
}

TEST_CASE("least-squares shape operator matches its omega closed form") {
  // On an asymptotic patch S = -e^{-omega} [[w_uv + w_u w_v, w_vv - w_u^2],
  //                                         [w_uu - w_v^2,   w_uv + w_u w_v]].
  const std::vector<WeierstrassFamily> families = {
      conjugate(WeierstrassFamily::catenoid(1.0)),
      conjugate(WeierstrassFamily::bonnet_type(1.0, 1.0)),
  };
  for (const auto& f : families) {
    const ConformalFactorModel model = paired_model(f);
    const Complex z{0.8, 1.1};
    const OmegaJet om = omega_jet(model, z.real(), z.imag());
    const double k = -1.0 / om.e_omega;
    Eigen::Matrix2d expected;
    expected << k * (om.omega_uv + om.omega_u * om.omega_v),
        k * (om.omega_vv - om.omega_u * om.omega_u),
        k * (om.omega_uu - om.omega_v * om.omega_v),
        k * (om.omega_uv + om.omega_u * om.omega_v);
    const AffineShapeResult shape = affine_shape(f, z, 1e-3);
    CHECK((shape.S - expected).cwiseAbs().maxCoeff() <= 1e-5);
  }
}

TEST_CASE("gauss-weingarten residuals for both normalizations") {
  for (auto f : {WeierstrassFamily::catenoid(1.0), WeierstrassFamily::bonnet_type(1.0, 1.0),
                 WeierstrassFamily::deform_polar(1.0, 0.7853981633974483)}) {
    const ConformalFactorModel m = paired_model(f);
    for (bool conj : {false, true}) {
      f.conjugated = conj;
      const Complex z = f.tag == FamilyTag::DeformPolar ? Complex{-0.4, 0.8}
                                                        : Complex{0.9, 0.7};
      const SurfaceJet jet = analytic_jet(f, z, {}, false);
      const OmegaJet om = omega_jet(m, z.real(), z.imag());
      const auto res = gauss_weingarten_residuals(jet, om, hopf_constant(f));
      CHECK(res.max() <= 1e-10);
    }
  }
}

TEST_CASE("the double conjugate satisfies the reflected structure equations") {
  const WeierstrassFamily twice =
      conjugate(conjugate(WeierstrassFamily::bonnet_type(1.0, 1.0)));
  const ConformalFactorModel m = paired_model(twice);
  const Complex z{0.9, 0.7};
  const SurfaceJet jet = analytic_jet(twice, z, {}, false);
  const OmegaJet om = omega_jet(m, z.real(), z.imag());
  CHECK(std::abs(hopf_constant(twice) - Complex{0.5, 0.0}) == 0.0);
  CHECK(gauss_weingarten_residuals(jet, om, hopf_constant(twice)).max() <= 1e-10);
}
