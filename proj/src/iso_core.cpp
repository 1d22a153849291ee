#include "isozmc/iso_core.hpp"

namespace isozmc {

PlaneCarrier PlaneCarrier::from_unnormalized(const Vec4& m_raw, double q_raw) {
  const double scale = minkowski_form(m_raw, null_p());
  if (std::abs(scale) < 1e-14)
    throw DegeneracyError("plane carrier cannot be normalized: <m,p> = 0");
  return PlaneCarrier{m_raw / scale, q_raw / scale};
}

double PlaneCarrier::membership_residual(const Vec3& x) const {
  return minkowski_form(embed(x), m) - q;
}

double form_preservation_defect(const Mat4& A) {
  Mat4 G = Mat4::Identity();
  G(0, 0) = -1.0;
  return (A.transpose() * G * A - G).cwiseAbs().maxCoeff();
}

Isometry4 parabolic_rotation_e1(double v) {
  Isometry4 iso;
  const double h = 0.5 * v * v;
  iso.A << 1.0 + h, 0.0, v, -h,
           0.0, 1.0, 0.0, 0.0,
           -v, 0.0, -1.0, v,
           h, 0.0, v, 1.0 - h;
  return iso;
}

Isometry4 parabolic_rotation_e2(double u) {
  Isometry4 iso;
  const double h = 0.5 * u * u;
  iso.A << 1.0 + h, -u, 0.0, -h,
           u, -1.0, 0.0, -u,
           0.0, 0.0, 1.0, 0.0,
           h, -u, 0.0, 1.0 - h;
  return iso;
}

Vec3 parabolic_action(const Isometry4& P, double r, const Vec3& X) {
  if (!fixes_vertical_null(P.A))
    throw std::invalid_argument("parabolic_action: matrix does not fix p");
  const Vec4 shift = r * null_p_dual();
  const Vec4 image = P.A * (embed(X) + shift) - shift;
  return project(image);
}

}  // namespace isozmc
