#pragma once

#include <Eigen/Dense>
#include <stdexcept>

// Minkowski 4-space model of isotropic 3-space: the bilinear form of
// signature (-+++), the embedding (l,x,y) -> (l,x,y,l), planes, and the
// parabolic-rotation isometries.

namespace isozmc {

using Vec4 = Eigen::Vector4d;  // components (t, x, y, w)
using Vec3 = Eigen::Vector3d;  // coordinate model (l, x, y); also tangent vectors
using Mat4 = Eigen::Matrix4d;

// Raised when an evaluation hits a pole, a metric degeneracy, or an
// ill-conditioned solve. The CLI maps this to its own exit code.
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The vertical null direction p = (1,0,0,1); I^3 = { X : <X,p> = 0 }.
inline Vec4 null_p() { return Vec4(1.0, 0.0, 0.0, 1.0); }

/// The dual null vector p~ = (-1,0,0,1)/2 with <p,p~> = 1.
inline Vec4 null_p_dual() { return Vec4(-0.5, 0.0, 0.0, 0.5); }

/// <X,Y> = -t_X t_Y + x_X x_Y + y_X y_Y + w_X w_Y.
template <typename DA, typename DB>
double minkowski_form(const Eigen::MatrixBase<DA>& X, const Eigen::MatrixBase<DB>& Y) {
  return -X(0) * Y(0) + X(1) * Y(1) + X(2) * Y(2) + X(3) * Y(3);
}

/// Degenerate metric of I^3 on tangent vectors: the vertical part has zero length.
template <typename DA, typename DB>
double iso_inner(const Eigen::MatrixBase<DA>& U, const Eigen::MatrixBase<DB>& V) {
  return U(1) * V(1) + U(2) * V(2);
}

/// (l,x,y) -> (l,x,y,l); the image satisfies <embed(P), p> = 0 exactly.
template <typename D>
Vec4 embed(const Eigen::MatrixBase<D>& P) {
  return Vec4(P(0), P(1), P(2), P(0));
}

inline Vec3 project(const Vec4& X) { return Vec3(X(0), X(1), X(2)); }

inline bool in_isotropic_space(const Vec4& X, double tol = 1e-12) {
  return std::abs(minkowski_form(X, null_p())) <= tol;
}

// A plane P_{m,q} = { x in I^3 : <x,m> = q } with lightlike carrier m,
// normalized so that <m,p> = 1.
struct PlaneCarrier {
  Vec4 m = null_p_dual() * 2.0;
  double q = 0.0;

  static PlaneCarrier from_unnormalized(const Vec4& m_raw, double q_raw);
  double membership_residual(const Vec3& x) const;
};

// Linear part A (preserving the form, fixing p) plus the parabolic radius r
// of the affine action X -> A(X + r p~) - r p~.
struct Isometry4 {
  Mat4 A = Mat4::Identity();
  double r = 0.0;
};

/// max |A^T G A - G| with G = diag(-1,1,1,1).
double form_preservation_defect(const Mat4& A);
inline bool preserves_form(const Mat4& A, double tol = 1e-10) {
  return form_preservation_defect(A) <= tol;
}
inline bool fixes_vertical_null(const Mat4& A, double tol = 1e-10) {
  return ((A * null_p()) - null_p()).cwiseAbs().maxCoeff() <= tol;
}

// One-parameter subgroups of SO(2,0,1) fixing the spacelike axes e1, e2.
// The matrices are the exact polynomial families; note P_{e1}(0) is not the
// identity (its y-axis entry is -1), which is what makes the family close
// under the bilinear form.
Isometry4 parabolic_rotation_e1(double v);
Isometry4 parabolic_rotation_e2(double u);

/// X -> A(X + r p~) - r p~. Throws std::invalid_argument unless A fixes p.
Vec3 parabolic_action(const Isometry4& P, double r, const Vec3& X);

}  // namespace isozmc
