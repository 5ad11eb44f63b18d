#pragma once

#include <Eigen/Dense>

namespace eqbearing {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Point on the unit sphere S². Construction normalizes; the zero vector and
/// non-finite input are rejected with std::invalid_argument.
class UnitVector3 {
 public:
  /// e3, the default origin.
  UnitVector3() : v_(0.0, 0.0, 1.0) {}
  explicit UnitVector3(const Vector3& v);
  UnitVector3(double x, double y, double z) : UnitVector3(Vector3(x, y, z)) {}

  static UnitVector3 e1() { return UnitVector3(1.0, 0.0, 0.0); }
  static UnitVector3 e2() { return UnitVector3(0.0, 1.0, 0.0); }
  static UnitVector3 e3() { return UnitVector3(0.0, 0.0, 1.0); }

  const Vector3& vec() const { return v_; }
  operator const Vector3&() const { return v_; }  // NOLINT
  double operator[](int i) const { return v_[i]; }
  double dot(const Vector3& o) const { return v_.dot(o); }
  UnitVector3 operator-() const;

 private:
  Vector3 v_;
};

/// Coordinates of an so(3) element; S(w) is materialized by skew() on demand.
struct AlgebraVector {
  Vector3 w = Vector3::Zero();

  AlgebraVector() = default;
  explicit AlgebraVector(const Vector3& v) : w(v) {}

  Matrix3 matrix() const;
};

/// Element of SO(3) stored as a 3x3 matrix.
///
/// The checked constructor enforces ||RᵀR - I||_F <= kOrthogonalityTol and
/// det R > 0. Group operations keep the invariant up to rounding; callers
/// that compose many factors can re-project with orthonormalize().
class Rotation3 {
 public:
  static constexpr double kOrthogonalityTol = 1e-9;

  Rotation3() : m_(Matrix3::Identity()) {}
  explicit Rotation3(const Matrix3& m);

  static Rotation3 identity() { return Rotation3(); }
  /// Rotation by `angle` about a basis axis (0 = x, 1 = y, 2 = z).
  static Rotation3 about_axis(int axis, double angle);

  const Matrix3& matrix() const { return m_; }
  Rotation3 transpose() const;
  Rotation3 inverse() const { return transpose(); }

  Rotation3 operator*(const Rotation3& o) const;
  Vector3 operator*(const Vector3& v) const { return m_ * v; }
  /// Renormalizes the image.
  UnitVector3 operator*(const UnitVector3& v) const;

  /// ||RᵀR - I||_F
  double orthogonality_error() const;

 private:
  struct Unchecked {};
  Rotation3(const Matrix3& m, Unchecked) : m_(m) {}
  friend Rotation3 exp_so3(const AlgebraVector&);
  friend Rotation3 orthonormalize(const Matrix3&);

  Matrix3 m_;
};

Matrix3 skew(const Vector3& a);
/// Inverse of skew() for an antisymmetric argument (uses the antisymmetric part).
Vector3 unskew(const Matrix3& m);

/// (I - yyᵀ)x
Vector3 project_tangent(const UnitVector3& y, const Vector3& x);

/// Rodrigues formula with a series expansion below 1e-8 rad.
Rotation3 exp_so3(const AlgebraVector& w);
inline Rotation3 exp_so3(const Vector3& w) { return exp_so3(AlgebraVector(w)); }

/// Rotation R with R·a = b about the axis a×b. Antipodal inputs rotate by π
/// about a×e_k, e_k the basis vector least aligned with a.
Rotation3 rotation_between(const UnitVector3& a, const UnitVector3& b);

/// arccos(clamp(aᵀb, -1, 1)) in [0, π].
double geodesic_angle(const UnitVector3& a, const UnitVector3& b);

/// Nearest rotation in the Frobenius sense (polar factor). Throws
/// std::invalid_argument when the input is farther than 0.5 from SO(3) or the
/// projection is a reflection.
Rotation3 orthonormalize(const Matrix3& m);

}  // namespace eqbearing
