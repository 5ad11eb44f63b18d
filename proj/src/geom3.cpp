#include "eqbearing/geom3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqbearing {

namespace {

// Rotation products are re-projected once rounding drift passes this level,
// well inside Rotation3::kOrthogonalityTol.
constexpr double kDriftRepairTol = 1e-13;

bool all_finite(const Vector3& v) { return v.allFinite(); }

}  // namespace

UnitVector3::UnitVector3(const Vector3& v) {
  if (!all_finite(v)) {
    throw std::invalid_argument("UnitVector3: non-finite component");
  }
  const double n = v.norm();
  if (!(n > 0.0)) {
    throw std::invalid_argument("UnitVector3: zero vector has no direction");
  }
  v_ = v / n;
}

UnitVector3 UnitVector3::operator-() const {
  UnitVector3 out;
  out.v_ = -v_;
  return out;
}

Matrix3 AlgebraVector::matrix() const { return skew(w); }

Rotation3::Rotation3(const Matrix3& m) : m_(m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("Rotation3: non-finite entry");
  }
  if (orthogonality_error() > kOrthogonalityTol) {
    throw std::invalid_argument("Rotation3: matrix is not orthogonal");
  }
  if (!(m.determinant() > 0.0)) {
    throw std::invalid_argument("Rotation3: determinant is not positive");
  }
}

Rotation3 Rotation3::about_axis(int axis, double angle) {
  if (axis < 0 || axis > 2) {
    throw std::invalid_argument("Rotation3::about_axis: axis must be 0, 1 or 2");
  }
  Vector3 w = Vector3::Zero();
  w[axis] = angle;
  return exp_so3(w);
}

Rotation3 Rotation3::transpose() const { return Rotation3(m_.transpose(), Unchecked{}); }

Rotation3 Rotation3::operator*(const Rotation3& o) const {
  Rotation3 out(m_ * o.m_, Unchecked{});
  if (out.orthogonality_error() > kDriftRepairTol) {
    return orthonormalize(out.m_);
  }
  return out;
}

UnitVector3 Rotation3::operator*(const UnitVector3& v) const { return UnitVector3(m_ * v.vec()); }

double Rotation3::orthogonality_error() const {
  return (m_.transpose() * m_ - Matrix3::Identity()).norm();
}

Matrix3 skew(const Vector3& a) {
  Matrix3 s;
  s << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return s;
}

Vector3 unskew(const Matrix3& m) {
  return 0.5 * Vector3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Vector3 project_tangent(const UnitVector3& y, const Vector3& x) {
  const Vector3& yv = y.vec();
  return x - yv * yv.dot(x);
}

Rotation3 exp_so3(const AlgebraVector& w) {
  const double theta2 = w.w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a;  // sin θ / θ
  double b;  // (1 - cos θ) / θ²
  if (theta < 1e-8) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Matrix3 k = skew(w.w);
  return Rotation3(Matrix3::Identity() + a * k + b * (k * k), Rotation3::Unchecked{});
}

Rotation3 rotation_between(const UnitVector3& a, const UnitVector3& b) {
  const Vector3& av = a.vec();
  const Vector3& bv = b.vec();
  const double c = av.dot(bv);
  if (c < -1.0 + 1e-12) {
    int least = 0;
    av.cwiseAbs().minCoeff(&least);
    const Vector3 axis = av.cross(Vector3::Unit(least)).normalized();
    return exp_so3(Vector3(M_PI * axis));
  }
  const Vector3 cross = av.cross(bv);
  const double s = cross.norm();
  if (s == 0.0) {
    return Rotation3::identity();
  }
  const double angle = std::atan2(s, c);
  return exp_so3(Vector3(cross * (angle / s)));
}

double geodesic_angle(const UnitVector3& a, const UnitVector3& b) {
  return std::acos(std::clamp(a.dot(b.vec()), -1.0, 1.0));
}

Rotation3 orthonormalize(const Matrix3& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("orthonormalize: non-finite entry");
  }
  Eigen::JacobiSVD<Matrix3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix3 r = svd.matrixU() * svd.matrixV().transpose();
  if (!(r.determinant() > 0.0)) {
    throw std::invalid_argument("orthonormalize: nearest orthogonal matrix is a reflection");
  }
  if ((m - r).norm() > 0.5) {
    throw std::invalid_argument("orthonormalize: input is too far from SO(3)");
  }
  return Rotation3(r, Rotation3::Unchecked{});
}

}  // namespace eqbearing
