#include "eqbearing/symmetry.hpp"

#include <stdexcept>

#include "eqbearing/dynamics.hpp"

namespace eqbearing {

UnitVector3 phi(const Rotation3& X, const UnitVector3& xi) {
  return UnitVector3(X.matrix().transpose() * xi.vec());
}

InputPair psi(const Rotation3& X, const InputPair& u) {
  const Matrix3 xt = X.matrix().transpose();
  return {xt * u.omega, xt * u.vbar};
}

AlgebraVector lift(const UnitVector3& xi, const InputPair& u) {
  return AlgebraVector(u.omega + u.vbar.cross(xi.vec()));
}

Vector3 induced_angular_velocity(const UnitVector3& xi, const Vector3& vbar) {
  return vbar.cross(xi.vec());
}

double check_equivariance(const Rotation3& X, const UnitVector3& xi, const InputPair& u) {
  const Matrix3 xt = X.matrix().transpose();
  // Differential of φ_X applied to the vector field: Xᵀ(-S(ω)ξ + v̄).
  const Vector3 lhs = xt * (-skew(u.omega) * xi.vec() + u.vbar);
  const Vector3 rhs = bearing_derivative(phi(X, xi), psi(X, u));
  return (lhs - rhs).norm();
}

LiftResiduals check_lift_conditions(const Rotation3& X, const UnitVector3& xi,
                                    const InputPair& u) {
  const Matrix3 lam = lift(xi, u).matrix();
  LiftResiduals r;
  r.projection = (-lam * xi.vec() - bearing_derivative(xi, u)).norm();
  const Matrix3 adjoint = X.matrix().transpose() * lam * X.matrix();
  r.equivariance = (adjoint - lift(phi(X, xi), psi(X, u)).matrix()).norm();
  return r;
}

bool is_in_stabilizer(const Rotation3& E, double tol, const Origin& origin) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("is_in_stabilizer: tol must be positive");
  }
  return geodesic_angle(phi(E, origin.xi_ring), origin.xi_ring) <= tol;
}

}  // namespace eqbearing
