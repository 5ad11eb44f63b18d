#pragma once

// Symmetry of the bearing system: SO(3) acting on S² and on the input space
// U = R³ × R³, and the equivariant lift into so(3).

#include "eqbearing/geom3.hpp"

namespace eqbearing {

/// System input u = (ω, v̄). ω in rad/s; v̄ is the distance-scaled linear
/// velocity in 1/s. v̄ need not be tangent to the bearing (measured inputs
/// carry full 3D noise); its radial part never enters the lift.
struct InputPair {
  Vector3 omega = Vector3::Zero();
  Vector3 vbar = Vector3::Zero();

  static InputPair zero() { return {}; }
  bool finite() const { return omega.allFinite() && vbar.allFinite(); }
};

/// Coordinate origin on S². Defaults to e3.
struct Origin {
  UnitVector3 xi_ring = UnitVector3::e3();
};

/// State action φ(X, ξ) = Xᵀξ (right action).
UnitVector3 phi(const Rotation3& X, const UnitVector3& xi);

/// Input action ψ(X, u) = (Xᵀω, Xᵀv̄).
InputPair psi(const Rotation3& X, const InputPair& u);

/// Equivariant lift Λ(ξ, u) = S(ω + v̄ × ξ), returned in vector form.
AlgebraVector lift(const UnitVector3& xi, const InputPair& u);

/// Ω⊥ = v̄ × ξ, the angular velocity orthogonal to ξ that reproduces v̄.
Vector3 induced_angular_velocity(const UnitVector3& xi, const Vector3& vbar);

/// ||Dφ_X(ξ)[f(ξ,u)] - f(φ(X,ξ), ψ(X,u))||, both sides in closed form.
double check_equivariance(const Rotation3& X, const UnitVector3& xi, const InputPair& u);

struct LiftResiduals {
  /// ||-S(Λ(ξ,u))ξ - f(ξ,u)||
  double projection = 0.0;
  /// ||Xᵀ S(Λ(ξ,u)) X - S(Λ(φ(X,ξ), ψ(X,u)))||_F
  double equivariance = 0.0;
};

LiftResiduals check_lift_conditions(const Rotation3& X, const UnitVector3& xi,
                                    const InputPair& u);

/// True iff E moves the origin by at most `tol` radians. Throws if tol <= 0.
bool is_in_stabilizer(const Rotation3& E, double tol, const Origin& origin = {});

}  // namespace eqbearing
