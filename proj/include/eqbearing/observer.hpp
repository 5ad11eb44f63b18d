#pragma once

// Bearing observers: the equivariant observer on SO(3), its equivalent form on
// S², and the naive replica-plus-correction observer, with error diagnostics.

#include "eqbearing/geom3.hpp"
#include "eqbearing/symmetry.hpp"

namespace eqbearing {

struct GroupObserverState {
  Rotation3 Xhat;
  double k = 1.0;  // gain, 1/s
};

struct ManifoldObserverState {
  UnitVector3 xihat;
  double k = 1.0;
};

struct ErrorDiagnostics {
  Rotation3 E;             // X X̂ᵀ
  UnitVector3 e;           // φ(E, ξ̊)
  double V = 0.0;          // 1 - ξ̊ᵀ E ξ̊, in [0, 2]
  double Vdot = 0.0;       // -k ||Eᵀξ̊ × ξ̊||²
  double angle_err = 0.0;  // rad, between estimate(X̂) and ξ
};

/// Vector coordinates of the correction
///   Δ = S(X̂v̄ × X̂y - X̂v̄ × ξ̊ + k X̂y × ξ̊).
AlgebraVector correction(const Rotation3& Xhat, const UnitVector3& y, const Vector3& vbar,
                         double k, const Origin& origin = {});

/// ξ̂ = φ(X̂, ξ̊)
UnitVector3 estimate(const Rotation3& Xhat, const Origin& origin = {});

/// How a group observer step splits dX̂/dt = X̂ Λ(φ(X̂, ξ̊), u) + Δ X̂.
///
/// The right-hand side equals X̂ Λ(y, u) + k S(X̂y × ξ̊) X̂ identically, since
/// the input terms of Δ are X̂ (Λ(y, u) - Λ(ξ̂, u)) X̂ᵀ. The two splittings
/// below are first-order schemes for the same equation.
enum class GroupSplitting {
  /// X̂⁺ = exp(h k S(X̂y × ξ̊)) X̂ exp(h Λ(y, u)). Against a truth stepped as
  /// X exp(h Λ(ξ, u)) with y = ξ the discrete error obeys
  /// E⁺ = E exp(-h k S(Eᵀξ̊ × ξ̊)) for any input.
  kMeasuredLift,
  /// X̂⁺ = exp(hΔ) X̂ exp(h Λ(φ(X̂, ξ̊), u)): lift at the estimate, full
  /// correction on the left. Its per-step error carries commutators of the
  /// input terms.
  kReplicaLift,
};

/// One step of the equivariant observer, all terms evaluated at the pre-step
/// state.
GroupObserverState step_group_observer(const GroupObserverState& s, const UnitVector3& y,
                                       const InputPair& u, double h, const Origin& origin = {},
                                       GroupSplitting splitting = GroupSplitting::kMeasuredLift);

/// dξ̂/dt = -S(ω + v̄ × y) ξ̂ + k Π_ξ̂ y. The right-hand side is -S(b) ξ̂ with
/// b = ω + v̄ × y + k y × ξ̂; one step is ξ̂⁺ = exp(-h S(b)) ξ̂, a first-order
/// step that stays on the sphere.
ManifoldObserverState step_manifold_observer(const ManifoldObserverState& s,
                                             const UnitVector3& y, const InputPair& u, double h);

/// dξ̂/dt = -S(ω + v̄ × ξ̂) ξ̂ + k Π_ξ̂ y, stepped like the manifold observer.
ManifoldObserverState step_naive_observer(const ManifoldObserverState& s, const UnitVector3& y,
                                          const InputPair& u, double h);

ErrorDiagnostics diagnostics(const Rotation3& X, const Rotation3& Xhat, const UnitVector3& xi,
                             double k, const Origin& origin = {});

}  // namespace eqbearing
