#pragma once

// Ground truth for the bearing system: the vector field on S², its lift to
// SO(3), input signal generators and integrators for both representations.

#include <array>
#include <variant>

#include "eqbearing/geom3.hpp"
#include "eqbearing/rng.hpp"
#include "eqbearing/symmetry.hpp"

namespace eqbearing {

/// A sin(2πνt + φ)
struct Sinusoid {
  double amplitude = 0.0;
  double frequency = 0.0;  // Hz
  double phase = 0.0;      // rad

  double value(double t) const;
  double derivative(double t) const;
};

/// Per-axis sinusoids for ω and for the unprojected linear term v̄′.
struct SinusoidSpec {
  std::array<Sinusoid, 3> omega{};
  std::array<Sinusoid, 3> vprime{};

  /// Throws std::invalid_argument on A < 0, ν < 0 or φ outside [-π, π].
  void validate() const;
};

/// Per-axis c0 + c1 t + c2 t² + A sin(2πνt + φ).
struct Curve3 {
  Vector3 c0 = Vector3::Zero();
  Vector3 c1 = Vector3::Zero();
  Vector3 c2 = Vector3::Zero();
  Vector3 amplitude = Vector3::Zero();
  Vector3 frequency = Vector3::Zero();
  Vector3 phase = Vector3::Zero();

  Vector3 position(double t) const;
  Vector3 velocity(double t) const;
};

/// Vehicle and target trajectories. The vehicle attitude is
/// R(t) = R0 exp(t S(ω_body)), so ω_body is the body-frame angular velocity.
struct SceneSpec {
  Curve3 vehicle;
  Curve3 target;
  Rotation3 attitude0;
  Vector3 body_rate = Vector3::Zero();
  double min_distance = 1e-3;

  Rotation3 attitude(double t) const;
  /// Throws std::invalid_argument if the target comes closer than
  /// min_distance at any of the sample times k·dt, k·dt <= duration.
  void validate(double duration, double dt) const;
};

using InputSource = std::variant<SinusoidSpec, SceneSpec>;

/// ξ̇ = -S(ω)ξ + v̄
Vector3 bearing_derivative(const UnitVector3& xi, const InputPair& u);

/// Input (ω, v̄′) at time t before projection onto the tangent plane.
InputPair raw_input(double t, const InputSource& source);

/// (ω, Π_ξ v̄′) at time t.
InputPair sample_input(double t, const InputSource& source, const UnitVector3& xi);
InputPair sample_input(double t, const SinusoidSpec& spec, const UnitVector3& xi);

/// A, ν ~ U[0, 10], φ ~ U[-π, π] for every axis of both channels.
SinusoidSpec random_spec(Rng& rng);

/// Rᵀ(p_T - p_B)/||p_T - p_B||. Throws on coincident positions.
UnitVector3 scene_to_bearing(const Vector3& p_vehicle, const Vector3& p_target,
                             const Rotation3& R);

/// (1/||p||) Π_b Rᵀ ṗ with p = p_T - p_B. Throws on coincident positions.
Vector3 scene_to_vbar(const Vector3& p_vehicle, const Vector3& p_target,
                      const Vector3& v_vehicle, const Vector3& v_target, const Rotation3& R);

UnitVector3 scene_bearing_at(double t, const SceneSpec& scene);

struct TruthState {
  double t = 0.0;
  UnitVector3 xi;
  Rotation3 X;
  InputPair u_clean;  // clean input at time t
};

/// Builds a state with X chosen so that φ(X, ξ̊) = ξ exactly.
TruthState make_truth_state(double t, const UnitVector3& xi, const InputSource& source,
                            const Origin& origin = {});

enum class GroupIntegrator {
  /// X⁺ = X exp(h Λ(φ(X, ξ̊), u(t + h/2))). Same discretization as the
  /// observer replica, so a correctly initialized observer tracks it exactly.
  kLieEuler,
  /// Fourth-order commutator-free Lie group method (two exponentials per
  /// step, four lift evaluations). Used where the continuous-time flow
  /// itself is the reference.
  kCommutatorFree4,
};

/// Advances the lifted system Ẋ = X Λ(φ(X, ξ̊), u) by h > 0.
TruthState step_truth(const TruthState& state, const InputSource& source, double h,
                      GroupIntegrator integrator = GroupIntegrator::kLieEuler,
                      const Origin& origin = {});

/// Direct integration on S² with renormalization after each step.
UnitVector3 step_bearing_euler(const UnitVector3& xi, const InputSource& source, double t,
                               double h);
UnitVector3 step_bearing_rk4(const UnitVector3& xi, const InputSource& source, double t,
                             double h);

}  // namespace eqbearing
