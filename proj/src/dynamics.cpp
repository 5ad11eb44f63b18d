#include "eqbearing/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eqbearing {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("step size must be positive and finite");
  }
}

void validate_sinusoid(const Sinusoid& s, const char* what) {
  if (!(s.amplitude >= 0.0) || !(s.frequency >= 0.0) || !(s.phase >= -M_PI && s.phase <= M_PI)) {
    throw std::invalid_argument(std::string("SinusoidSpec: invalid ") + what +
                                " component (need A >= 0, nu >= 0, phase in [-pi, pi])");
  }
}

Vector3 eval(const std::array<Sinusoid, 3>& axes, double t) {
  return {axes[0].value(t), axes[1].value(t), axes[2].value(t)};
}

// Lift evaluated at the state a group element represents.
Vector3 lift_at(const Rotation3& X, double t, const InputSource& source, const Origin& origin) {
  const UnitVector3 xi = phi(X, origin.xi_ring);
  return lift(xi, raw_input(t, source)).w;
}

}  // namespace

double Sinusoid::value(double t) const {
  return amplitude * std::sin(kTwoPi * frequency * t + phase);
}

double Sinusoid::derivative(double t) const {
  return amplitude * kTwoPi * frequency * std::cos(kTwoPi * frequency * t + phase);
}

void SinusoidSpec::validate() const {
  for (const auto& s : omega) validate_sinusoid(s, "omega");
  for (const auto& s : vprime) validate_sinusoid(s, "vprime");
}

Vector3 Curve3::position(double t) const {
  Vector3 p = c0 + c1 * t + c2 * (t * t);
  for (int i = 0; i < 3; ++i) {
    p[i] += amplitude[i] * std::sin(kTwoPi * frequency[i] * t + phase[i]);
  }
  return p;
}

Vector3 Curve3::velocity(double t) const {
  Vector3 v = c1 + c2 * (2.0 * t);
  for (int i = 0; i < 3; ++i) {
    v[i] += amplitude[i] * kTwoPi * frequency[i] * std::cos(kTwoPi * frequency[i] * t + phase[i]);
  }
  return v;
}

Rotation3 SceneSpec::attitude(double t) const { return attitude0 * exp_so3(Vector3(body_rate * t)); }

void SceneSpec::validate(double duration, double dt) const {
  if (!(min_distance > 0.0)) {
    throw std::invalid_argument("SceneSpec: min_distance must be positive");
  }
  if (!(dt > 0.0) || !(duration > 0.0)) {
    throw std::invalid_argument("SceneSpec: duration and dt must be positive");
  }
  const auto steps = static_cast<long long>(std::floor(duration / dt + 1e-9));
  for (long long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    if ((target.position(t) - vehicle.position(t)).norm() < min_distance) {
      throw std::invalid_argument("SceneSpec: target closer than min_distance at t = " +
                                  std::to_string(t));
    }
  }
}

Vector3 bearing_derivative(const UnitVector3& xi, const InputPair& u) {
  return -u.omega.cross(xi.vec()) + u.vbar;
}

InputPair raw_input(double t, const InputSource& source) {
  if (const auto* spec = std::get_if<SinusoidSpec>(&source)) {
    return {eval(spec->omega, t), eval(spec->vprime, t)};
  }
  const auto& scene = std::get<SceneSpec>(source);
  const Vector3 p = scene.target.position(t) - scene.vehicle.position(t);
  const double dist = p.norm();
  if (!(dist > 0.0)) {
    throw std::invalid_argument("raw_input: vehicle and target coincide");
  }
  const Vector3 pdot = scene.target.velocity(t) - scene.vehicle.velocity(t);
  return {scene.body_rate, scene.attitude(t).matrix().transpose() * pdot / dist};
}

InputPair sample_input(double t, const InputSource& source, const UnitVector3& xi) {
  InputPair u = raw_input(t, source);
  u.vbar = project_tangent(xi, u.vbar);
  return u;
}

InputPair sample_input(double t, const SinusoidSpec& spec, const UnitVector3& xi) {
  return {eval(spec.omega, t), project_tangent(xi, eval(spec.vprime, t))};
}

SinusoidSpec random_spec(Rng& rng) {
  std::uniform_real_distribution<double> mag(0.0, 10.0);
  std::uniform_real_distribution<double> ph(-M_PI, M_PI);
  SinusoidSpec spec;
  auto draw = [&](Sinusoid& s) {
    s.amplitude = mag(rng);
    s.frequency = mag(rng);
    s.phase = ph(rng);
  };
  for (auto& s : spec.vprime) draw(s);
  for (auto& s : spec.omega) draw(s);
  return spec;
}

UnitVector3 scene_to_bearing(const Vector3& p_vehicle, const Vector3& p_target,
                             const Rotation3& R) {
  const Vector3 p = p_target - p_vehicle;
  if (!(p.norm() > 0.0)) {
    throw std::invalid_argument("scene_to_bearing: vehicle and target coincide");
  }
  return UnitVector3(R.matrix().transpose() * p);
}

Vector3 scene_to_vbar(const Vector3& p_vehicle, const Vector3& p_target,
                      const Vector3& v_vehicle, const Vector3& v_target, const Rotation3& R) {
  const Vector3 p = p_target - p_vehicle;
  const double dist = p.norm();
  if (!(dist > 0.0)) {
    throw std::invalid_argument("scene_to_vbar: vehicle and target coincide");
  }
  const UnitVector3 b = scene_to_bearing(p_vehicle, p_target, R);
  return project_tangent(b, R.matrix().transpose() * (v_target - v_vehicle)) / dist;
}

UnitVector3 scene_bearing_at(double t, const SceneSpec& scene) {
  return scene_to_bearing(scene.vehicle.position(t), scene.target.position(t), scene.attitude(t));
}

TruthState make_truth_state(double t, const UnitVector3& xi, const InputSource& source,
                            const Origin& origin) {
  TruthState s;
  s.t = t;
  s.X = rotation_between(origin.xi_ring, xi).transpose();
  s.xi = phi(s.X, origin.xi_ring);
  s.u_clean = sample_input(t, source, s.xi);
  return s;
}

TruthState step_truth(const TruthState& state, const InputSource& source, double h,
                      GroupIntegrator integrator, const Origin& origin) {
  check_step(h);
  const double t = state.t;
  const Rotation3& X = state.X;
  Rotation3 next;
  if (integrator == GroupIntegrator::kLieEuler) {
    next = X * exp_so3(Vector3(h * lift_at(X, t + 0.5 * h, source, origin)));
  } else {
    // Stage values l_i = h Λ at (t + c_i h, X_i), c = (0, 1/2, 1/2, 1).
    const Vector3 l1 = h * lift_at(X, t, source, origin);
    const Rotation3 x2 = X * exp_so3(Vector3(0.5 * l1));
    const Vector3 l2 = h * lift_at(x2, t + 0.5 * h, source, origin);
    const Rotation3 x3 = X * exp_so3(Vector3(0.5 * l2));
    const Vector3 l3 = h * lift_at(x3, t + 0.5 * h, source, origin);
    const Rotation3 x4 = x2 * exp_so3(Vector3(l3 - 0.5 * l1));
    const Vector3 l4 = h * lift_at(x4, t + h, source, origin);
    const Vector3 first = 0.25 * l1 + (l2 + l3) / 6.0 - l4 / 12.0;
    const Vector3 second = -l1 / 12.0 + (l2 + l3) / 6.0 + 0.25 * l4;
    next = X * exp_so3(first) * exp_so3(second);
  }
  TruthState out;
  out.t = t + h;
  out.X = next;
  out.xi = phi(next, origin.xi_ring);
  out.u_clean = sample_input(out.t, source, out.xi);
  return out;
}

UnitVector3 step_bearing_euler(const UnitVector3& xi, const InputSource& source, double t,
                               double h) {
  check_step(h);
  const InputPair u = sample_input(t + 0.5 * h, source, xi);
  return UnitVector3(xi.vec() + h * bearing_derivative(xi, u));
}

UnitVector3 step_bearing_rk4(const UnitVector3& xi, const InputSource& source, double t,
                             double h) {
  check_step(h);
  // Ambient field; v̄′ is projected along the (unnormalized) stage point.
  auto field = [&](double tt, const Vector3& x) -> Vector3 {
    const InputPair u = raw_input(tt, source);
    const double n2 = x.squaredNorm();
    const Vector3 vbar = u.vbar - x * (x.dot(u.vbar) / n2);
    return -u.omega.cross(x) + vbar;
  };
  const Vector3 x0 = xi.vec();
  const Vector3 k1 = field(t, x0);
  const Vector3 k2 = field(t + 0.5 * h, x0 + 0.5 * h * k1);
  const Vector3 k3 = field(t + 0.5 * h, x0 + 0.5 * h * k2);
  const Vector3 k4 = field(t + h, x0 + h * k3);
  return UnitVector3(x0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace eqbearing
