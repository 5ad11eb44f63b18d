#include "eqbearing/observer.hpp"

#include <cmath>
#include <stdexcept>

namespace eqbearing {

namespace {

void check_step(double h, double k) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("observer: step size must be positive and finite");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("observer: gain k must be positive and finite");
  }
}

// k Π_ξ̂ y = -S(k y × ξ̂) ξ̂, so the whole right-hand side is -S(b) ξ̂ and the
// step rotates ξ̂ by exp(-h S(b)) with b frozen at the pre-step state.
ManifoldObserverState rotate_on_sphere(const ManifoldObserverState& s, const UnitVector3& y,
                                       const Vector3& transport, double h) {
  const Vector3 b = transport + s.k * y.vec().cross(s.xihat.vec());
  return {exp_so3(Vector3(-h * b)) * s.xihat, s.k};
}

}  // namespace

AlgebraVector correction(const Rotation3& Xhat, const UnitVector3& y, const Vector3& vbar,
                         double k, const Origin& origin) {
  const Vector3& ring = origin.xi_ring.vec();
  const Vector3 xv = Xhat * vbar;
  const Vector3 xy = Xhat * y.vec();
  return AlgebraVector(xv.cross(xy) - xv.cross(ring) + k * xy.cross(ring));
}

UnitVector3 estimate(const Rotation3& Xhat, const Origin& origin) {
  return phi(Xhat, origin.xi_ring);
}

GroupObserverState step_group_observer(const GroupObserverState& s, const UnitVector3& y,
                                       const InputPair& u, double h, const Origin& origin,
                                       GroupSplitting splitting) {
  check_step(h, s.k);
  if (splitting == GroupSplitting::kMeasuredLift) {
    const Vector3 innovation = s.k * (s.Xhat * y.vec()).cross(origin.xi_ring.vec());
    return {exp_so3(Vector3(h * innovation)) * s.Xhat * exp_so3(Vector3(h * lift(y, u).w)), s.k};
  }
  const AlgebraVector replica = lift(estimate(s.Xhat, origin), u);
  const AlgebraVector delta = correction(s.Xhat, y, u.vbar, s.k, origin);
  return {exp_so3(Vector3(h * delta.w)) * s.Xhat * exp_so3(Vector3(h * replica.w)), s.k};
}

ManifoldObserverState step_manifold_observer(const ManifoldObserverState& s,
                                             const UnitVector3& y, const InputPair& u, double h) {
  check_step(h, s.k);
  // The measurement, not the estimate, enters the transport term.
  return rotate_on_sphere(s, y, u.omega + u.vbar.cross(y.vec()), h);
}

ManifoldObserverState step_naive_observer(const ManifoldObserverState& s, const UnitVector3& y,
                                          const InputPair& u, double h) {
  check_step(h, s.k);
  return rotate_on_sphere(s, y, u.omega + u.vbar.cross(s.xihat.vec()), h);
}

ErrorDiagnostics diagnostics(const Rotation3& X, const Rotation3& Xhat, const UnitVector3& xi,
                             double k, const Origin& origin) {
  const Vector3& ring = origin.xi_ring.vec();
  ErrorDiagnostics d;
  d.E = X * Xhat.transpose();
  d.e = phi(d.E, origin.xi_ring);
  d.V = 1.0 - ring.dot(d.E * ring);
  d.Vdot = -k * (d.E.matrix().transpose() * ring).cross(ring).squaredNorm();
  d.angle_err = geodesic_angle(estimate(Xhat, origin), xi);
  return d;
}

}  // namespace eqbearing
