#include "eqbearing/dynamics.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace eqbearing {
namespace {

using testing::random_direction;
using testing::random_rotation;
using testing::random_tangent_input;
using testing::random_vector;

// Constant signal A via sin(π/2) with ν = 0.
SinusoidSpec constant_spec(const Vector3& omega, const Vector3& vprime) {
  SinusoidSpec s;
  for (int i = 0; i < 3; ++i) {
    s.omega[i] = {std::abs(omega[i]), 0.0, omega[i] < 0 ? -M_PI / 2 : M_PI / 2};
    s.vprime[i] = {std::abs(vprime[i]), 0.0, vprime[i] < 0 ? -M_PI / 2 : M_PI / 2};
  }
  return s;
}

TEST(BearingDerivative, Examples) {
  EXPECT_EQ(bearing_derivative(UnitVector3::e3(), {Vector3::Zero(), Vector3(1, 0, 0)}),
            Vector3(1, 0, 0));
  EXPECT_EQ(bearing_derivative(UnitVector3::e3(), {Vector3(0, 0, 1), Vector3::Zero()}),
            Vector3::Zero());
}

TEST(BearingDerivative, AgreesWithLiftForm) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const UnitVector3 xi = random_direction(rng);
    const InputPair u = random_tangent_input(rng, xi);
    const Vector3 direct = bearing_derivative(xi, u);
    const Vector3 lifted = -skew(u.omega + u.vbar.cross(xi.vec())) * xi.vec();
    EXPECT_LE((direct - lifted).norm(), 1e-12);
    EXPECT_LE(std::abs(xi.dot(direct)), 1e-12);
  }
}

TEST(SampleInput, Examples) {
  std::mt19937_64 rng(32);
  SinusoidSpec spec = random_spec(rng);
  for (auto* axes : {&spec.omega, &spec.vprime}) {
    for (auto& s : *axes) s.phase = 0.0;
  }
  const InputPair at_zero = sample_input(0.0, spec, UnitVector3(1, 1, 1));
  EXPECT_EQ(at_zero.omega, Vector3::Zero());
  EXPECT_LE(at_zero.vbar.norm(), 0.0);

  const SinusoidSpec silent{};
  for (double t : {0.0, 0.37, 12.5}) {
    const InputPair u = sample_input(t, silent, UnitVector3::e2());
    EXPECT_EQ(u.omega, Vector3::Zero());
    EXPECT_EQ(u.vbar, Vector3::Zero());
  }

  const SinusoidSpec random = random_spec(rng);
  for (int i = 0; i < 200; ++i) {
    const UnitVector3 xi = random_direction(rng);
    EXPECT_LE(std::abs(xi.dot(sample_input(0.01 * i, random, xi).vbar)), 1e-12);
  }
}

TEST(SampleInput, FollowsSinusoidFormula) {
  SinusoidSpec s;
  s.omega[1] = {2.0, 3.0, 0.5};
  s.vprime[2] = {4.0, 0.25, -1.0};
  const double t = 0.8;
  const InputPair u = raw_input(t, s);
  EXPECT_DOUBLE_EQ(u.omega[1], 2.0 * std::sin(2 * M_PI * 3.0 * t + 0.5));
  EXPECT_DOUBLE_EQ(u.vbar[2], 4.0 * std::sin(2 * M_PI * 0.25 * t - 1.0));
}

TEST(RandomSpec, DeterministicAndInRange) {
  Rng a = make_stream(99, Stream::kInputs);
  Rng b = make_stream(99, Stream::kInputs);
  const SinusoidSpec sa = random_spec(a);
  const SinusoidSpec sb = random_spec(b);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(sa.omega[i].amplitude, sb.omega[i].amplitude);
    EXPECT_EQ(sa.vprime[i].phase, sb.vprime[i].phase);
  }
  Rng rng = make_stream(7, Stream::kInputs);
  double sum = 0.0;
  int count = 0;
  for (int n = 0; n < 10000; ++n) {
    const SinusoidSpec s = random_spec(rng);
    EXPECT_NO_THROW(s.validate());
    for (const auto* axes : {&s.omega, &s.vprime}) {
      for (const auto& c : *axes) {
        ASSERT_GE(c.amplitude, 0.0);
        ASSERT_LE(c.amplitude, 10.0);
        ASSERT_GE(c.frequency, 0.0);
        ASSERT_LE(c.frequency, 10.0);
        ASSERT_GE(c.phase, -M_PI);
        ASSERT_LE(c.phase, M_PI);
        sum += c.amplitude;
        ++count;
      }
    }
  }
  const double mean = sum / count;
  EXPECT_GE(mean, 4.8);
  EXPECT_LE(mean, 5.2);
}

TEST(SinusoidSpec, ValidationRejectsOutOfRange) {
  SinusoidSpec s;
  s.omega[0].amplitude = -1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.omega[0].amplitude = 1.0;
  s.vprime[2].phase = 4.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Scene, BearingExamples) {
  const Vector3 origin = Vector3::Zero();
  EXPECT_LE((scene_to_bearing(origin, Vector3(0, 0, 5), Rotation3::identity()).vec() -
             Vector3(0, 0, 1)).norm(), 1e-15);
  const Vector3 pb(1, -2, 0.5);
  const Vector3 pt(3, 1, 2);
  const UnitVector3 b1 = scene_to_bearing(pb, pt, Rotation3::identity());
  const UnitVector3 b2 = scene_to_bearing(pb, pb + 10.0 * (pt - pb), Rotation3::identity());
  EXPECT_LE((b1.vec() - b2.vec()).norm(), 1e-15);
  const UnitVector3 b3 = scene_to_bearing(origin, Vector3(1, 0, 0), Rotation3::about_axis(2, M_PI / 2));
  EXPECT_LE((b3.vec() - Vector3(0, -1, 0)).norm(), 1e-12);
  EXPECT_THROW(scene_to_bearing(pb, pb, Rotation3::identity()), std::invalid_argument);
  EXPECT_THROW(scene_to_vbar(pb, pb, pb, pt, Rotation3::identity()), std::invalid_argument);
}

TEST(Scene, VbarExamples) {
  const Vector3 pb(0.5, 0.5, 0.0);
  const Vector3 pt(2.0, -1.0, 3.0);
  const Rotation3 R = Rotation3::about_axis(1, 0.3);
  EXPECT_LE(scene_to_vbar(pb, pt, Vector3::Zero(), 0.7 * (pt - pb), R).norm(), 1e-15);
  EXPECT_EQ(scene_to_vbar(pb, pt, Vector3::Zero(), Vector3::Zero(), R), Vector3::Zero());
  const Vector3 v = scene_to_vbar(pb, pt, Vector3(1, 2, 3), Vector3(-1, 0, 4), R);
  EXPECT_LE(std::abs(scene_to_bearing(pb, pt, R).dot(v)), 1e-12);
}

// With a fixed attitude (ω = 0) the bearing rate is v̄ alone; a central
// finite difference of the geometric bearing is the oracle.
TEST(Scene, FiniteDifferenceMatchesBearingDerivative) {
  std::mt19937_64 rng(33);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const Rotation3 R = random_rotation(rng);
    const Vector3 pb = random_vector(rng, 3.0);
    const Vector3 vb = random_vector(rng, 2.0);
    const Vector3 pt = pb + random_vector(rng, 3.0) + Vector3(0, 0, 2);
    const Vector3 vt = random_vector(rng, 2.0);
    const UnitVector3 plus = scene_to_bearing(pb + h * vb, pt + h * vt, R);
    const UnitVector3 minus = scene_to_bearing(pb - h * vb, pt - h * vt, R);
    const Vector3 fd = (plus.vec() - minus.vec()) / (2 * h);
    const UnitVector3 b = scene_to_bearing(pb, pt, R);
    const Vector3 model = bearing_derivative(b, {Vector3::Zero(), scene_to_vbar(pb, pt, vb, vt, R)});
    EXPECT_LE((fd - model).norm(), 1e-4);
  }
}

TEST(Scene, ValidateRejectsCollisions) {
  SceneSpec scene;
  scene.target.c0 = Vector3(0, 0, 1);
  scene.vehicle.c1 = Vector3(0, 0, 1);  // reaches the target at t = 1
  EXPECT_THROW(scene.validate(2.0, 0.01), std::invalid_argument);
  EXPECT_NO_THROW(scene.validate(0.5, 0.01));
}

TEST(StepTruth, ZeroInputLeavesStateUnchanged) {
  const InputSource silent = SinusoidSpec{};
  const TruthState s0 = make_truth_state(0.0, UnitVector3(0.3, 0.4, -0.5), silent);
  for (auto integrator : {GroupIntegrator::kLieEuler, GroupIntegrator::kCommutatorFree4}) {
    const TruthState s1 = step_truth(s0, silent, 1e-3, integrator);
    EXPECT_EQ(s1.X.matrix(), s0.X.matrix());
    EXPECT_EQ(s1.xi.vec(), s0.xi.vec());
    EXPECT_DOUBLE_EQ(s1.t, 1e-3);
  }
  EXPECT_THROW(step_truth(s0, silent, 0.0), std::invalid_argument);
}

TEST(StepTruth, MakeTruthStateIsLiftConsistent) {
  std::mt19937_64 rng(34);
  const InputSource silent = SinusoidSpec{};
  for (int i = 0; i < 100; ++i) {
    const UnitVector3 xi = random_direction(rng);
    const TruthState s = make_truth_state(0.0, xi, silent);
    EXPECT_LE((phi(s.X, UnitVector3::e3()).vec() - xi.vec()).norm(), 1e-12);
  }
}

TEST(StepTruth, ConstantRotationClosedForm) {
  const Vector3 omega(0, 0, M_PI / 2);
  const InputSource spec = constant_spec(omega, Vector3::Zero());
  const UnitVector3 expected = phi(exp_so3(omega), UnitVector3::e1());
  for (auto integrator : {GroupIntegrator::kLieEuler, GroupIntegrator::kCommutatorFree4}) {
    TruthState s = make_truth_state(0.0, UnitVector3::e1(), spec);
    for (int n = 0; n < 10000; ++n) s = step_truth(s, spec, 1e-4, integrator);
    EXPECT_LE((s.xi.vec() - expected.vec()).norm(), 1e-6);
  }
}

TEST(StepTruth, RotationAboutBearingIsStationary) {
  const Vector3 omega(0.4, -1.1, 0.7);
  const InputSource spec = constant_spec(omega, Vector3::Zero());
  const UnitVector3 xi0(omega);
  TruthState s = make_truth_state(0.0, xi0, spec);
  for (int n = 0; n < 5000; ++n) {
    s = step_truth(s, spec, 1e-3);
    ASSERT_NEAR(s.xi.vec().norm(), 1.0, 1e-12);
  }
  EXPECT_LE((s.xi.vec() - xi0.vec()).norm(), 1e-12);
}

TEST(StepTruth, StaysOnGroupOverLongRuns) {
  Rng rng = make_stream(5, Stream::kInputs);
  const InputSource spec = random_spec(rng);
  TruthState s = make_truth_state(0.0, UnitVector3(1, 2, 3), spec);
  for (int n = 0; n < 200000; ++n) s = step_truth(s, spec, 1e-4, GroupIntegrator::kLieEuler);
  EXPECT_LE(s.X.orthogonality_error(), 1e-12);
}

// Error against a fine RK4 sphere solution falls by ~2^4 when h halves.
TEST(StepTruth, CommutatorFreeSchemeIsFourthOrder) {
  Rng rng = make_stream(3, Stream::kInputs);
  const InputSource spec = random_spec(rng);
  const UnitVector3 xi0(0.2, -0.7, 0.4);
  const double horizon = 1.0;
  UnitVector3 ref = xi0;
  for (int n = 0; n < 100000; ++n) ref = step_bearing_rk4(ref, spec, n * 1e-5, 1e-5);
  auto error_at = [&](double h) {
    TruthState s = make_truth_state(0.0, xi0, spec);
    const int steps = static_cast<int>(std::lround(horizon / h));
    for (int n = 0; n < steps; ++n) {
      s = step_truth(s, spec, h, GroupIntegrator::kCommutatorFree4);
      s.t = (n + 1) * h;
    }
    return (s.xi.vec() - ref.vec()).norm();
  };
  const double e1 = error_at(1e-2);
  const double e2 = error_at(5e-3);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e2, 1e-5);
}

TEST(SceneInputs, IntegratedBearingTracksGeometry) {
  SceneSpec scene;
  scene.vehicle.c1 = Vector3(0.5, 0.0, 0.1);
  scene.vehicle.amplitude = Vector3(0.3, 0.2, 0.0);
  scene.vehicle.frequency = Vector3(0.5, 0.3, 0.0);
  scene.target.c0 = Vector3(4.0, 3.0, 5.0);
  scene.target.amplitude = Vector3(1.0, 0.0, 0.5);
  scene.target.frequency = Vector3(0.2, 0.0, 0.4);
  scene.attitude0 = Rotation3::about_axis(0, 0.4);
  scene.body_rate = Vector3(0.2, -0.3, 0.5);
  scene.validate(10.0, 0.01);
  const InputSource source = scene;
  TruthState s = make_truth_state(0.0, scene_bearing_at(0.0, scene), source);
  const double h = 1e-3;
  for (int n = 0; n < 10000; ++n) {
    s = step_truth(s, source, h, GroupIntegrator::kCommutatorFree4);
    s.t = (n + 1) * h;
  }
  EXPECT_LE(geodesic_angle(s.xi, scene_bearing_at(s.t, scene)), 1e-9);
}

}  // namespace
}  // namespace eqbearing
