#include "eqbearing/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eqbearing {

void NoiseSpec::validate() const {
  auto require = [](bool ok, const char* key) {
    if (!ok) throw std::invalid_argument(std::string("noise.") + key + " is out of range");
  };
  require(input_sigma >= 0.0 && std::isfinite(input_sigma), "input_sigma");
  require(bearing_angle_sigma >= 0.0 && std::isfinite(bearing_angle_sigma), "bearing_angle_sigma");
  require(outlier_prob >= 0.0 && outlier_prob <= 1.0, "outlier_prob");
}

UnitVector3 random_unit_vector(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vector3 g(n(rng), n(rng), n(rng));
    if (g.squaredNorm() > 1e-24) return UnitVector3(g);
  }
}

InputPair perturb_input(const InputPair& u, const NoiseSpec& spec, Rng& rng) {
  if (spec.input_sigma == 0.0) return u;
  std::normal_distribution<double> n(0.0, spec.input_sigma);
  InputPair out = u;
  for (int i = 0; i < 3; ++i) out.omega[i] += n(rng);
  for (int i = 0; i < 3; ++i) out.vbar[i] += n(rng);
  return out;
}

UnitVector3 perturb_bearing(const UnitVector3& b, const NoiseSpec& spec, Rng& rng) {
  if (spec.bearing_angle_sigma == 0.0) return b;
  const UnitVector3 axis = random_unit_vector(rng);
  std::normal_distribution<double> n(0.0, spec.bearing_angle_sigma);
  const double angle = n(rng);
  return exp_so3(Vector3(angle * axis.vec())) * b;
}

std::pair<UnitVector3, bool> maybe_outlier(const UnitVector3& y, const NoiseSpec& spec, Rng& rng) {
  if (spec.outlier_prob == 0.0) return {y, false};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < spec.outlier_prob) return {random_unit_vector(rng), true};
  return {y, false};
}

}  // namespace eqbearing
