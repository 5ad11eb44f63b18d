#pragma once

// Seeded corruption models for inputs and bearing measurements.

#include <utility>

#include "eqbearing/geom3.hpp"
#include "eqbearing/rng.hpp"
#include "eqbearing/symmetry.hpp"

namespace eqbearing {

struct NoiseSpec {
  double input_sigma = 0.1;                        // per-axis std-dev of ω and v̄
  double bearing_angle_sigma = 5.0 * M_PI / 180.0;  // rad
  double outlier_prob = 0.01;

  static NoiseSpec none() { return {0.0, 0.0, 0.0}; }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Uniform on S² (normalized standard Gaussian).
UnitVector3 random_unit_vector(Rng& rng);

/// Adds independent N(0, σ²) to each of the six input components.
InputPair perturb_input(const InputPair& u, const NoiseSpec& spec, Rng& rng);

/// exp(θ S(a)) b with a uniform on S² and θ ~ N(0, σ²).
UnitVector3 perturb_bearing(const UnitVector3& b, const NoiseSpec& spec, Rng& rng);

/// With probability outlier_prob, replaces y by a uniform unit vector.
/// Returns the (possibly replaced) measurement and the outlier flag.
std::pair<UnitVector3, bool> maybe_outlier(const UnitVector3& y, const NoiseSpec& spec, Rng& rng);

}  // namespace eqbearing
