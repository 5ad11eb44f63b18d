#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace eqbearing {

using Rng = std::mt19937_64;

/// Named sub-streams of a run seed. Each stream is an independent generator so
/// that, e.g., enabling outliers does not shift the input-noise samples.
enum class Stream : std::uint64_t {
  kInputs = 1,
  kInputNoise = 2,
  kBearingNoise = 3,
  kOutliers = 4,
  kInitial = 5,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Generator for `stream` of the run identified by `seed`.
Rng make_stream(std::uint64_t seed, Stream stream);

}  // namespace eqbearing
