#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eqbearing/dynamics.hpp"
#include "eqbearing/noise.hpp"
#include "eqbearing/observer.hpp"

namespace eqbearing {

/// Raised for malformed or out-of-range configuration. The message starts with
/// the dotted key path, e.g. "noise.outlier_prob: ...".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class ObserverSelection { kEquivariant, kNaive, kBoth };
enum class InputKind { kSinusoid, kScene };

struct RunConfig {
  double duration = 20.0;  // s
  double dt = 1e-3;        // s
  double gain = 1.0;       // 1/s
  ObserverSelection observers = ObserverSelection::kBoth;
  NoiseSpec noise;
  /// Add input noise to v̄′ before projecting onto the tangent plane instead
  /// of after.
  bool noise_before_projection = false;
  InputKind input = InputKind::kSinusoid;
  /// Fixed sinusoid inputs; when empty every run draws its own from the seed.
  std::optional<SinusoidSpec> sinusoid;
  std::optional<SceneSpec> scene;
  GroupIntegrator truth_integrator = GroupIntegrator::kLieEuler;
  GroupSplitting group_splitting = GroupSplitting::kMeasuredLift;
  std::uint64_t seed = 0;
  int runs = 1;
  /// A new measurement every `decimation` steps; held in between.
  int decimation = 1;
  std::string csv_path;   // empty: standard output
  std::string plot_path;  // empty: no plot

  bool run_equivariant() const { return observers != ObserverSelection::kNaive; }
  bool run_naive() const { return observers != ObserverSelection::kEquivariant; }
  long long steps() const;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Parses a JSON document; absent fields keep their defaults. Unknown keys,
/// wrong types and out-of-range values raise ConfigError.
RunConfig parse_config(std::string_view text);

/// JSON text that parse_config maps back to an identical configuration.
std::string serialize_config(const RunConfig& cfg);

const char* to_string(ObserverSelection s);
std::optional<ObserverSelection> observer_from_string(std::string_view s);

}  // namespace eqbearing
