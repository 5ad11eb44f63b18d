#include "eqbearing/config.hpp"

#include <cmath>
#include <initializer_list>

#include "json.hpp"

namespace eqbearing {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void expect_object(const json& j, const std::string& path,
                   std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) throw ConfigError(join(path, item.key()), "unknown key");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

long long get_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long long>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

Vector3 get_vector3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(path, "expected an array of 3 numbers");
  Vector3 v;
  for (int i = 0; i < 3; ++i) v[i] = get_number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

json to_json(const Vector3& v) { return json::array({v[0], v[1], v[2]}); }

Sinusoid parse_sinusoid(const json& j, const std::string& path) {
  expect_object(j, path, {"amplitude", "frequency", "phase"});
  Sinusoid s;
  if (j.contains("amplitude")) s.amplitude = get_number(j["amplitude"], join(path, "amplitude"));
  if (j.contains("frequency")) s.frequency = get_number(j["frequency"], join(path, "frequency"));
  if (j.contains("phase")) s.phase = get_number(j["phase"], join(path, "phase"));
  return s;
}

std::array<Sinusoid, 3> parse_axes(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(path, "expected an array of 3 sinusoids");
  std::array<Sinusoid, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = parse_sinusoid(j[i], path + "[" + std::to_string(i) + "]");
  return out;
}

json axes_to_json(const std::array<Sinusoid, 3>& axes) {
  json a = json::array();
  for (const auto& s : axes) {
    a.push_back({{"amplitude", s.amplitude}, {"frequency", s.frequency}, {"phase", s.phase}});
  }
  return a;
}

Curve3 parse_curve(const json& j, const std::string& path) {
  expect_object(j, path, {"c0", "c1", "c2", "amplitude", "frequency", "phase"});
  Curve3 c;
  auto field = [&](const char* key, Vector3& dst) {
    if (j.contains(key)) dst = get_vector3(j[key], join(path, key));
  };
  field("c0", c.c0);
  field("c1", c.c1);
  field("c2", c.c2);
  field("amplitude", c.amplitude);
  field("frequency", c.frequency);
  field("phase", c.phase);
  return c;
}

json curve_to_json(const Curve3& c) {
  return {{"c0", to_json(c.c0)},
          {"c1", to_json(c.c1)},
          {"c2", to_json(c.c2)},
          {"amplitude", to_json(c.amplitude)},
          {"frequency", to_json(c.frequency)},
          {"phase", to_json(c.phase)}};
}

Rotation3 parse_attitude(const json& j, const std::string& path) {
  if (j.is_array() && j.size() == 3 && j[0].is_number()) {
    return exp_so3(get_vector3(j, path));  // rotation vector
  }
  if (!j.is_array() || j.size() != 3) {
    throw ConfigError(path, "expected a rotation vector or a 3x3 row-major matrix");
  }
  Matrix3 m;
  for (int r = 0; r < 3; ++r) {
    const Vector3 row = get_vector3(j[r], path + "[" + std::to_string(r) + "]");
    m.row(r) = row.transpose();
  }
  try {
    return Rotation3(m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

SceneSpec parse_scene(const json& j, const std::string& path) {
  expect_object(j, path, {"vehicle", "target", "attitude0", "body_rate", "min_distance"});
  SceneSpec s;
  if (j.contains("vehicle")) s.vehicle = parse_curve(j["vehicle"], join(path, "vehicle"));
  if (j.contains("target")) s.target = parse_curve(j["target"], join(path, "target"));
  if (j.contains("attitude0")) s.attitude0 = parse_attitude(j["attitude0"], join(path, "attitude0"));
  if (j.contains("body_rate")) s.body_rate = get_vector3(j["body_rate"], join(path, "body_rate"));
  if (j.contains("min_distance")) {
    s.min_distance = get_number(j["min_distance"], join(path, "min_distance"));
  }
  return s;
}

json scene_to_json(const SceneSpec& s) {
  json att = json::array();
  for (int r = 0; r < 3; ++r) {
    att.push_back(to_json(s.attitude0.matrix().row(r).transpose()));
  }
  return {{"vehicle", curve_to_json(s.vehicle)},
          {"target", curve_to_json(s.target)},
          {"attitude0", att},
          {"body_rate", to_json(s.body_rate)},
          {"min_distance", s.min_distance}};
}

void parse_noise(const json& j, RunConfig& cfg) {
  expect_object(j, "noise", {"input_sigma", "bearing_angle_sigma", "outlier_prob", "before_projection"});
  if (j.contains("input_sigma")) cfg.noise.input_sigma = get_number(j["input_sigma"], "noise.input_sigma");
  if (j.contains("bearing_angle_sigma")) {
    cfg.noise.bearing_angle_sigma = get_number(j["bearing_angle_sigma"], "noise.bearing_angle_sigma");
  }
  if (j.contains("outlier_prob")) cfg.noise.outlier_prob = get_number(j["outlier_prob"], "noise.outlier_prob");
  if (j.contains("before_projection")) {
    cfg.noise_before_projection = get_bool(j["before_projection"], "noise.before_projection");
  }
}

void parse_input(const json& j, RunConfig& cfg) {
  expect_object(j, "input", {"source", "sinusoid", "scene"});
  if (j.contains("source")) {
    const std::string src = get_string(j["source"], "input.source");
    if (src == "sinusoid") {
      cfg.input = InputKind::kSinusoid;
    } else if (src == "scene") {
      cfg.input = InputKind::kScene;
    } else {
      throw ConfigError("input.source", "expected \"sinusoid\" or \"scene\"");
    }
  }
  if (j.contains("sinusoid")) {
    const json& s = j["sinusoid"];
    expect_object(s, "input.sinusoid", {"omega", "vprime"});
    SinusoidSpec spec;
    if (s.contains("omega")) spec.omega = parse_axes(s["omega"], "input.sinusoid.omega");
    if (s.contains("vprime")) spec.vprime = parse_axes(s["vprime"], "input.sinusoid.vprime");
    cfg.sinusoid = spec;
  }
  if (j.contains("scene")) cfg.scene = parse_scene(j["scene"], "input.scene");
}

}  // namespace

const char* to_string(ObserverSelection s) {
  switch (s) {
    case ObserverSelection::kEquivariant: return "equivariant";
    case ObserverSelection::kNaive: return "naive";
    case ObserverSelection::kBoth: return "both";
  }
  return "both";
}

std::optional<ObserverSelection> observer_from_string(std::string_view s) {
  if (s == "equivariant") return ObserverSelection::kEquivariant;
  if (s == "naive") return ObserverSelection::kNaive;
  if (s == "both") return ObserverSelection::kBoth;
  return std::nullopt;
}

long long RunConfig::steps() const {
  return static_cast<long long>(std::llround(duration / dt));
}

void RunConfig::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("duration", "must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "must be positive");
  if (duration / dt > 1e7) throw ConfigError("dt", "duration/dt exceeds 1e7 steps");
  if (steps() < 1) throw ConfigError("dt", "must not exceed duration");
  if (!(gain > 0.0) || !std::isfinite(gain)) throw ConfigError("gain", "must be positive");
  if (runs < 1) throw ConfigError("runs", "must be at least 1");
  if (decimation < 1) throw ConfigError("decimation", "must be at least 1");
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(msg.substr(0, msg.find(' ')), "out of range");
  }
  if (sinusoid) {
    try {
      sinusoid->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("input.sinusoid", e.what());
    }
  }
  if (input == InputKind::kScene) {
    if (!scene) throw ConfigError("input.scene", "required when input.source is \"scene\"");
    try {
      scene->validate(duration, dt);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("input.scene", e.what());
    }
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  json root;
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
  if (!blank) {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
  } else {
    root = json::object();
  }
  expect_object(root, "", {"duration", "dt", "gain", "observer", "noise", "input",
                           "truth_integrator", "group_splitting", "seed", "runs", "decimation", "output"});
  if (root.contains("duration")) cfg.duration = get_number(root["duration"], "duration");
  if (root.contains("dt")) cfg.dt = get_number(root["dt"], "dt");
  if (root.contains("gain")) cfg.gain = get_number(root["gain"], "gain");
  if (root.contains("observer")) {
    const auto sel = observer_from_string(get_string(root["observer"], "observer"));
    if (!sel) throw ConfigError("observer", "expected \"equivariant\", \"naive\" or \"both\"");
    cfg.observers = *sel;
  }
  if (root.contains("noise")) parse_noise(root["noise"], cfg);
  if (root.contains("input")) parse_input(root["input"], cfg);
  if (root.contains("truth_integrator")) {
    const std::string s = get_string(root["truth_integrator"], "truth_integrator");
    if (s == "cf4") {
      cfg.truth_integrator = GroupIntegrator::kCommutatorFree4;
    } else if (s == "lie_euler") {
      cfg.truth_integrator = GroupIntegrator::kLieEuler;
    } else {
      throw ConfigError("truth_integrator", "expected \"cf4\" or \"lie_euler\"");
    }
  }
  if (root.contains("group_splitting")) {
    const std::string s = get_string(root["group_splitting"], "group_splitting");
    if (s == "measured_lift") {
      cfg.group_splitting = GroupSplitting::kMeasuredLift;
    } else if (s == "replica_lift") {
      cfg.group_splitting = GroupSplitting::kReplicaLift;
    } else {
      throw ConfigError("group_splitting", "expected \"measured_lift\" or \"replica_lift\"");
    }
  }
  if (root.contains("seed")) {
    const json& s = root["seed"];
    if (!s.is_number_integer()) throw ConfigError("seed", "expected a non-negative integer");
    if (s.is_number_unsigned()) {
      cfg.seed = s.get<std::uint64_t>();
    } else {
      const long long v = s.get<long long>();
      if (v < 0) throw ConfigError("seed", "expected a non-negative integer");
      cfg.seed = static_cast<std::uint64_t>(v);
    }
  }
  if (root.contains("runs")) {
    const long long r = get_integer(root["runs"], "runs");
    if (r < 1 || r > 1000000) throw ConfigError("runs", "must be in [1, 1000000]");
    cfg.runs = static_cast<int>(r);
  }
  if (root.contains("decimation")) {
    const long long d = get_integer(root["decimation"], "decimation");
    if (d < 1 || d > 1000000) throw ConfigError("decimation", "must be in [1, 1000000]");
    cfg.decimation = static_cast<int>(d);
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    expect_object(o, "output", {"csv", "plot"});
    if (o.contains("csv")) cfg.csv_path = get_string(o["csv"], "output.csv");
    if (o.contains("plot")) cfg.plot_path = get_string(o["plot"], "output.plot");
  }
  cfg.validate();
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  json root;
  root["duration"] = cfg.duration;
  root["dt"] = cfg.dt;
  root["gain"] = cfg.gain;
  root["observer"] = to_string(cfg.observers);
  root["noise"] = {{"input_sigma", cfg.noise.input_sigma},
                   {"bearing_angle_sigma", cfg.noise.bearing_angle_sigma},
                   {"outlier_prob", cfg.noise.outlier_prob},
                   {"before_projection", cfg.noise_before_projection}};
  json input = {{"source", cfg.input == InputKind::kScene ? "scene" : "sinusoid"}};
  if (cfg.sinusoid) {
    input["sinusoid"] = {{"omega", axes_to_json(cfg.sinusoid->omega)},
                         {"vprime", axes_to_json(cfg.sinusoid->vprime)}};
  }
  if (cfg.scene) input["scene"] = scene_to_json(*cfg.scene);
  root["input"] = input;
  root["truth_integrator"] =
      cfg.truth_integrator == GroupIntegrator::kCommutatorFree4 ? "cf4" : "lie_euler";
  root["group_splitting"] =
      cfg.group_splitting == GroupSplitting::kReplicaLift ? "replica_lift" : "measured_lift";
  root["seed"] = cfg.seed;
  root["runs"] = cfg.runs;
  root["decimation"] = cfg.decimation;
  json output = json::object();
  if (!cfg.csv_path.empty()) output["csv"] = cfg.csv_path;
  if (!cfg.plot_path.empty()) output["plot"] = cfg.plot_path;
  root["output"] = output;
  return root.dump(2) + "\n";
}

}  // namespace eqbearing
