#include "eqbearing/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "eqbearing/config.hpp"
#include "eqbearing/io.hpp"
#include "eqbearing/simulation.hpp"

namespace eqbearing {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::optional<double> dt;
  std::optional<double> gain;
  std::optional<std::string> observer;
  bool no_noise = false;
  std::optional<int> runs;
  std::optional<std::string> out;
  std::optional<std::string> plot;
};

RunConfig build_config(const Overrides& o) {
  RunConfig cfg = o.config_path.empty() ? parse_config("") : parse_config(read_file(o.config_path));
  if (o.seed) cfg.seed = *o.seed;
  if (o.duration) cfg.duration = *o.duration;
  if (o.dt) cfg.dt = *o.dt;
  if (o.gain) cfg.gain = *o.gain;
  if (o.observer) {
    const auto sel = observer_from_string(*o.observer);
    if (!sel) throw ConfigError("observer", "expected equivariant, naive or both");
    cfg.observers = *sel;
  }
  if (o.no_noise) cfg.noise = NoiseSpec::none();
  if (o.runs) cfg.runs = *o.runs;
  if (o.out) cfg.csv_path = *o.out;
  if (o.plot) cfg.plot_path = *o.plot;
  cfg.validate();
  return cfg;
}

void run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.runs == 1) {
    const auto records = run_single(cfg);
    if (cfg.csv_path.empty()) {
      write_csv(records, out);
    } else {
      write_csv(records, cfg.csv_path);
    }
    if (!cfg.plot_path.empty()) write_plot(records, cfg.plot_path);
    return;
  }
  const BatchMetrics metrics = run_batch(cfg);
  if (cfg.csv_path.empty()) {
    write_metrics_csv(metrics, out);
  } else {
    std::ofstream file(cfg.csv_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + cfg.csv_path + " for writing");
    write_metrics_csv(metrics, file);
    if (!file) throw std::runtime_error("failed writing " + cfg.csv_path);
  }
  if (!cfg.plot_path.empty()) write_plot(run_single(cfg, cfg.seed), cfg.plot_path);
  constexpr double deg = 180.0 / M_PI;
  err << fmt::format(
      "runs: {}  median steady-state error [deg]: equivariant {:.4f}, naive {:.4f}  "
      "equivariant better in {}/{} runs  outliers: {}\n",
      metrics.runs.size(), metrics.median_ss_eqv * deg, metrics.median_ss_naive * deg,
      metrics.eqv_better, metrics.runs.size(), metrics.total_outliers);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate equivariant and naive bearing observers on the unit sphere",
               "eqbearing_sim"};
  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "run seed (batch runs use seed, seed+1, ...)");
  app.add_option("--duration", o.duration, "simulated time [s]");
  app.add_option("--dt", o.dt, "integration step [s]");
  app.add_option("--gain", o.gain, "observer gain k [1/s]");
  app.add_option("--observer", o.observer, "equivariant | naive | both");
  app.add_flag("--no-noise", o.no_noise, "disable input noise, bearing noise and outliers");
  app.add_option("--runs", o.runs, "number of Monte Carlo runs");
  app.add_option("--out", o.out, "CSV output path (default: standard output)");
  app.add_option("--plot", o.plot, "SVG plot output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    run(build_config(o), out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace eqbearing
