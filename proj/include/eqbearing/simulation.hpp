#pragma once

// Closed-loop simulation of the bearing system with the equivariant and
// naive observers, plus per-run and batch metrics.

#include <cstdint>
#include <vector>

#include "eqbearing/config.hpp"
#include "eqbearing/dynamics.hpp"
#include "eqbearing/noise.hpp"
#include "eqbearing/observer.hpp"

namespace eqbearing {

/// One time step. Directions of an observer that is not run are NaN.
struct SampleRecord {
  double t = 0.0;
  Vector3 xi = Vector3::Zero();
  Vector3 y = Vector3::Zero();
  bool outlier = false;
  Vector3 xihat_eqv = Vector3::Zero();
  Vector3 xihat_naive = Vector3::Zero();
  double angle_err_eqv = 0.0;
  double angle_err_naive = 0.0;
  double V = 0.0;
  double Vdot = 0.0;
};

struct InitialState {
  UnitVector3 xi;
  Rotation3 Xhat;
  UnitVector3 xihat_naive;
};

/// ξ(0) uniform on S² from the seed's initial-condition stream, X̂(0) = I and
/// the naive observer started at estimate(I).
InitialState default_initial_state(std::uint64_t seed);

/// Inputs used by a run: the configured source, or a sinusoid spec drawn from
/// the seed's input stream when none is configured.
InputSource input_source_for(const RunConfig& cfg, std::uint64_t seed);

/// Stepwise closed loop. At step n the measurement and noisy input for
/// [t_n, t_n + dt) are drawn first; record() reports them together with the
/// states at t_n; advance() then integrates truth and observers to t_{n+1}.
class Simulation {
 public:
  Simulation(const RunConfig& cfg, std::uint64_t seed, const InitialState& init);

  SampleRecord record() const;
  void advance();

  long long step_index() const { return step_; }
  double time() const { return truth_.t; }
  const TruthState& truth() const { return truth_; }
  const GroupObserverState& group_observer() const { return group_; }
  const ManifoldObserverState& naive_observer() const { return naive_; }
  const UnitVector3& measurement() const { return y_; }
  const InputPair& measured_input() const { return u_meas_; }

 private:
  void draw_sample();

  RunConfig cfg_;
  InputSource source_;
  Origin origin_;
  Rng input_noise_rng_;
  Rng bearing_rng_;
  Rng outlier_rng_;
  TruthState truth_;
  GroupObserverState group_;
  ManifoldObserverState naive_;
  long long step_ = 0;
  UnitVector3 y_;
  bool outlier_ = false;
  InputPair u_meas_;
};

/// cfg.steps() records starting at t = 0 for run `seed`. Throws
/// std::runtime_error naming the step if any state becomes non-finite.
std::vector<SampleRecord> run_single(const RunConfig& cfg, std::uint64_t seed,
                                     const InitialState& init);
std::vector<SampleRecord> run_single(const RunConfig& cfg, std::uint64_t seed);
std::vector<SampleRecord> run_single(const RunConfig& cfg);

constexpr double kConvergenceThreshold = 0.5 * M_PI / 180.0;  // rad

struct RunMetrics {
  std::uint64_t seed = 0;
  double final_err_eqv = 0.0;
  double final_err_naive = 0.0;
  double median_ss_eqv = 0.0;    // median error over the steady-state window
  double median_ss_naive = 0.0;
  double converge_time_eqv = 0.0;  // first t after which error stays < 0.5°, +inf if never
  double converge_time_naive = 0.0;
  int outliers = 0;
};

/// Steady-state window [min(10, T/2), T] for a run of duration T.
double steady_state_start(double duration);

RunMetrics compute_metrics(const std::vector<SampleRecord>& records, double duration,
                           std::uint64_t seed);

struct BatchMetrics {
  std::vector<RunMetrics> runs;  // ordered by seed
  double median_final_err_eqv = 0.0;
  double median_final_err_naive = 0.0;
  double median_ss_eqv = 0.0;
  double median_ss_naive = 0.0;
  double max_median_ss_eqv = 0.0;
  int eqv_better = 0;  // runs with median_ss_eqv < median_ss_naive
  int total_outliers = 0;
};

/// Aggregate statistics; independent of the order of `runs`.
BatchMetrics aggregate(std::vector<RunMetrics> runs);

/// Runs seeds cfg.seed ... cfg.seed + cfg.runs - 1 across OpenMP threads.
BatchMetrics run_batch(const RunConfig& cfg);
/// Sequential reference for run_batch.
BatchMetrics run_batch_serial(const RunConfig& cfg);

}  // namespace eqbearing
