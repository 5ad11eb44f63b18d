#include "eqbearing/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace eqbearing {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const Vector3 kNaNVector(kNaN, kNaN, kNaN);

double median_of(std::vector<double> v) {
  std::erase_if(v, [](double x) { return std::isnan(x); });
  if (v.empty()) return kNaN;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

double convergence_time(const std::vector<SampleRecord>& records,
                        double SampleRecord::*field) {
  if (records.empty() || std::isnan(records.front().*field)) return kNaN;
  for (std::size_t i = records.size(); i-- > 0;) {
    if (!(records[i].*field < kConvergenceThreshold)) {
      return i + 1 < records.size() ? records[i + 1].t
                                    : std::numeric_limits<double>::infinity();
    }
  }
  return records.front().t;
}

bool record_finite(const SampleRecord& r, bool eqv, bool naive) {
  bool ok = std::isfinite(r.t) && r.xi.allFinite() && r.y.allFinite();
  if (eqv) {
    ok = ok && r.xihat_eqv.allFinite() && std::isfinite(r.angle_err_eqv) && std::isfinite(r.V) &&
         std::isfinite(r.Vdot);
  }
  if (naive) ok = ok && r.xihat_naive.allFinite() && std::isfinite(r.angle_err_naive);
  return ok;
}

}  // namespace

InitialState default_initial_state(std::uint64_t seed) {
  Rng rng = make_stream(seed, Stream::kInitial);
  InitialState init;
  init.xi = random_unit_vector(rng);
  init.Xhat = Rotation3::identity();
  init.xihat_naive = estimate(init.Xhat);
  return init;
}

InputSource input_source_for(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.input == InputKind::kScene) {
    if (!cfg.scene) throw ConfigError("input.scene", "required when input.source is \"scene\"");
    return *cfg.scene;
  }
  if (cfg.sinusoid) return *cfg.sinusoid;
  Rng rng = make_stream(seed, Stream::kInputs);
  return random_spec(rng);
}

Simulation::Simulation(const RunConfig& cfg, std::uint64_t seed, const InitialState& init)
    : cfg_(cfg),
      source_(input_source_for(cfg, seed)),
      input_noise_rng_(make_stream(seed, Stream::kInputNoise)),
      bearing_rng_(make_stream(seed, Stream::kBearingNoise)),
      outlier_rng_(make_stream(seed, Stream::kOutliers)) {
  cfg_.validate();
  truth_ = make_truth_state(0.0, init.xi, source_, origin_);
  group_ = {init.Xhat, cfg_.gain};
  naive_ = {init.xihat_naive, cfg_.gain};
  draw_sample();
}

void Simulation::draw_sample() {
  const double h = cfg_.dt;
  const double t_mid = truth_.t + 0.5 * h;
  if (cfg_.noise_before_projection) {
    u_meas_ = perturb_input(raw_input(t_mid, source_), cfg_.noise, input_noise_rng_);
    u_meas_.vbar = project_tangent(truth_.xi, u_meas_.vbar);
  } else {
    u_meas_ = perturb_input(sample_input(t_mid, source_, truth_.xi), cfg_.noise, input_noise_rng_);
  }
  if (step_ % cfg_.decimation == 0) {
    const UnitVector3 noisy = perturb_bearing(truth_.xi, cfg_.noise, bearing_rng_);
    std::tie(y_, outlier_) = maybe_outlier(noisy, cfg_.noise, outlier_rng_);
  } else {
    outlier_ = false;
  }
}

SampleRecord Simulation::record() const {
  SampleRecord r;
  r.t = truth_.t;
  r.xi = truth_.xi.vec();
  r.y = y_.vec();
  r.outlier = outlier_;
  if (cfg_.run_equivariant()) {
    const ErrorDiagnostics d = diagnostics(truth_.X, group_.Xhat, truth_.xi, cfg_.gain, origin_);
    r.xihat_eqv = estimate(group_.Xhat, origin_).vec();
    r.angle_err_eqv = d.angle_err;
    r.V = d.V;
    r.Vdot = d.Vdot;
  } else {
    r.xihat_eqv = kNaNVector;
    r.angle_err_eqv = r.V = r.Vdot = kNaN;
  }
  if (cfg_.run_naive()) {
    r.xihat_naive = naive_.xihat.vec();
    r.angle_err_naive = geodesic_angle(naive_.xihat, truth_.xi);
  } else {
    r.xihat_naive = kNaNVector;
    r.angle_err_naive = kNaN;
  }
  return r;
}

void Simulation::advance() {
  const double h = cfg_.dt;
  if (cfg_.run_equivariant()) group_ = step_group_observer(group_, y_, u_meas_, h, origin_, cfg_.group_splitting);
  if (cfg_.run_naive()) naive_ = step_naive_observer(naive_, y_, u_meas_, h);
  truth_ = step_truth(truth_, source_, h, cfg_.truth_integrator, origin_);
  // Keep t on the grid instead of accumulating rounding.
  ++step_;
  truth_.t = static_cast<double>(step_) * h;
  draw_sample();
}

std::vector<SampleRecord> run_single(const RunConfig& cfg, std::uint64_t seed,
                                     const InitialState& init) {
  Simulation sim(cfg, seed, init);
  const long long n = cfg.steps();
  std::vector<SampleRecord> records;
  records.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    SampleRecord r;
    try {
      r = sim.record();
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("non-finite state at step " + std::to_string(i) + ": " + e.what());
    }
    if (!record_finite(r, cfg.run_equivariant(), cfg.run_naive())) {
      throw std::runtime_error("non-finite state at step " + std::to_string(i));
    }
    records.push_back(r);
    if (i + 1 < n) {
      try {
        sim.advance();
      } catch (const std::invalid_argument& e) {
        throw std::runtime_error("non-finite state at step " + std::to_string(i + 1) + ": " +
                                 e.what());
      }
    }
  }
  return records;
}

std::vector<SampleRecord> run_single(const RunConfig& cfg, std::uint64_t seed) {
  return run_single(cfg, seed, default_initial_state(seed));
}

std::vector<SampleRecord> run_single(const RunConfig& cfg) { return run_single(cfg, cfg.seed); }

double steady_state_start(double duration) { return std::min(10.0, 0.5 * duration); }

RunMetrics compute_metrics(const std::vector<SampleRecord>& records, double duration,
                           std::uint64_t seed) {
  if (records.empty()) throw std::invalid_argument("compute_metrics: no records");
  RunMetrics m;
  m.seed = seed;
  m.final_err_eqv = records.back().angle_err_eqv;
  m.final_err_naive = records.back().angle_err_naive;
  const double start = steady_state_start(duration);
  std::vector<double> eqv;
  std::vector<double> naive;
  for (const auto& r : records) {
    if (r.outlier) ++m.outliers;
    if (r.t >= start) {
      eqv.push_back(r.angle_err_eqv);
      naive.push_back(r.angle_err_naive);
    }
  }
  if (eqv.empty()) {  // window shorter than one step: use the last record
    eqv.push_back(records.back().angle_err_eqv);
    naive.push_back(records.back().angle_err_naive);
  }
  m.median_ss_eqv = median_of(std::move(eqv));
  m.median_ss_naive = median_of(std::move(naive));
  m.converge_time_eqv = convergence_time(records, &SampleRecord::angle_err_eqv);
  m.converge_time_naive = convergence_time(records, &SampleRecord::angle_err_naive);
  return m;
}

BatchMetrics aggregate(std::vector<RunMetrics> runs) {
  std::sort(runs.begin(), runs.end(),
            [](const RunMetrics& a, const RunMetrics& b) { return a.seed < b.seed; });
  BatchMetrics b;
  std::vector<double> fe, fn, se, sn;
  b.max_median_ss_eqv = runs.empty() ? kNaN : -std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    fe.push_back(r.final_err_eqv);
    fn.push_back(r.final_err_naive);
    se.push_back(r.median_ss_eqv);
    sn.push_back(r.median_ss_naive);
    if (r.median_ss_eqv < r.median_ss_naive) ++b.eqv_better;
    if (!std::isnan(r.median_ss_eqv)) b.max_median_ss_eqv = std::max(b.max_median_ss_eqv, r.median_ss_eqv);
    b.total_outliers += r.outliers;
  }
  b.median_final_err_eqv = median_of(std::move(fe));
  b.median_final_err_naive = median_of(std::move(fn));
  b.median_ss_eqv = median_of(std::move(se));
  b.median_ss_naive = median_of(std::move(sn));
  b.runs = std::move(runs);
  return b;
}

BatchMetrics run_batch_serial(const RunConfig& cfg) {
  cfg.validate();
  std::vector<RunMetrics> runs;
  runs.reserve(static_cast<std::size_t>(cfg.runs));
  for (int i = 0; i < cfg.runs; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    runs.push_back(compute_metrics(run_single(cfg, seed), cfg.duration, seed));
  }
  return aggregate(std::move(runs));
}

BatchMetrics run_batch(const RunConfig& cfg) {
  cfg.validate();
  std::vector<RunMetrics> runs(static_cast<std::size_t>(cfg.runs));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < cfg.runs; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    try {
      runs[static_cast<std::size_t>(i)] = compute_metrics(run_single(cfg, seed), cfg.duration, seed);
    } catch (...) {
#pragma omp critical(eqbearing_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return aggregate(std::move(runs));
}

}  // namespace eqbearing
