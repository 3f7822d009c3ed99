#include "spikegue/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "spikegue/eigvec.hpp"
#include "spikegue/errors.hpp"
#include "spikegue/rng.hpp"
#include "spikegue/spectra.hpp"

namespace spikegue {

namespace {

// n for a truncation fraction, clamped into the admissible window.
int truncation_length(double fraction, int N) {
  const int n = static_cast<int>(std::lround(fraction * N));
  return std::clamp(n, 2, N);
}

void validate(const ExperimentConfig& config) {
  const int N = config.spike.N;
  if (N < 2) throw config_error("run_trials: dimension must be at least 2");
  if (config.spike.k() > N) throw config_error("run_trials: more spikes than dimensions");
  if (config.trials < 1) throw config_error("run_trials: need at least one trial");
  if (config.workers < 1) throw config_error("run_trials: need at least one worker");
  if (config.observables.empty()) throw config_error("run_trials: no observables");
  for (const Observable& obs : config.observables) {
    if (obs.j < 1 || obs.j > N || obs.l < 1 || obs.l > N) {
      throw config_error("run_trials: observable indices out of range");
    }
  }
  if (config.record_xi) {
    for (double f : config.xi_fractions) {
      if (!(f > 0.0) || f > 1.0) {
        throw config_error("run_trials: truncation fractions must lie in (0, 1]");
      }
    }
    for (const Observable& obs : config.observables) {
      if (obs.l != 1) continue;
      for (double f : config.xi_fractions) {
        if (obs.j >= truncation_length(f, N)) {
          throw config_error("run_trials: truncation too short for the requested eigenvector");
        }
      }
    }
  }
}

}  // namespace

std::vector<double> ExperimentResult::column(int observable_index) const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const TrialRecord& rec : records) out.push_back(rec.scaled.at(observable_index));
  return out;
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (count <= 0) return;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto drain = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

ExperimentResult run_trials(const ExperimentConfig& config) {
  validate(config);
  const int N = config.spike.N;
  const int k = config.spike.k();
  const double third = std::cbrt(static_cast<double>(N));

  // Coordinates whose identity route shares an eigenvalue solve.
  std::vector<int> xi_observables;
  for (std::size_t o = 0; o < config.observables.size(); ++o) {
    if (config.observables[o].l == 1) xi_observables.push_back(static_cast<int>(o));
  }

  ExperimentResult result;
  result.config = config;
  result.records.resize(config.trials);

  parallel_for(config.trials, config.workers, [&](int t) {
    TrialRecord& rec = result.records[t];
    rec.trial = t;
    const HermitianMatrix M =
        apply_spikes(sample_gue(N, stream_seed(config.seed, t)), config.spike);
    const EigenSystem sys = eigh(M);

    rec.scaled.resize(config.observables.size());
    for (std::size_t o = 0; o < config.observables.size(); ++o) {
      const Observable& obs = config.observables[o];
      const double scale = obs.l <= k ? third : static_cast<double>(N);
      rec.scaled[o] = scale * direct_component_sq(sys, obs.j, obs.l);
    }

    if (config.record_identity) {
      rec.identity.resize(config.observables.size());
      // One inner solve per distinct coordinate, shared across j.
      for (std::size_t o = 0; o < config.observables.size(); ++o) {
        const Observable& obs = config.observables[o];
        bool done = false;
        for (std::size_t p = 0; p < o; ++p) {
          if (config.observables[p].l == obs.l && config.observables[p].j == obs.j) {
            rec.identity[o] = rec.identity[p];
            done = true;
            break;
          }
        }
        if (done) continue;
        const double scale = obs.l <= k ? third : static_cast<double>(N);
        rec.identity[o] = scale * component_sq_identity_for(M, sys.values, obs.j, obs.l);
      }
    }

    if (config.record_xi && !xi_observables.empty()) {
      const Eigen::VectorXd inner = eigh_values(principal_minor(M, 1));
      const std::vector<double> outer_xi = scaled_edge_coords(sys.values, N, N);
      const std::vector<double> inner_xi = scaled_edge_coords(inner, N, N - 1);
      rec.xi.reserve(xi_observables.size() * config.xi_fractions.size());
      for (int o : xi_observables) {
        const int j = config.observables[o].j;
        for (double f : config.xi_fractions) {
          rec.xi.push_back(xi_truncated(outer_xi, inner_xi, j, truncation_length(f, N)));
        }
      }
    }
  });

  return result;
}

std::vector<MeasureMomentRow> mc_measure_moments(const SpikeConfig& cfg,
                                                 const std::vector<double>& grid, int trials,
                                                 std::uint64_t seed, int workers) {
  const int N = cfg.N;
  if (N < 2) throw config_error("mc_measure_moments: dimension must be at least 2");
  if (cfg.k() > N) throw config_error("mc_measure_moments: more spikes than dimensions");
  if (trials < 100) throw config_error("mc_measure_moments: need at least 100 trials");
  if (grid.empty()) throw config_error("mc_measure_moments: empty grid");
  if (workers < 1) throw config_error("mc_measure_moments: need at least one worker");

  std::vector<double> slots(static_cast<std::size_t>(trials) * grid.size());
  parallel_for(trials, workers, [&](int t) {
    const HermitianMatrix M = apply_spikes(sample_gue(N, stream_seed(seed, t)), cfg);
    const Eigen::VectorXd outer = eigh_values(M);
    const Eigen::VectorXd inner = eigh_values(principal_minor(M, 1));
    const StepMeasure sm = build_step_measure(outer, inner);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      slots[static_cast<std::size_t>(t) * grid.size() + g] = measure_tail(sm, grid[g]);
    }
  });

  std::vector<MeasureMomentRow> rows(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    // Welford in trial order, identical for every worker count.
    double mean = 0.0, m2 = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double v = slots[static_cast<std::size_t>(t) * grid.size() + g];
      const double delta = v - mean;
      mean += delta / (t + 1);
      m2 += delta * (v - mean);
    }
    MeasureMomentRow& row = rows[g];
    row.x = grid[g];
    row.regime = regime_tag(N, grid[g]);
    row.trials = trials;
    row.mean_mc = mean;
    row.var_mc = m2 / (trials - 1);
    row.se_mean = std::sqrt(row.var_mc / trials);
    row.mean_closed = e_n_closed(N, grid[g]);
    row.var_closed = v_n_closed(N, grid[g]);
    row.z_mean = (row.mean_mc - row.mean_closed) / row.se_mean;
  }
  return rows;
}

}  // namespace spikegue
