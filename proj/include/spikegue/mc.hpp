#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spikegue/linalg.hpp"
#include "spikegue/measure.hpp"

namespace spikegue {

// Which squared eigenvector component to record: j indexes eigenvectors by
// descending eigenvalue, l the coordinate. Both 1-based.
struct Observable {
  int j = 1;
  int l = 1;
};

struct ExperimentConfig {
  SpikeConfig spike;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<Observable> observables{{1, 1}};
  int workers = 1;
  // Also push every observable through the eigenvalue-only identity (one
  // extra eigenvalue solve per distinct coordinate per trial).
  bool record_identity = false;
  // Record truncated products Xi_j(n) at n = round(fraction * N) for each
  // observable with l == 1.
  bool record_xi = false;
  std::vector<double> xi_fractions{0.125, 0.25, 0.5};
};

// Scaled values: components on spiked coordinates (l <= k) carry the
// critical factor N^(1/3), delocalized coordinates (l > k) the factor N.
struct TrialRecord {
  int trial = 0;
  std::vector<double> scaled;    // one per observable
  std::vector<double> identity;  // same order and scaling, if recorded
  // Observable-major over the l == 1 subset, fraction-minor, if recorded.
  std::vector<double> xi;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;

  // Scaled values of one observable across trials, in trial order.
  std::vector<double> column(int observable_index) const;
};

// Runs trials over a worker pool. Trial t draws from its own RNG stream
// seeded by (seed, t) and lands in a preallocated slot, so the records are
// identical for every worker count.
ExperimentResult run_trials(const ExperimentConfig& config);

// Atomic-counter work distribution of body(0..count-1) over `workers`
// threads; the first exception thrown by any worker is rethrown here.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

// Monte Carlo moments of the interlacing tail mass M_N(x): per trial, a
// spiked sample's spectrum is paired with its first minor's and the tail
// mass evaluated on the grid. Rows come back one per grid point, sampled
// moments next to the closed predictions E_N, V_N (which model the single
// critical spike a = (0), the default CLI configuration; for other spike
// setups the z column measures the distance from that reference law).
// Requires at least 100 trials.
std::vector<MeasureMomentRow> mc_measure_moments(const SpikeConfig& cfg,
                                                 const std::vector<double>& grid, int trials,
                                                 std::uint64_t seed, int workers);

}  // namespace spikegue
