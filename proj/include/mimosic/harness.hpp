// Seeded Monte-Carlo BER sweep engine. Every configured detector sees the
// identical (H, s, n) realization per trial; trial RNG streams are keyed
// by (base_seed, trial_id, snr_index) so the aggregate is independent of
// scheduling. run_sweep runs trials through OpenMP; run_sweep_serial is
// the plain loop kept as a reference for testing and benchmarking.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimosic/detectors.hpp"
#include "mimosic/signal.hpp"

namespace mimosic {

struct SweepConfig {
  SystemDims dims;
  int mod = 4;  // constellation order M
  std::vector<DetectorConfig> detectors;
  std::vector<double> snr_grid_db;
  long trials = 10000;
  uint64_t base_seed = 1;
  bool noiseless = false;  // zero noise vector; sigma2 still set from SNR
};

struct TrialOutcome {
  long trial_id = 0;
  std::vector<long> bit_errors;  // per configured detector
  std::vector<DetectionStats> stats;
};

struct BerPoint {
  double snr_db = 0.0;
  long trials = 0;
  long total_bits = 0;
  long bit_errors = 0;
  double ber = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct BerCurve {
  DetectorKind kind = DetectorKind::MMSE;
  std::vector<BerPoint> points;
};

struct SweepResult {
  std::vector<BerCurve> curves;
  std::vector<std::string> warnings;
  std::vector<DetectionStats> stats;  // per curve, summed over all trials
};

struct HarnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validates the config; drops ML (with a warning) when M^Nt exceeds the
// enumeration budget. Returns the detector set actually simulated.
std::vector<DetectorConfig> effective_detectors(
    const SweepConfig& cfg, std::vector<std::string>* warnings);

TrialOutcome run_trial(const SweepConfig& cfg, int snr_index, long trial_id);

SweepResult run_sweep(const SweepConfig& cfg, int threads = 0);
SweepResult run_sweep_serial(const SweepConfig& cfg);

// 95% Wilson score interval for err successes in n draws.
void wilson_interval(long err, long n, double& low, double& high);

// SNR difference (b minus a) at which the two curves reach target_ber,
// by log-linear interpolation on the BER axis.
double snr_gain_at_ber(const BerCurve& a, const BerCurve& b,
                       double target_ber);
double snr_at_ber(const BerCurve& curve, double target_ber);

}  // namespace mimosic
