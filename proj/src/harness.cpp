#include "mimosic/harness.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mimosic {

namespace {

enum Substream : uint64_t { kChannel = 0, kBits = 1, kNoise = 2 };

RngStream trial_key(const SweepConfig& cfg, int snr_index, long trial_id,
                    Substream what) {
  return {cfg.base_seed, static_cast<uint64_t>(trial_id),
          static_cast<uint64_t>(snr_index) * 3 + what};
}

void validate(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw HarnessError("sweep: trials must be >= 1");
  if (cfg.dims.nt < 1 || cfg.dims.nr < cfg.dims.nt)
    throw HarnessError("sweep: need Nr >= Nt >= 1");
  if (cfg.snr_grid_db.empty()) throw HarnessError("sweep: empty SNR grid");
  for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
    if (!(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1]))
      throw HarnessError("sweep: SNR grid must be strictly increasing");
  if (cfg.detectors.empty()) throw HarnessError("sweep: no detectors");
  for (std::size_t i = 0; i < cfg.detectors.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.detectors.size(); ++j)
      if (cfg.detectors[i].kind == cfg.detectors[j].kind)
        throw HarnessError(std::string("sweep: duplicate detector ") +
                           detector_name(cfg.detectors[i].kind));
}

struct PointAccum {
  long errors = 0;
  DetectionStats stats;

  void add(long e, const DetectionStats& s) {
    errors += e;
    stats.sac_triggers += s.sac_triggers;
    stats.candidate_evals += s.candidate_evals;
    stats.max_depth = std::max(stats.max_depth, s.max_depth);
  }
  void merge(const PointAccum& o) {
    errors += o.errors;
    stats.sac_triggers += o.stats.sac_triggers;
    stats.candidate_evals += o.stats.candidate_evals;
    stats.max_depth = std::max(stats.max_depth, o.stats.max_depth);
  }
};

SweepResult run_impl(const SweepConfig& cfg, bool parallel, int threads) {
  validate(cfg);
  SweepResult out;
  const std::vector<DetectorConfig> dets =
      effective_detectors(cfg, &out.warnings);
  const Constellation c = build_qam(cfg.mod);
  const std::size_t nd = dets.size();
  const std::size_t np = cfg.snr_grid_db.size();
  const long bits_per_trial =
      static_cast<long>(cfg.dims.nt) * c.bits_per_symbol;

  std::vector<std::vector<PointAccum>> acc(np,
                                           std::vector<PointAccum>(nd));
  for (std::size_t p = 0; p < np; ++p) {
    const NoiseModel nm = snr_to_sigma2(cfg.snr_grid_db[p], cfg.dims, c);
    std::vector<PointAccum>& pa = acc[p];

#ifdef _OPENMP
    if (parallel) {
      if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel
      {
        std::vector<PointAccum> local(nd);
#pragma omp for schedule(dynamic, 16) nowait
        for (long t = 0; t < cfg.trials; ++t) {
          const int pi = static_cast<int>(p);
          const CMat h =
              generate_channel(cfg.dims, trial_key(cfg, pi, t, kChannel));
          const TxFrame frame =
              random_frame(cfg.dims, c, trial_key(cfg, pi, t, kBits));
          CVec n(cfg.dims.nr);
          if (!cfg.noiseless)
            n = generate_noise(cfg.dims, nm, trial_key(cfg, pi, t, kNoise));
          const CVec y = transmit(h, frame, n);
          for (std::size_t d = 0; d < nd; ++d) {
            const DetectionResult r = detect(y, h, c, nm, dets[d]);
            local[d].add(count_bit_errors(frame, r.symbols, c), r.stats);
          }
        }
#pragma omp critical
        for (std::size_t d = 0; d < nd; ++d) pa[d].merge(local[d]);
      }
      continue;
    }
#else
    (void)parallel;
    (void)threads;
#endif
    for (long t = 0; t < cfg.trials; ++t) {
      const TrialOutcome o = run_trial(cfg, static_cast<int>(p), t);
      for (std::size_t d = 0; d < nd; ++d)
        pa[d].add(o.bit_errors[d], o.stats[d]);
    }
  }

  out.curves.resize(nd);
  out.stats.resize(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    BerCurve& curve = out.curves[d];
    curve.kind = dets[d].kind;
    curve.points.resize(np);
    DetectionStats total;
    for (std::size_t p = 0; p < np; ++p) {
      BerPoint& pt = curve.points[p];
      pt.snr_db = cfg.snr_grid_db[p];
      pt.trials = cfg.trials;
      pt.total_bits = cfg.trials * bits_per_trial;
      pt.bit_errors = acc[p][d].errors;
      pt.ber = static_cast<double>(pt.bit_errors) / pt.total_bits;
      wilson_interval(pt.bit_errors, pt.total_bits, pt.ci_low, pt.ci_high);
      total.sac_triggers += acc[p][d].stats.sac_triggers;
      total.candidate_evals += acc[p][d].stats.candidate_evals;
      total.max_depth = std::max(total.max_depth, acc[p][d].stats.max_depth);
    }
    out.stats[d] = total;
  }
  return out;
}

}  // namespace

std::vector<DetectorConfig> effective_detectors(
    const SweepConfig& cfg, std::vector<std::string>* warnings) {
  std::vector<DetectorConfig> dets;
  for (const DetectorConfig& d : cfg.detectors) {
    if (d.kind == DetectorKind::ML) {
      const double space =
          std::pow(static_cast<double>(cfg.mod), cfg.dims.nt);
      if (space >= 4294967296.0) {
        if (warnings)
          warnings->push_back(
              "ml excluded: " + std::to_string(cfg.mod) + "^" +
              std::to_string(cfg.dims.nt) + " candidates exceed the "
              "enumeration budget");
        continue;
      }
    }
    dets.push_back(d);
  }
  if (dets.empty()) throw HarnessError("sweep: no runnable detectors");
  return dets;
}

TrialOutcome run_trial(const SweepConfig& cfg, int snr_index, long trial_id) {
  validate(cfg);
  const Constellation c = build_qam(cfg.mod);
  const std::vector<DetectorConfig> dets = effective_detectors(cfg, nullptr);
  const NoiseModel nm =
      snr_to_sigma2(cfg.snr_grid_db.at(snr_index), cfg.dims, c);

  const CMat h =
      generate_channel(cfg.dims, trial_key(cfg, snr_index, trial_id, kChannel));
  const TxFrame frame =
      random_frame(cfg.dims, c, trial_key(cfg, snr_index, trial_id, kBits));
  CVec n(cfg.dims.nr);
  if (!cfg.noiseless)
    n = generate_noise(cfg.dims, nm, trial_key(cfg, snr_index, trial_id, kNoise));
  const CVec y = transmit(h, frame, n);

  TrialOutcome o;
  o.trial_id = trial_id;
  for (const DetectorConfig& d : dets) {
    const DetectionResult r = detect(y, h, c, nm, d);
    o.bit_errors.push_back(count_bit_errors(frame, r.symbols, c));
    o.stats.push_back(r.stats);
  }
  return o;
}

SweepResult run_sweep(const SweepConfig& cfg, int threads) {
  return run_impl(cfg, true, threads);
}

SweepResult run_sweep_serial(const SweepConfig& cfg) {
  return run_impl(cfg, false, 0);
}

void wilson_interval(long err, long n, double& low, double& high) {
  if (n <= 0) {
    low = high = 0.0;
    return;
  }
  const double z = 1.959963984540054;  // 95%
  const double p = static_cast<double>(err) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p + z2 / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // At the extremes the closed form is exactly 0 (or 1) algebraically but
  // accumulates rounding noise; pin the endpoint instead.
  low = err == 0 ? 0.0 : std::max(0.0, (center - half) / denom);
  high = err == n ? 1.0 : std::min(1.0, (center + half) / denom);
}

double snr_at_ber(const BerCurve& curve, double target_ber) {
  if (target_ber <= 0.0)
    throw HarnessError("snr_at_ber: target must be positive");
  const auto& pts = curve.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i].ber, b = pts[i + 1].ber;
    if (a >= target_ber && b <= target_ber && b > 0.0) {
      if (a == b) return pts[i].snr_db;
      const double f = (std::log10(a) - std::log10(target_ber)) /
                       (std::log10(a) - std::log10(b));
      return pts[i].snr_db + f * (pts[i + 1].snr_db - pts[i].snr_db);
    }
  }
  throw HarnessError("snr_at_ber: curve does not cross the target BER");
}

double snr_gain_at_ber(const BerCurve& a, const BerCurve& b,
                       double target_ber) {
  return snr_at_ber(b, target_ber) - snr_at_ber(a, target_ber);
}

}  // namespace mimosic
