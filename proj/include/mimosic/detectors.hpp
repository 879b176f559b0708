// The seven detectors: ML, ZF, MMSE, SIC, MF-SIC, IMF-SIC and the
// LLR-ordered OIMF-SIC, sharing MMSE layer filtering, shadow-area
// reliability checks, multiple-feedback candidate search and LLR ordering.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimosic/constellation.hpp"
#include "mimosic/linalg.hpp"
#include "mimosic/signal.hpp"

namespace mimosic {

enum class DetectorKind { ML, ZF, MMSE, SIC, MfSic, ImfSic, OimfSic };

const char* detector_name(DetectorKind k);
// Returns true and fills `out` when the name is recognized.
bool parse_detector_name(const std::string& name, DetectorKind& out);

struct DetectorConfig {
  DetectorKind kind = DetectorKind::MMSE;
  double d_th = 0.2;  // shadow-area threshold radius
  int s = 4;          // candidate neighborhood size
  int l = 2;          // recursion budget for IMF/OIMF
  bool oimf_fixed_r = false;  // freeze the LLR leverage matrix at full H
};

struct DetectionStats {
  long sac_triggers = 0;     // unreliable decisions that spawned branches
  int max_depth = 0;         // deepest nesting of the feedback subroutine
  long candidate_evals = 0;  // full-vector residual evaluations
};

struct DetectionResult {
  std::vector<int> symbol_idx;  // alphabet index per transmit antenna
  CVec symbols;
  DetectionStats stats;
};

struct DetectError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Soft decision with its shadow-area verdict (d <= d_th is reliable).
struct SoftDecision {
  cplx z;
  double d;
  bool reliable;
};

SoftDecision sac_check(const cplx& z, const Constellation& c, double d_th);

// MMSE layer filter w solving (H_rem H_rem^H + (sigma2/Es) I) w = h_target,
// where h_target is the first column of h_remaining.
CVec mmse_filter_column(const CMat& h_remaining, const NoiseModel& nm,
                        const Constellation& c);

// LLR ordering statistic |z| / (1 - h^H R^{-1} h) evaluated through the
// given Cholesky factor of R.
double llr_metric(const cplx& z, const CVec& h_col, const CholeskyFactor& r);
double llr_metric(const cplx& z, const CVec& h_col, const CMat& r);

// Exhaustive minimum-distance search over all M^Nt candidate vectors.
DetectionResult detect_ml(const CVec& y, const CMat& h,
                          const Constellation& c);

// Unquantized linear estimates (HᴴH)⁻¹Hᴴy and (HᴴH + σ²/Es·I)⁻¹Hᴴy.
CVec zf_soft(const CVec& y, const CMat& h);
CVec mmse_soft(const CVec& y, const CMat& h, const Constellation& c,
               const NoiseModel& nm);

DetectionResult detect_zf(const CVec& y, const CMat& h,
                          const Constellation& c);

DetectionResult detect_mmse(const CVec& y, const CMat& h,
                            const Constellation& c, const NoiseModel& nm);

// Sequential cancellation over an explicit detection order.
DetectionResult sic_pass(const CVec& y, const CMat& h, const Constellation& c,
                         const NoiseModel& nm, const std::vector<int>& order);

DetectionResult detect_sic(const CVec& y, const CMat& h,
                           const Constellation& c, const NoiseModel& nm);

DetectionResult detect_mf_sic(const CVec& y, const CMat& h,
                              const Constellation& c, const NoiseModel& nm,
                              const DetectorConfig& cfg);

DetectionResult detect_imf_sic(const CVec& y, const CMat& h,
                               const Constellation& c, const NoiseModel& nm,
                               const DetectorConfig& cfg);

DetectionResult detect_oimf_sic(const CVec& y, const CMat& h,
                                const Constellation& c, const NoiseModel& nm,
                                const DetectorConfig& cfg);

// Remaining indices of `b` sorted by descending LLR statistic (ties by
// lower original index); y_current is the interference-reduced received
// vector and h the full channel matrix.
std::vector<int> llr_order(const CVec& y_current, const CMat& h,
                           const std::vector<int>& b, const NoiseModel& nm,
                           const Constellation& c);

DetectionResult detect(const CVec& y, const CMat& h, const Constellation& c,
                       const NoiseModel& nm, const DetectorConfig& cfg);

}  // namespace mimosic
