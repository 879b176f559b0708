#include "mimosic/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>

namespace mimosic {

const char* detector_name(DetectorKind k) {
  switch (k) {
    case DetectorKind::ML: return "ml";
    case DetectorKind::ZF: return "zf";
    case DetectorKind::MMSE: return "mmse";
    case DetectorKind::SIC: return "sic";
    case DetectorKind::MfSic: return "mf-sic";
    case DetectorKind::ImfSic: return "imf-sic";
    case DetectorKind::OimfSic: return "oimf-sic";
  }
  return "?";
}

bool parse_detector_name(const std::string& name, DetectorKind& out) {
  for (DetectorKind k :
       {DetectorKind::ML, DetectorKind::ZF, DetectorKind::MMSE,
        DetectorKind::SIC, DetectorKind::MfSic, DetectorKind::ImfSic,
        DetectorKind::OimfSic}) {
    if (name == detector_name(k)) {
      out = k;
      return true;
    }
  }
  return false;
}

SoftDecision sac_check(const cplx& z, const Constellation& c, double d_th) {
  const double d = std::abs(z - quantize(z, c));
  return {z, d, d <= d_th};
}

namespace {

// Gram system A = H_sel H_sel^H + reg I over the selected columns of h.
CMat column_gram(const CMat& h, const std::vector<int>& cols, double reg) {
  const std::size_t nr = h.rows();
  CMat a(nr, nr);
  for (int j : cols)
    for (std::size_t r = 0; r < nr; ++r) {
      const cplx hr = h(r, static_cast<std::size_t>(j));
      for (std::size_t s = 0; s < nr; ++s)
        a(r, s) += hr * std::conj(h(s, static_cast<std::size_t>(j)));
    }
  for (std::size_t r = 0; r < nr; ++r) a(r, r) += reg;
  return a;
}

void validate_config(const DetectorConfig& cfg, const Constellation& c) {
  if (cfg.d_th < 0.0) throw DetectError("detector config: d_th must be >= 0");
  if (cfg.s < 1 || cfg.s > c.size())
    throw DetectError("detector config: candidate count S out of range");
  if (cfg.l < 1) throw DetectError("detector config: recursion budget L < 1");
}

DetectionResult result_from_indices(std::vector<int> idx,
                                    const Constellation& c,
                                    DetectionStats stats) {
  DetectionResult r;
  r.symbols.reserve(idx.size());
  for (int i : idx) r.symbols.push_back(c.points[i]);
  r.symbol_idx = std::move(idx);
  r.stats = stats;
  return r;
}

// Shared machinery for the SIC family. One instance handles one received
// vector; filter factorizations are cached per remaining-column set so
// candidate branches and recursion levels reuse them.
class SicEngine {
 public:
  SicEngine(const CVec& y, const CMat& h, const Constellation& c,
            const NoiseModel& nm, const DetectorConfig& cfg)
      : y_(y), h_(h), c_(c), cfg_(cfg),
        sigma2_(nm.sigma2), reg_(nm.sigma2 / c.es),
        nt_(static_cast<int>(h.cols())), nr_(static_cast<int>(h.rows())) {
    if (y.size() != h.rows()) throw DetectError("detect: dimension mismatch");
    hcols_.reserve(nt_);
    for (int j = 0; j < nt_; ++j) hcols_.push_back(h.column(j));
    if (cfg_.oimf_fixed_r) {
      std::vector<int> all(nt_);
      for (int j = 0; j < nt_; ++j) all[j] = j;
      fixed_r_ = std::make_unique<CholeskyFactor>(
          column_gram(h_, all, sigma2_));
      fixed_denom_.assign(nt_, std::numeric_limits<double>::quiet_NaN());
    }
  }

  // mf_enabled=false gives plain SIC over the given order; ordered=true
  // recomputes the LLR detection order after every cancellation.
  DetectionResult run(std::vector<int> order, bool mf_enabled, bool ordered,
                      int depth_budget) {
    CVec ycur = y_;
    std::vector<int> rem = std::move(order);
    std::vector<int> decided(nt_, -1);
    while (!rem.empty()) {
      const std::size_t pos = ordered ? llr_head(ycur, rem) : 0;
      const int target = rem[pos];
      const cplx z = soft_estimate(ycur, rem, target);
      const SoftDecision sd = sac_check(z, c_, cfg_.d_th);
      int sym;
      if (!mf_enabled || sd.reliable) {
        sym = quantize_index(z, c_);
      } else {
        ++stats_.sac_triggers;
        sym = feedback_search(ycur, rem, pos, z, decided, depth_budget, 1,
                              ordered);
      }
      decided[target] = sym;
      cancel(ycur, target, sym);
      rem.erase(rem.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    return result_from_indices(std::move(decided), c_, stats_);
  }

 private:
  // Per remaining-column set: the filter factorization plus, lazily, the
  // filter vector and LLR leverage denominator per target. These depend
  // only on (set, target), so branch work reduces to inner products.
  struct MaskEntry {
    std::unique_ptr<CholeskyFactor> feed, llr;
    std::vector<CVec> w;            // indexed by target, empty = not built
    std::vector<double> llr_denom;  // NaN = not built
  };

  uint64_t mask_of(const std::vector<int>& rem) const {
    uint64_t m = 0;
    for (int j : rem) m |= uint64_t{1} << j;
    return m;
  }

  MaskEntry& entry_for(const std::vector<int>& rem) {
    const uint64_t m = mask_of(rem);
    auto it = cache_.find(m);
    if (it == cache_.end()) {
      MaskEntry e;
      e.feed = std::make_unique<CholeskyFactor>(column_gram(h_, rem, reg_));
      e.w.resize(nt_);
      e.llr_denom.assign(nt_, std::numeric_limits<double>::quiet_NaN());
      it = cache_.emplace(m, std::move(e)).first;
    }
    return it->second;
  }

  const CVec& filter_for(MaskEntry& e, int target) {
    if (e.w[target].empty()) e.w[target] = e.feed->solve(hcols_[target]);
    return e.w[target];
  }

  double llr_denom_for(MaskEntry& e, const std::vector<int>& rem,
                       int target) {
    if (fixed_r_) {
      if (std::isnan(fixed_denom_[target]))
        fixed_denom_[target] = leverage_denom(*fixed_r_, target);
      return fixed_denom_[target];
    }
    if (std::isnan(e.llr_denom[target])) {
      if (!e.llr)
        e.llr =
            std::make_unique<CholeskyFactor>(column_gram(h_, rem, sigma2_));
      e.llr_denom[target] = leverage_denom(*e.llr, target);
    }
    return e.llr_denom[target];
  }

  double leverage_denom(const CholeskyFactor& rf, int target) const {
    const double denom =
        1.0 - inner(hcols_[target], rf.solve(hcols_[target])).real();
    if (std::abs(denom) < 1e-12)
      throw DetectError("llr ordering: degenerate leverage");
    return denom;
  }

  cplx soft_estimate(const CVec& ycur, const std::vector<int>& rem,
                     int target) {
    return inner(filter_for(entry_for(rem), target), ycur);
  }

  std::size_t llr_head(const CVec& ycur, const std::vector<int>& rem) {
    MaskEntry& e = entry_for(rem);
    std::size_t best = 0;
    double best_l = -1.0;
    for (std::size_t p = 0; p < rem.size(); ++p) {
      const cplx z = inner(filter_for(e, rem[p]), ycur);
      const double l = std::abs(z) / llr_denom_for(e, rem, rem[p]);
      if (l > best_l) {
        best_l = l;
        best = p;
      }
    }
    return best;
  }

  void cancel(CVec& ycur, int target, int sym) const {
    const cplx s = c_.points[sym];
    const CVec& hc = hcols_[target];
    for (int r = 0; r < nr_; ++r) ycur[r] -= hc[r] * s;
  }

  // Multiple-feedback search for one unreliable layer: try the S nearest
  // constellation points as the layer decision, complete each branch over
  // the later layers, and keep the seed whose full candidate vector
  // minimizes ||y - H x||^2. depth counts the remaining recursion budget
  // for unreliable decisions inside a branch; at zero they are quantized,
  // which reproduces the plain multiple-feedback behavior.
  int feedback_search(const CVec& ycur, const std::vector<int>& rem,
                      std::size_t pos, const cplx& z,
                      const std::vector<int>& decided, int depth, int level,
                      bool ordered) {
    stats_.max_depth = std::max(stats_.max_depth, level);
    const std::vector<int> seeds = neighbor_order(z, c_, cfg_.s);
    const int target = rem[pos];

    int best_seed = seeds.front();
    double best_res = std::numeric_limits<double>::infinity();
    for (int seed : seeds) {
      std::vector<int> bdec = decided;
      bdec[target] = seed;
      CVec by = ycur;
      cancel(by, target, seed);
      std::vector<int> brem = rem;
      brem.erase(brem.begin() + static_cast<std::ptrdiff_t>(pos));

      while (!brem.empty()) {
        const std::size_t bp = ordered ? llr_head(by, brem) : 0;
        const int k = brem[bp];
        const cplx zk = soft_estimate(by, brem, k);
        const SoftDecision sd = sac_check(zk, c_, cfg_.d_th);
        int sk;
        if (sd.reliable || depth == 0) {
          sk = quantize_index(zk, c_);
        } else {
          ++stats_.sac_triggers;
          sk = feedback_search(by, brem, bp, zk, bdec, depth - 1, level + 1,
                               ordered);
        }
        bdec[k] = sk;
        cancel(by, k, sk);
        brem.erase(brem.begin() + static_cast<std::ptrdiff_t>(bp));
      }

      ++stats_.candidate_evals;
      const double res = full_residual(bdec);
      if (res < best_res) {
        best_res = res;
        best_seed = seed;
      }
    }
    return best_seed;
  }

  double full_residual(const std::vector<int>& decided) const {
    double acc = 0.0;
    for (int r = 0; r < nr_; ++r) {
      cplx v = y_[r];
      for (int j = 0; j < nt_; ++j)
        v -= h_(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) *
             c_.points[decided[j]];
      acc += std::norm(v);
    }
    return acc;
  }

  const CVec& y_;
  const CMat& h_;
  const Constellation& c_;
  DetectorConfig cfg_;
  double sigma2_, reg_;
  int nt_, nr_;
  std::vector<CVec> hcols_;
  std::unordered_map<uint64_t, MaskEntry> cache_;
  std::unique_ptr<CholeskyFactor> fixed_r_;
  std::vector<double> fixed_denom_;
  DetectionStats stats_;
};

std::vector<int> natural_order(int nt) {
  std::vector<int> o(nt);
  for (int i = 0; i < nt; ++i) o[i] = i;
  return o;
}

}  // namespace

CVec mmse_filter_column(const CMat& h_remaining, const NoiseModel& nm,
                        const Constellation& c) {
  if (h_remaining.cols() == 0)
    throw DetectError("mmse_filter_column: no remaining columns");
  const std::size_t nr = h_remaining.rows();
  CMat a(nr, nr);
  for (std::size_t j = 0; j < h_remaining.cols(); ++j)
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t s = 0; s < nr; ++s)
        a(r, s) += h_remaining(r, j) * std::conj(h_remaining(s, j));
  for (std::size_t r = 0; r < nr; ++r) a(r, r) += nm.sigma2 / c.es;
  return hermitian_solve(a, h_remaining.column(0));
}

double llr_metric(const cplx& z, const CVec& h_col, const CholeskyFactor& r) {
  const CVec x = r.solve(h_col);
  const double leverage = inner(h_col, x).real();
  const double denom = 1.0 - leverage;
  if (std::abs(denom) < 1e-12)
    throw DetectError("llr_metric: degenerate leverage");
  return std::abs(z) / denom;
}

double llr_metric(const cplx& z, const CVec& h_col, const CMat& r) {
  return llr_metric(z, h_col, CholeskyFactor(r));
}

std::vector<int> llr_order(const CVec& y_current, const CMat& h,
                           const std::vector<int>& b, const NoiseModel& nm,
                           const Constellation& c) {
  if (b.empty()) throw DetectError("llr_order: empty index set");
  const CholeskyFactor rf(column_gram(h, b, nm.sigma2));
  const CholeskyFactor wf(column_gram(h, b, nm.sigma2 / c.es));
  std::vector<double> l(b.size());
  for (std::size_t p = 0; p < b.size(); ++p) {
    const CVec hc = h.column(static_cast<std::size_t>(b[p]));
    const CVec w = wf.solve(hc);
    l[p] = llr_metric(inner(w, y_current), hc, rf);
  }
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t q) { return l[a] > l[q]; });
  std::vector<int> t(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) t[i] = b[perm[i]];
  return t;
}

DetectionResult detect_ml(const CVec& y, const CMat& h,
                          const Constellation& c) {
  if (y.size() != h.rows()) throw DetectError("detect_ml: dimension mismatch");
  const int nt = static_cast<int>(h.cols());
  const int nr = static_cast<int>(h.rows());
  const int m = c.size();
  const double space = std::pow(static_cast<double>(m), nt);
  if (space > 4294967296.0)
    throw DetectError("detect_ml: search space " + std::to_string(m) + "^" +
                      std::to_string(nt) + " exceeds the 2^32 budget");

  std::vector<CVec> hcols;
  hcols.reserve(nt);
  for (int j = 0; j < nt; ++j) hcols.push_back(h.column(j));

  // Depth-first enumeration in lexicographic symbol-index order; the
  // strict comparison keeps the lexicographically first minimizer.
  std::vector<CVec> partial(nt + 1, CVec(nr));
  partial[0] = y;
  std::vector<int> choice(nt, 0), best(nt, 0);
  double best_res = std::numeric_limits<double>::infinity();
  long evals = 0;

  int depth = 0;
  choice[0] = -1;
  while (depth >= 0) {
    if (++choice[depth] == m) {
      --depth;
      continue;
    }
    const cplx s = c.points[choice[depth]];
    const CVec& prev = partial[depth];
    CVec& cur = partial[depth + 1];
    const CVec& hc = hcols[depth];
    for (int r = 0; r < nr; ++r) cur[r] = prev[r] - hc[r] * s;
    if (depth + 1 == nt) {
      ++evals;
      const double res = norm_sq(cur);
      if (res < best_res) {
        best_res = res;
        best = choice;
      }
    } else {
      ++depth;
      choice[depth] = -1;
    }
  }

  DetectionStats stats;
  stats.candidate_evals = evals;
  return result_from_indices(std::move(best), c, stats);
}

CVec zf_soft(const CVec& y, const CMat& h) {
  const CMat hh = conj_transpose(h);
  try {
    return CholeskyFactor(matmul(hh, h)).solve(matvec(hh, y));
  } catch (const NotPositiveDefinite&) {
    throw DetectError("detect_zf: rank-deficient channel matrix");
  }
}

CVec mmse_soft(const CVec& y, const CMat& h, const Constellation& c,
               const NoiseModel& nm) {
  const CMat hh = conj_transpose(h);
  CMat a = matmul(hh, h);
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += nm.sigma2 / c.es;
  return CholeskyFactor(a).solve(matvec(hh, y));
}

namespace {

DetectionResult quantize_soft(const CVec& soft, const Constellation& c) {
  std::vector<int> idx(soft.size());
  for (std::size_t i = 0; i < soft.size(); ++i)
    idx[i] = quantize_index(soft[i], c);
  return result_from_indices(std::move(idx), c, {});
}

}  // namespace

DetectionResult detect_zf(const CVec& y, const CMat& h,
                          const Constellation& c) {
  return quantize_soft(zf_soft(y, h), c);
}

DetectionResult detect_mmse(const CVec& y, const CMat& h,
                            const Constellation& c, const NoiseModel& nm) {
  return quantize_soft(mmse_soft(y, h, c, nm), c);
}

DetectionResult sic_pass(const CVec& y, const CMat& h, const Constellation& c,
                         const NoiseModel& nm, const std::vector<int>& order) {
  const int nt = static_cast<int>(h.cols());
  std::vector<bool> seen(nt, false);
  if (order.size() != static_cast<std::size_t>(nt))
    throw DetectError("sic_pass: order is not a permutation");
  for (int j : order) {
    if (j < 0 || j >= nt || seen[j])
      throw DetectError("sic_pass: order is not a permutation");
    seen[j] = true;
  }
  SicEngine eng(y, h, c, nm, {});
  return eng.run(order, /*mf_enabled=*/false, /*ordered=*/false, 0);
}

DetectionResult detect_sic(const CVec& y, const CMat& h,
                           const Constellation& c, const NoiseModel& nm) {
  return sic_pass(y, h, c, nm, natural_order(static_cast<int>(h.cols())));
}

DetectionResult detect_mf_sic(const CVec& y, const CMat& h,
                              const Constellation& c, const NoiseModel& nm,
                              const DetectorConfig& cfg) {
  validate_config(cfg, c);
  SicEngine eng(y, h, c, nm, cfg);
  return eng.run(natural_order(static_cast<int>(h.cols())), true, false, 0);
}

DetectionResult detect_imf_sic(const CVec& y, const CMat& h,
                               const Constellation& c, const NoiseModel& nm,
                               const DetectorConfig& cfg) {
  validate_config(cfg, c);
  SicEngine eng(y, h, c, nm, cfg);
  return eng.run(natural_order(static_cast<int>(h.cols())), true, false,
                 cfg.l - 1);
}

DetectionResult detect_oimf_sic(const CVec& y, const CMat& h,
                                const Constellation& c, const NoiseModel& nm,
                                const DetectorConfig& cfg) {
  validate_config(cfg, c);
  SicEngine eng(y, h, c, nm, cfg);
  return eng.run(natural_order(static_cast<int>(h.cols())), true, true,
                 cfg.l - 1);
}

DetectionResult detect(const CVec& y, const CMat& h, const Constellation& c,
                       const NoiseModel& nm, const DetectorConfig& cfg) {
  switch (cfg.kind) {
    case DetectorKind::ML: return detect_ml(y, h, c);
    case DetectorKind::ZF: return detect_zf(y, h, c);
    case DetectorKind::MMSE: return detect_mmse(y, h, c, nm);
    case DetectorKind::SIC: return detect_sic(y, h, c, nm);
    case DetectorKind::MfSic: return detect_mf_sic(y, h, c, nm, cfg);
    case DetectorKind::ImfSic: return detect_imf_sic(y, h, c, nm, cfg);
    case DetectorKind::OimfSic: return detect_oimf_sic(y, h, c, nm, cfg);
  }
  throw DetectError("detect: unknown detector kind");
}

}  // namespace mimosic
