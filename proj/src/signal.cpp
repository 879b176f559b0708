#include "mimosic/signal.hpp"

#include <cmath>

namespace mimosic {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

uint64_t splitmix_step(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t mix_key(uint64_t seed, uint64_t stream, uint64_t substream) {
  uint64_t s = seed;
  uint64_t k = splitmix_step(s);
  s ^= stream * 0xd1342543de82ef95ULL;
  k ^= splitmix_step(s);
  s ^= substream * 0xaf251af3b0f025b5ULL;
  k ^= splitmix_step(s);
  return k;
}

}  // namespace

Rng::Rng(const RngStream& s)
    : state_(mix_key(s.seed, s.stream_id, s.substream)) {}

uint64_t Rng::next_u64() { return splitmix_step(state_); }

double Rng::uniform() {
  // 53-bit mantissa, shifted into (0, 1]
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double t = kTwoPi * uniform();
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

cplx Rng::cgaussian(double var) {
  const double s = std::sqrt(var / 2.0);
  const double re = s * gaussian();
  const double im = s * gaussian();
  return {re, im};
}

uint32_t Rng::below(uint32_t n) {
  // modulo bias is negligible at 64 bits for the small n used here
  return static_cast<uint32_t>(next_u64() % n);
}

NoiseModel snr_to_sigma2(double snr_db, const SystemDims& dims,
                         const Constellation& c) {
  return {dims.nt * c.es / std::pow(10.0, snr_db / 10.0)};
}

double sigma2_to_snr_db(double sigma2, const SystemDims& dims,
                        const Constellation& c) {
  return 10.0 * std::log10(dims.nt * c.es / sigma2);
}

CMat generate_channel(const SystemDims& dims, const RngStream& key) {
  Rng rng(key);
  CMat h(dims.nr, dims.nt);
  for (int i = 0; i < dims.nr; ++i)
    for (int j = 0; j < dims.nt; ++j) h(i, j) = rng.cgaussian(1.0);
  return h;
}

CVec generate_noise(const SystemDims& dims, const NoiseModel& nm,
                    const RngStream& key) {
  Rng rng(key);
  CVec n(dims.nr);
  for (int i = 0; i < dims.nr; ++i) n[i] = rng.cgaussian(nm.sigma2);
  return n;
}

TxFrame frame_from_bits(const std::vector<uint8_t>& bits,
                        const Constellation& c) {
  const int bps = c.bits_per_symbol;
  if (bits.size() % bps != 0)
    throw std::invalid_argument("frame_from_bits: bit count not a multiple "
                                "of bits per symbol");
  TxFrame f;
  f.bits = bits;
  const std::size_t nt = bits.size() / bps;
  f.symbol_idx.reserve(nt);
  f.symbols.reserve(nt);
  for (std::size_t a = 0; a < nt; ++a) {
    uint32_t label = 0;
    for (int b = 0; b < bps; ++b)
      label = (label << 1) | (bits[a * bps + b] & 1u);
    const int idx = c.label_to_idx[label];
    f.symbol_idx.push_back(idx);
    f.symbols.push_back(c.points[idx]);
  }
  return f;
}

TxFrame random_frame(const SystemDims& dims, const Constellation& c,
                     const RngStream& key) {
  Rng rng(key);
  std::vector<uint8_t> bits(static_cast<std::size_t>(dims.nt) *
                            c.bits_per_symbol);
  for (uint8_t& b : bits) b = static_cast<uint8_t>(rng.next_u64() & 1u);
  return frame_from_bits(bits, c);
}

CVec transmit(const CMat& h, const TxFrame& frame, const CVec& n) {
  if (h.cols() != frame.symbols.size() || h.rows() != n.size())
    throw std::invalid_argument("transmit: dimension mismatch");
  CVec y = matvec(h, frame.symbols);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += n[i];
  return y;
}

int count_bit_errors(const TxFrame& truth, const CVec& detected,
                     const Constellation& c) {
  if (truth.symbols.size() != detected.size())
    throw std::invalid_argument("count_bit_errors: length mismatch");
  int errs = 0;
  for (std::size_t a = 0; a < detected.size(); ++a) {
    int idx = -1;
    for (int i = 0; i < c.size(); ++i)
      if (c.points[i] == detected[a]) {
        idx = i;
        break;
      }
    if (idx < 0)
      throw std::invalid_argument("count_bit_errors: symbol not in alphabet");
    uint32_t diff = c.labels[truth.symbol_idx[a]] ^ c.labels[idx];
    while (diff) {
      errs += diff & 1u;
      diff >>= 1;
    }
  }
  return errs;
}

}  // namespace mimosic
