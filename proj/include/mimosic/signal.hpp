// Physical-layer substrate: antenna dimensions, SNR bookkeeping, streamed
// RNG, Rayleigh channel and AWGN generation, bit<->symbol framing.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mimosic/constellation.hpp"
#include "mimosic/linalg.hpp"

namespace mimosic {

struct SystemDims {
  int nt = 1;
  int nr = 1;
};

struct NoiseModel {
  double sigma2 = 1.0;  // per-complex-entry variance
};

// Identifies one reproducible draw sequence. Streams keyed by trial index
// are independent, so trials can run on any schedule.
struct RngStream {
  uint64_t seed = 0;
  uint64_t stream_id = 0;
  uint64_t substream = 0;
};

// Counter-seeded generator: splitmix64 state derived from the stream key,
// Gaussians via Box-Muller. Identical keys give identical sequences on
// every platform.
class Rng {
 public:
  explicit Rng(const RngStream& s);

  uint64_t next_u64();
  double uniform();        // (0, 1]
  double gaussian();       // standard normal
  cplx cgaussian(double var);  // CN(0, var)

  // Uniform integer in [0, n)
  uint32_t below(uint32_t n);

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct TxFrame {
  std::vector<uint8_t> bits;  // Nt * bits_per_symbol entries, MSB-first per symbol
  std::vector<int> symbol_idx;
  CVec symbols;
};

NoiseModel snr_to_sigma2(double snr_db, const SystemDims& dims,
                         const Constellation& c);
double sigma2_to_snr_db(double sigma2, const SystemDims& dims,
                        const Constellation& c);

// Nr x Nt i.i.d. CN(0,1) Rayleigh flat-fading channel.
CMat generate_channel(const SystemDims& dims, const RngStream& rng);

// Length-Nr AWGN vector with per-entry complex variance sigma2.
CVec generate_noise(const SystemDims& dims, const NoiseModel& nm,
                    const RngStream& rng);

// Uniform random bits mapped through the constellation labels.
TxFrame random_frame(const SystemDims& dims, const Constellation& c,
                     const RngStream& rng);

TxFrame frame_from_bits(const std::vector<uint8_t>& bits,
                        const Constellation& c);

// y = H s + n
CVec transmit(const CMat& h, const TxFrame& frame, const CVec& n);

// Hamming distance between the frame's bits and the labels of the
// detected symbols.
int count_bit_errors(const TxFrame& truth, const CVec& detected,
                     const Constellation& c);

}  // namespace mimosic
