// Square-QAM constellations with per-axis Gray bit labels, nearest-point
// quantization and neighborhood ordering.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mimosic/linalg.hpp"

namespace mimosic {

struct Constellation {
  std::vector<cplx> points;       // alphabet, fixed index order
  int bits_per_symbol = 0;        // log2 M
  std::vector<uint32_t> labels;   // bit pattern per point
  std::vector<int> label_to_idx;  // inverse of labels
  double es = 0.0;                // average symbol energy

  int size() const { return static_cast<int>(points.size()); }
};

// m in {4, 16}. 4-QAM is {-1-1i, -1+1i, 1-1i, 1+1i} with Es = 2;
// 16-QAM is the odd-integer grid {+-1,+-3} x {+-1,+-3}i with Es = 10.
Constellation build_qam(int m);

// Index of the alphabet point nearest to z; ties go to the lowest index.
int quantize_index(const cplx& z, const Constellation& c);
cplx quantize(const cplx& z, const Constellation& c);

// The s alphabet point indices nearest to z, ascending by distance,
// ties by lowest index.
std::vector<int> neighbor_order(const cplx& z, const Constellation& c, int s);

}  // namespace mimosic
