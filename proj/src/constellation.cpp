#include "mimosic/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mimosic {

namespace {

uint32_t gray(uint32_t v) { return v ^ (v >> 1); }

}  // namespace

Constellation build_qam(int m) {
  if (m != 4 && m != 16)
    throw std::invalid_argument("build_qam: unsupported order " +
                                std::to_string(m));
  const int side = (m == 4) ? 2 : 4;
  const int bits_per_axis = (m == 4) ? 1 : 2;

  Constellation c;
  c.bits_per_symbol = 2 * bits_per_axis;
  c.points.reserve(m);
  c.labels.reserve(m);
  for (int ii = 0; ii < side; ++ii) {
    const double re = 2.0 * ii - (side - 1);
    for (int iq = 0; iq < side; ++iq) {
      const double im = 2.0 * iq - (side - 1);
      c.points.emplace_back(re, im);
      c.labels.push_back((gray(static_cast<uint32_t>(ii)) << bits_per_axis) |
                         gray(static_cast<uint32_t>(iq)));
    }
  }
  c.label_to_idx.assign(m, -1);
  for (int i = 0; i < m; ++i) c.label_to_idx[c.labels[i]] = i;

  double e = 0.0;
  for (const cplx& p : c.points) e += std::norm(p);
  c.es = e / m;
  return c;
}

int quantize_index(const cplx& z, const Constellation& c) {
  int best = 0;
  double best_d = std::norm(z - c.points[0]);
  for (int i = 1; i < c.size(); ++i) {
    const double d = std::norm(z - c.points[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

cplx quantize(const cplx& z, const Constellation& c) {
  return c.points[quantize_index(z, c)];
}

std::vector<int> neighbor_order(const cplx& z, const Constellation& c, int s) {
  if (s < 1 || s > c.size())
    throw std::invalid_argument("neighbor_order: s out of range");
  std::vector<int> idx(c.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::norm(z - c.points[a]) < std::norm(z - c.points[b]);
  });
  idx.resize(s);
  return idx;
}

}  // namespace mimosic
