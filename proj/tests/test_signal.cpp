#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mimosic/signal.hpp"

using namespace mimosic;

TEST_CASE("4-QAM alphabet and energy") {
  const Constellation c = build_qam(4);
  REQUIRE(c.size() == 4);
  CHECK(c.bits_per_symbol == 2);
  CHECK(c.es == doctest::Approx(2.0));
  std::vector<cplx> expect = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  for (const cplx& p : expect)
    CHECK(std::count(c.points.begin(), c.points.end(), p) == 1);
}

TEST_CASE("16-QAM grid and energy") {
  const Constellation c = build_qam(16);
  REQUIRE(c.size() == 16);
  CHECK(c.bits_per_symbol == 4);
  CHECK(c.es == doctest::Approx(10.0));  // mean of {2,10,10,18}
  for (const cplx& p : c.points) {
    CHECK(std::abs(std::fmod(p.real(), 2.0)) == doctest::Approx(1.0));
    CHECK(std::abs(p.real()) <= 3.0);
    CHECK(std::abs(p.imag()) <= 3.0);
  }
}

TEST_CASE("labels are distinct, complete, Gray per axis") {
  for (int m : {4, 16}) {
    const Constellation c = build_qam(m);
    std::vector<bool> seen(m, false);
    for (uint32_t l : c.labels) {
      REQUIRE(l < static_cast<uint32_t>(m));
      CHECK(!seen[l]);
      seen[l] = true;
    }
    // geometric neighbors (distance 2 on one axis) differ in exactly 1 bit
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (std::abs(c.points[a] - c.points[b]) == doctest::Approx(2.0)) {
          const uint32_t diff = c.labels[a] ^ c.labels[b];
          CHECK(__builtin_popcount(diff) == 1);
        }
      }
  }
}

TEST_CASE("build_qam rejects unsupported orders") {
  CHECK_THROWS(build_qam(8));
  CHECK_THROWS(build_qam(64));
}

TEST_CASE("quantize") {
  const Constellation c = build_qam(4);
  CHECK(quantize(cplx{0.3, 0.2}, c) == cplx{1, 1});
  for (const cplx& p : c.points) CHECK(quantize(p, c) == p);
  // z = 0 is equidistant from all four points: lowest index wins
  CHECK(quantize_index(cplx{0, 0}, c) == 0);
}

TEST_CASE("quantize idempotence and sign rule") {
  const Constellation c4 = build_qam(4);
  const Constellation c16 = build_qam(16);
  Rng rng({5, 0, 0});
  for (int i = 0; i < 200; ++i) {
    const cplx z = rng.cgaussian(4.0);
    for (const Constellation* c : {&c4, &c16}) {
      const cplx q = quantize(z, *c);
      CHECK(quantize(q, *c) == q);
    }
    if (z.real() != 0.0 && z.imag() != 0.0) {
      const cplx expect{z.real() > 0 ? 1.0 : -1.0, z.imag() > 0 ? 1.0 : -1.0};
      CHECK(quantize(z, c4) == expect);
    }
  }
}

TEST_CASE("neighbor_order") {
  const Constellation c = build_qam(4);
  const auto order = neighbor_order(cplx{0.9, 0.8}, c, 4);
  std::vector<cplx> got;
  for (int i : order) got.push_back(c.points[i]);
  const std::vector<cplx> expect = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  CHECK(got == expect);

  CHECK_THROWS(neighbor_order(cplx{0, 0}, c, 0));
  CHECK_THROWS(neighbor_order(cplx{0, 0}, c, 5));
}

TEST_CASE("neighbor_order properties") {
  for (int m : {4, 16}) {
    const Constellation c = build_qam(m);
    Rng rng({6, 0, 0});
    for (int i = 0; i < 100; ++i) {
      const cplx z = rng.cgaussian(6.0);
      CHECK(neighbor_order(z, c, 1)[0] == quantize_index(z, c));
      const auto full = neighbor_order(z, c, m);
      std::vector<int> sorted = full;
      std::sort(sorted.begin(), sorted.end());
      for (int j = 0; j < m; ++j) CHECK(sorted[j] == j);  // permutation
      for (int j = 1; j < m; ++j)
        CHECK(std::abs(z - c.points[full[j - 1]]) <=
              std::abs(z - c.points[full[j]]) + 1e-12);
    }
  }
}

TEST_CASE("snr_to_sigma2") {
  const Constellation c = build_qam(4);
  const SystemDims dims{4, 4};
  CHECK(snr_to_sigma2(10.0, dims, c).sigma2 == doctest::Approx(0.8));
  CHECK(snr_to_sigma2(0.0, dims, c).sigma2 == doctest::Approx(8.0));
  CHECK(snr_to_sigma2(200.0, dims, c).sigma2 < 1e-15);
  for (double db : {-3.0, 0.0, 7.5, 12.0, 30.0}) {
    const double s2 = snr_to_sigma2(db, dims, c).sigma2;
    CHECK(sigma2_to_snr_db(s2, dims, c) == doctest::Approx(db).epsilon(1e-9));
  }
}

TEST_CASE("generate_channel determinism and moments") {
  const SystemDims dims{4, 4};
  const CMat h1 = generate_channel(dims, {42, 7, 0});
  const CMat h2 = generate_channel(dims, {42, 7, 0});
  CHECK(h1.data() == h2.data());
  const CMat h3 = generate_channel(dims, {42, 8, 0});
  CHECK(h1.data() != h3.data());

  double sum_re = 0.0, sum_im = 0.0, sum_e = 0.0;
  long n = 0;
  for (uint64_t t = 0; t < 10000; ++t) {
    const CMat h = generate_channel(dims, {1, t, 0});
    for (const cplx& z : h.data()) {
      sum_re += z.real();
      sum_im += z.imag();
      sum_e += std::norm(z);
      ++n;
    }
  }
  CHECK(std::abs(sum_re / n) < 0.02);
  CHECK(std::abs(sum_im / n) < 0.02);
  CHECK(sum_e / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("generate_noise variance and determinism") {
  const SystemDims dims{4, 4};
  const NoiseModel nm{0.8};
  CHECK(generate_noise(dims, nm, {3, 3, 3}) ==
        generate_noise(dims, nm, {3, 3, 3}));
  double sum_e = 0.0;
  long n = 0;
  for (uint64_t t = 0; t < 30000; ++t) {
    const CVec v = generate_noise(dims, nm, {2, t, 1});
    for (const cplx& z : v) {
      sum_e += std::norm(z);
      ++n;
    }
  }
  CHECK(sum_e / n == doctest::Approx(0.8).epsilon(0.02));

  const CVec z0 = generate_noise(dims, NoiseModel{0.0}, {2, 2, 2});
  for (const cplx& z : z0) CHECK(z == cplx{0, 0});
}

TEST_CASE("random_frame mapping and statistics") {
  const Constellation c = build_qam(4);
  const SystemDims dims{4, 4};

  const TxFrame all_zero = frame_from_bits({0, 0, 0, 0, 0, 0, 0, 0}, c);
  for (int idx : all_zero.symbol_idx) CHECK(c.labels[idx] == 0u);

  std::map<int, long> freq;
  for (uint64_t t = 0; t < 20000; ++t) {
    const TxFrame f = random_frame(dims, c, {11, t, 0});
    // round-trip: symbols -> bits -> symbols
    const TxFrame g = frame_from_bits(f.bits, c);
    CHECK(g.symbol_idx == f.symbol_idx);
    for (int idx : f.symbol_idx) freq[idx]++;
  }
  const double total = 20000.0 * 4;
  // multinomial 3-sigma band around 1/4
  const double sigma = std::sqrt(0.25 * 0.75 / total);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(freq[i] / total - 0.25) < 3.5 * sigma);
}

TEST_CASE("transmit") {
  const Constellation c = build_qam(4);
  const TxFrame f = frame_from_bits({0, 1, 1, 0}, c);
  const CMat eye = CMat::identity(2);
  const CVec zero(2);
  CHECK(transmit(eye, f, zero) == f.symbols);

  Rng rng({13, 0, 0});
  CMat h(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) h(i, j) = rng.cgaussian(1.0);
  CVec n = {rng.cgaussian(0.1), rng.cgaussian(0.1)};
  const CVec y = transmit(h, f, n);
  for (std::size_t i = 0; i < 2; ++i) {
    const cplx expect =
        h(i, 0) * f.symbols[0] + h(i, 1) * f.symbols[1] + n[i];
    CHECK(std::abs(y[i] - expect) < 1e-12);
  }

  CHECK_THROWS(transmit(CMat::identity(3), f, zero));
}

TEST_CASE("transmit linearity") {
  const Constellation c = build_qam(4);
  Rng rng({14, 0, 0});
  CMat h(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) h(i, j) = rng.cgaussian(1.0);
  const TxFrame f1 = frame_from_bits({0, 0, 1, 1}, c);
  const TxFrame f2 = frame_from_bits({1, 0, 0, 1}, c);
  const CVec zero(3);
  const CVec y1 = transmit(h, f1, zero);
  const CVec y2 = transmit(h, f2, zero);
  CVec s12(2);
  for (int j = 0; j < 2; ++j) s12[j] = f1.symbols[j] + f2.symbols[j];
  const CVec y12 = matvec(h, s12);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(y12[i] - (y1[i] + y2[i])) < 1e-12);
}

TEST_CASE("count_bit_errors") {
  const Constellation c = build_qam(4);
  const SystemDims dims{4, 4};
  const TxFrame f = random_frame(dims, c, {21, 0, 0});
  CHECK(count_bit_errors(f, f.symbols, c) == 0);

  // flip one symbol to a Gray-adjacent point: exactly 1 bit error
  CVec det = f.symbols;
  const int idx0 = f.symbol_idx[0];
  for (int j = 0; j < 4; ++j)
    if (std::abs(c.points[j] - c.points[idx0]) == doctest::Approx(2.0)) {
      det[0] = c.points[j];
      break;
    }
  CHECK(count_bit_errors(f, det, c) == 1);

  // all symbols at maximal label distance: every bit wrong
  CVec worst(4);
  for (int a = 0; a < 4; ++a) {
    const uint32_t want = c.labels[f.symbol_idx[a]] ^ 0x3u;
    worst[a] = c.points[c.label_to_idx[want]];
  }
  CHECK(count_bit_errors(f, worst, c) == 8);

  CVec bad = f.symbols;
  bad[0] = cplx{0.5, 0.5};
  CHECK_THROWS(count_bit_errors(f, bad, c));
}
