#include <doctest.h>

#include <cmath>

#include "mimosic/linalg.hpp"
#include "mimosic/signal.hpp"
#include "support/reference.hpp"

using namespace mimosic;

namespace {

CMat random_matrix(uint64_t seed, std::size_t rows, std::size_t cols) {
  Rng rng({seed, 0, 99});
  CMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.cgaussian(1.0);
  return m;
}

// Hermitian PD matrix with eigenvalues spread up to the given condition.
CMat random_hpd(uint64_t seed, std::size_t n, double cond) {
  CMat g = random_matrix(seed, n, n);
  CMat a = matmul(conj_transpose(g), g);
  for (std::size_t i = 0; i < n; ++i)
    a(i, i) += 1e-3;  // keep it comfortably PD
  // rescale one diagonal entry to stretch the spectrum
  a(0, 0) *= cond;
  return a;
}

double rel_residual(const CMat& a, const CVec& x, const CVec& b) {
  return std::sqrt(norm_sq(residual(b, a, x)) / norm_sq(b));
}

}  // namespace

TEST_CASE("matmul identity and annihilator") {
  CMat a = random_matrix(7, 3, 3);
  CMat i2 = CMat::identity(3);
  CMat prod = matmul(i2, a);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(prod(r, c) == a(r, c));

  CMat zero(3, 2);
  CMat az = matmul(a, zero);
  for (const cplx& z : az.data()) CHECK(z == cplx{0.0, 0.0});
}

TEST_CASE("matmul hand example") {
  CMat a(2, 2);
  a(0, 0) = {1, 1};
  a(1, 1) = {1, 0};
  CMat b(2, 1);
  b(0, 0) = {1, 0};
  b(1, 0) = {0, 2};
  CMat c = matmul(a, b);
  CHECK(c(0, 0) == cplx{1, 1});
  CHECK(c(1, 0) == cplx{0, 2});
}

TEST_CASE("matmul dimension mismatch") {
  CHECK_THROWS_AS(matmul(CMat(2, 3), CMat(2, 3)), LinalgError);
}

TEST_CASE("matmul associativity on random triples") {
  for (uint64_t s = 0; s < 20; ++s) {
    CMat a = random_matrix(s * 3 + 1, 4, 3);
    CMat b = random_matrix(s * 3 + 2, 3, 5);
    CMat c = random_matrix(s * 3 + 3, 5, 2);
    CMat l = matmul(matmul(a, b), c);
    CMat r = matmul(a, matmul(b, c));
    for (std::size_t i = 0; i < l.data().size(); ++i)
      CHECK(std::abs(l.data()[i] - r.data()[i]) <=
            1e-9 * (1.0 + std::abs(l.data()[i])));
  }
}

TEST_CASE("conj_transpose") {
  CMat sym(2, 2);
  sym(0, 0) = 2.0;
  sym(0, 1) = 3.0;
  sym(1, 0) = 3.0;
  sym(1, 1) = 5.0;
  CMat t = conj_transpose(sym);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(t(i, j) == sym(i, j));

  CMat s(1, 1);
  s(0, 0) = {0, 1};
  CHECK(conj_transpose(s)(0, 0) == cplx{0, -1});

  CMat a = random_matrix(11, 3, 4);
  CMat aa = conj_transpose(conj_transpose(a));
  for (std::size_t i = 0; i < a.data().size(); ++i)
    CHECK(aa.data()[i] == a.data()[i]);
}

TEST_CASE("hermitian_solve basics") {
  CVec b = {cplx{1, 2}, cplx{-3, 0.5}, cplx{0, -1}};
  CVec x = hermitian_solve(CMat::identity(3), b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == b[i]);

  CMat two = CMat::identity(3);
  for (std::size_t i = 0; i < 3; ++i) two(i, i) = 2.0;
  x = hermitian_solve(two, b);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(x[i] - b[i] / 2.0) < 1e-15);
}

TEST_CASE("hermitian_solve residual oracle, random 4x4") {
  for (uint64_t s = 0; s < 30; ++s) {
    CMat a = random_hpd(100 + s, 4, 1.0);
    Rng rng({s, 1, 2});
    CVec b(4);
    for (cplx& z : b) z = rng.cgaussian(1.0);
    CVec x = hermitian_solve(a, b);
    CHECK(rel_residual(a, x, b) < 1e-10);
  }
}

TEST_CASE("hermitian_solve handles condition numbers up to 1e6") {
  for (double cond : {1e2, 1e4, 1e6}) {
    CMat a = random_hpd(55, 5, cond);
    Rng rng({55, 2, 3});
    CVec b(5);
    for (cplx& z : b) z = rng.cgaussian(1.0);
    CVec x = hermitian_solve(a, b);
    CHECK(rel_residual(a, x, b) < 1e-10);
  }
}

TEST_CASE("hermitian_solve reports the failed pivot") {
  CMat a(2, 2);  // rank one, second pivot fails
  a(0, 0) = 1.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 1.0;
  CVec b = {1.0, 1.0};
  try {
    hermitian_solve(a, b);
    FAIL("expected NotPositiveDefinite");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.pivot == 1);
  }
}

TEST_CASE("norm_sq") {
  CHECK(norm_sq(CVec{}) == 0.0);
  CHECK(norm_sq(CVec(3)) == 0.0);
  CHECK(norm_sq({cplx{1, 1}}) == doctest::Approx(2.0));
  CHECK(norm_sq({cplx{3, 0}, cplx{0, 4}}) == doctest::Approx(25.0));
}

TEST_CASE("norm_sq zero iff zero vector") {
  Rng rng({9, 9, 9});
  for (int i = 0; i < 50; ++i) {
    CVec v(4);
    for (cplx& z : v) z = rng.cgaussian(1.0);
    CHECK(norm_sq(v) > 0.0);
  }
}
