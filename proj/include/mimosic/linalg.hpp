// Minimal dense complex linear algebra used by the detectors: products,
// Hermitian positive-definite solves (Cholesky), norms.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mimosic {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

class CMat {
 public:
  CMat() : rows_(0), cols_(0) {}
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static CMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  CVec column(std::size_t j) const;
  // Matrix built from a subset of this matrix's columns, in the given order.
  CMat select_columns(const std::vector<int>& idx) const;

  const CVec& data() const { return a_; }

 private:
  std::size_t rows_, cols_;
  CVec a_;
};

struct LinalgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solve failure from a non-positive-definite pivot.
struct NotPositiveDefinite : LinalgError {
  explicit NotPositiveDefinite(std::size_t pivot);
  std::size_t pivot;
};

CMat matmul(const CMat& a, const CMat& b);
CVec matvec(const CMat& a, const CVec& x);
CMat conj_transpose(const CMat& a);

double norm_sq(const CVec& v);
// w^H v
cplx inner(const CVec& w, const CVec& v);

// y - A*x
CVec residual(const CVec& y, const CMat& a, const CVec& x);

// Cholesky factorization A = L L^H of a Hermitian positive-definite matrix.
// The factor is reusable across many right-hand sides.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const CMat& a);
  CVec solve(const CVec& b) const;
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  CVec l_;  // lower triangle, row-major n x n
};

// One-shot Hermitian-PD solve: x with A x = b.
CVec hermitian_solve(const CMat& a, const CVec& b);

}  // namespace mimosic
