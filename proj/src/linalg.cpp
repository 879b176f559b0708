#include "mimosic/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mimosic {

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CVec CMat::column(std::size_t j) const {
  CVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

CMat CMat::select_columns(const std::vector<int>& idx) const {
  CMat m(rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (std::size_t i = 0; i < rows_; ++i)
      m(i, j) = (*this)(i, static_cast<std::size_t>(idx[j]));
  return m;
}

NotPositiveDefinite::NotPositiveDefinite(std::size_t p)
    : LinalgError("matrix not positive definite at pivot " +
                  std::to_string(p)),
      pivot(p) {}

CMat matmul(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw LinalgError("matmul: dimension mismatch");
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVec matvec(const CMat& a, const CVec& x) {
  if (a.cols() != x.size()) throw LinalgError("matvec: dimension mismatch");
  CVec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

CMat conj_transpose(const CMat& a) {
  CMat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

double norm_sq(const CVec& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

cplx inner(const CVec& w, const CVec& v) {
  if (w.size() != v.size()) throw LinalgError("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += std::conj(w[i]) * v[i];
  return s;
}

CVec residual(const CVec& y, const CMat& a, const CVec& x) {
  CVec r = matvec(a, x);
  if (r.size() != y.size()) throw LinalgError("residual: dimension mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - r[i];
  return r;
}

CholeskyFactor::CholeskyFactor(const CMat& a) : n_(a.rows()), l_(n_ * n_) {
  if (a.rows() != a.cols()) throw LinalgError("cholesky: matrix not square");
  // Relative pivot floor: a numerically singular Gram matrix can leave a
  // pivot that is positive only through rounding noise; reject those too.
  double scale = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    scale = std::max(scale, std::abs(a(i, i).real()));
  const double floor =
      scale * static_cast<double>(n_) * std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cplx sum = a(i, j);
      for (std::size_t k = 0; k < j; ++k)
        sum -= l_[i * n_ + k] * std::conj(l_[j * n_ + k]);
      if (i == j) {
        const double d = sum.real();
        if (!(d > floor) || !std::isfinite(d)) throw NotPositiveDefinite(i);
        l_[i * n_ + i] = std::sqrt(d);
      } else {
        l_[i * n_ + j] = sum / l_[j * n_ + j];
      }
    }
  }
}

CVec CholeskyFactor::solve(const CVec& b) const {
  if (b.size() != n_) throw LinalgError("cholesky solve: dimension mismatch");
  CVec x(b);
  // forward: L z = b
  for (std::size_t i = 0; i < n_; ++i) {
    cplx sum = x[i];
    for (std::size_t k = 0; k < i; ++k) sum -= l_[i * n_ + k] * x[k];
    x[i] = sum / l_[i * n_ + i];
  }
  // backward: L^H x = z
  for (std::size_t i = n_; i-- > 0;) {
    cplx sum = x[i];
    for (std::size_t k = i + 1; k < n_; ++k)
      sum -= std::conj(l_[k * n_ + i]) * x[k];
    x[i] = sum / l_[i * n_ + i];
  }
  return x;
}

CVec hermitian_solve(const CMat& a, const CVec& b) {
  return CholeskyFactor(a).solve(b);
}

}  // namespace mimosic
