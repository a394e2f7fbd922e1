#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rhop/precision.hpp"

namespace rhop {

/// Row-major dense matrix for scalar types Eigen does not handle well
/// (multiprecision reals, complex multiprecision, rationals).
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};


/// Cholesky factorization result for a Hermitian matrix.  `pivots` holds the
/// real diagonal entries d_i of A = L D L^H with unit lower L; the
/// determinant is their product.  `failed_at` is set to the first index with
/// d_i <= 0 (loss of positive definiteness).
template <class Real>
struct LdlResult {
  std::vector<Real> pivots;
  std::optional<std::size_t> failed_at;
};

/// LDL^H factorization of a Hermitian matrix with scalar type T and real
/// type Real (T == Real for real symmetric input).
template <class Real, class T>
LdlResult<Real> ldl_hermitian(const DenseMatrix<T>& a) {
  const std::size_t n = a.rows();
  DenseMatrix<T> l(n, n, T(0));
  LdlResult<Real> out;
  out.pivots.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    T acc = a(j, j);
    for (std::size_t k = 0; k < j; ++k) {
      acc -= l(j, k) * conjugate(l(j, k)) * T(out.pivots[k]);
    }
    Real dj = Real(real_part(acc));
    if (!(dj > 0)) {
      out.failed_at = j;
      return out;
    }
    out.pivots.push_back(dj);
    l(j, j) = T(1);
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        s -= l(i, k) * conjugate(l(j, k)) * T(out.pivots[k]);
      }
      l(i, j) = s / T(dj);
    }
  }
  return out;
}

/// Determinant by Gaussian elimination with partial pivoting.  Works for any
/// field type; for exact rationals the first nonzero pivot is taken.
template <class T>
T determinant(DenseMatrix<T> a) {
  using std::abs;
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    if constexpr (std::is_same_v<T, rational>) {
      while (p < n && a(p, c) == 0) ++p;
      if (p == n) return T(0);
    } else {
      for (std::size_t r = c + 1; r < n; ++r) {
        if (abs(a(r, c)) > abs(a(p, c))) p = r;
      }
      if (a(p, c) == T(0)) return T(0);
    }
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      T f = a(r, c) / a(c, c);
      if (f == T(0)) continue;
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
template <class T>
std::vector<T> solve(DenseMatrix<T> a, std::vector<T> b) {
  using std::abs;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (abs(a(r, c)) > abs(a(p, c))) p = r;
    }
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
      std::swap(b[p], b[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      T f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace rhop
