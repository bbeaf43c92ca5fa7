#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "xbar/arith/rational.hpp"

namespace xbar {

using KVector = std::vector<Rational>;

/// Dense rectangular matrix over K, row-major. Matrices act on column
/// vectors: the j-th column of g is g(e_j).
class KMatrix {
 public:
  KMatrix() = default;
  KMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  KMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(Errc::DimensionMismatch, "ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static KMatrix identity(std::size_t n) {
    KMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static KMatrix diagonal(const KVector& d) {
    KMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static KMatrix from_columns(const std::vector<KVector>& cols, std::size_t rows) {
    KMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) fail(Errc::DimensionMismatch, "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static KMatrix from_rows(const std::vector<KVector>& rows, std::size_t cols) {
    KMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(Errc::DimensionMismatch, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  KVector column(std::size_t j) const {
    KVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  KVector row(std::size_t i) const {
    return KVector(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<KVector> columns() const {
    std::vector<KVector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  KMatrix transpose() const {
    KMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  friend bool operator==(const KMatrix&, const KMatrix&) = default;

  friend KMatrix operator*(const KMatrix& a, const KMatrix& b) {
    if (a.cols_ != b.rows_) fail(Errc::DimensionMismatch, "matrix product shape mismatch");
    KMatrix c(a.rows_, b.cols_);
    Rational t;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b(k, j) == 0) continue;
          t = aik * b(k, j);
          c(i, j) += t;
        }
      }
    return c;
  }

  friend KVector operator*(const KMatrix& a, const KVector& v) {
    if (a.cols_ != v.size()) fail(Errc::DimensionMismatch, "matrix-vector shape mismatch");
    KVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (a(i, j) != 0 && v[j] != 0) out[i] += a(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
  KMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

inline RowEchelon rref(KMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const KMatrix& m) { return rref(m).rank(); }

/// Rank of a family of vectors of equal length.
inline std::size_t rank_of(const std::vector<KVector>& vs) {
  if (vs.empty()) return 0;
  return rank(KMatrix::from_rows(vs, vs.front().size()));
}

inline Rational determinant(KMatrix m) {
  if (!m.is_square()) fail(Errc::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline bool is_invertible(const KMatrix& m) { return m.is_square() && determinant(m) != 0; }

inline KMatrix inverse(const KMatrix& m) {
  if (!m.is_square()) fail(Errc::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  KMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  RowEchelon e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) fail(Errc::SingularMatrix, "matrix is singular");
  KMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Solves M x = b exactly for square invertible M.
inline KVector solve_linear(const KMatrix& m, const KVector& b) {
  if (!m.is_square() || m.rows() != b.size())
    fail(Errc::DimensionMismatch, "solve_linear shape mismatch");
  const std::size_t n = m.rows();
  KMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = b[i];
  }
  RowEchelon e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) fail(Errc::SingularMatrix, "matrix is singular");
  KVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced(i, n);
  return x;
}

/// Canonical basis of span(vs): the nonzero rows of the RREF of the
/// matrix with rows vs. Two families span the same subspace iff their
/// canonical bases are equal.
inline std::vector<KVector> echelon_basis(const std::vector<KVector>& vs, std::size_t dim) {
  if (vs.empty()) return {};
  RowEchelon e = rref(KMatrix::from_rows(vs, dim));
  std::vector<KVector> out;
  out.reserve(e.rank());
  for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.reduced.row(i));
  return out;
}

/// Basis of {x : M x = 0}, returned in reduced echelon form (stacked as
/// rows the result is its own RREF).
inline std::vector<KVector> nullspace(const KMatrix& m) {
  RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<KVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    KVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return echelon_basis(basis, m.cols());
}

inline KVector unit_vector(std::size_t n, std::size_t i) {
  KVector v(n);
  v[i] = 1;
  return v;
}

inline bool is_zero(const KVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace xbar
