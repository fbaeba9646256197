#pragma once

// Dense exact linear algebra over any field type T that provides
// is_zero, inv, zero_like and one_like through ADL.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wslice/rational.hpp"

namespace wslice {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill) : rows_(r), cols_(c), a_(r * c, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }
  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t nrows, const T& zero) {
    Matrix m(nrows, cols.size(), zero);
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t ncols, const T& zero) {
    Matrix m(rows.size(), ncols, zero);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < ncols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    if (a_.empty()) return Matrix();
    Matrix t(cols_, rows_, a_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<T> out(rows_, v.empty() ? T() : zero_like(v[0]));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j))) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product size mismatch");
    Matrix out(x.rows_, y.cols_, x.a_.empty() ? T() : zero_like(x.a_[0]));
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (is_zero(xik)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Matrix operator*(const T& c, Matrix x) {
    for (auto& e : x.a_) e = c * e;
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (std::size_t i = 0; i < x.a_.size(); ++i)
      if (!is_zero(x.a_[i] - y.a_[i])) return false;
    return true;
  }

  bool is_zero_matrix() const {
    for (const auto& e : a_)
      if (!is_zero(e)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using QMat = Matrix<Q>;

inline QMat qidentity(std::size_t n) { return QMat::identity(n, Q(0), Q(1)); }

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T piv = inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * piv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Basis of {x : m x = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  std::vector<std::vector<T>> basis;
  if (m.cols() == 0) return basis;
  auto piv = rref(m);
  T zero = zero_like(m(0, 0));
  T one = one_like(m(0, 0));
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<T> v(m.cols(), zero);
    v[f] = one;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = zero - m(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, if one exists.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve size mismatch");
  if (a.rows() == 0) return std::vector<T>(a.cols(), T());
  T zero = zero_like(b.empty() ? a(0, 0) : b[0]);
  Matrix<T> aug(a.rows(), a.cols() + 1, zero);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<T> x(a.cols(), zero);
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug(k, a.cols());
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  if (n == 0) return a;
  T zero = zero_like(a(0, 0)), one = one_like(a(0, 0));
  Matrix<T> aug(n, 2 * n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = one;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix<T> out(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

/// Whether v lies in the span of the given vectors.
template <class T>
bool in_span(const std::vector<std::vector<T>>& vecs, const std::vector<T>& v) {
  if (vecs.empty()) {
    for (const auto& x : v)
      if (!is_zero(x)) return false;
    return true;
  }
  auto a = Matrix<T>::from_columns(vecs, v.size(), zero_like(v.at(0)));
  return solve(a, v).has_value();
}

template <class T>
std::size_t span_dim(const std::vector<std::vector<T>>& vecs, std::size_t n) {
  if (vecs.empty()) return 0;
  return rank(Matrix<T>::from_columns(vecs, n, zero_like(vecs[0][0])));
}

template <class T>
bool is_zero_vec(const std::vector<T>& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <class T>
std::vector<T> axpy(const T& a, const std::vector<T>& x, std::vector<T> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

/// Bilinear form x^T g y.
template <class T, class U>
T bilinear(const std::vector<T>& x, const Matrix<U>& g, const std::vector<T>& y) {
  T acc = zero_like(x.at(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!is_zero(g(i, j))) acc += x[i] * (T(g(i, j)) * y[j]);
  }
  return acc;
}

inline QVec qmat_apply(const QMat& m, const QVec& v) { return m.apply(v); }

}  // namespace wslice
