#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpg/exact/gaussian.hpp"

namespace lpg::exact {

// Dense row-major matrix over an exact field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix unit(std::size_t n, std::size_t r, std::size_t c) {
    Matrix m(n, n);
    m(r, c) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  bool is_zero() const {
    for (const auto& v : data_) {
      if (!exact::is_zero(v)) return false;
    }
    return true;
  }
  bool is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (r != c && !exact::is_zero((*this)(r, c))) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (exact::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (!exact::is_zero(bkj)) out(i, j) += aik * bkj;
        }
      }
    }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<GaussRational>;

CMatrix adjoint(const CMatrix& m);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix block_diagonal(const std::vector<CMatrix>& blocks);
std::string to_string(const CMatrix& m);

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!is_zero(m(row, c))) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols());
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incrementally maintained fully reduced echelon basis of a subspace of T^dim.
// Rows are sparse; each row remembers its expression in the inserted vectors
// so coordinates relative to the original generators can be recovered.
template <class T>
class SpanSolver {
 public:
  explicit SpanSolver(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

  // Returns false (and records nothing) when v is already in the span.
  bool insert(const std::vector<T>& v) {
    check(v);
    std::vector<T> comb(inserted_ + 1);
    comb[inserted_] = T(1);
    std::vector<T> res = v;
    for (const auto& row : rows_) {
      T f = res[row.pivot];
      if (is_zero(f)) continue;
      for (const auto& [c, val] : row.entries) res[c] -= f * val;
      for (std::size_t k = 0; k < row.comb.size(); ++k)
        if (!is_zero(row.comb[k])) comb[k] -= f * row.comb[k];
    }
    std::size_t pivot = dim_;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (!is_zero(res[c])) {
        pivot = c;
        break;
      }
    }
    ++inserted_;
    for (auto& row : rows_) row.comb.resize(inserted_);
    if (pivot == dim_) {
      dependent_.push_back(inserted_ - 1);
      return false;
    }
    T inv = T(1) / res[pivot];
    Row fresh;
    fresh.pivot = pivot;
    for (std::size_t c = 0; c < dim_; ++c)
      if (!is_zero(res[c])) fresh.entries.emplace_back(c, res[c] * inv);
    fresh.comb = std::move(comb);
    for (auto& x : fresh.comb) x *= inv;
    for (auto& row : rows_) eliminate(row, fresh);
    rows_.push_back(std::move(fresh));
    return true;
  }

  bool contains(const std::vector<T>& v) const { return coordinates(v).has_value(); }

  // Coefficients c with v = sum_k c_k * (k-th inserted vector), using only
  // independent inserted vectors (dependent ones get coefficient 0).
  std::optional<std::vector<T>> coordinates(const std::vector<T>& v) const {
    check(v);
    std::vector<T> res = v;
    std::vector<T> coords(inserted_);
    for (const auto& row : rows_) {
      T f = res[row.pivot];
      if (is_zero(f)) continue;
      for (const auto& [c, val] : row.entries) res[c] -= f * val;
      for (std::size_t k = 0; k < row.comb.size(); ++k)
        if (!is_zero(row.comb[k])) coords[k] += f * row.comb[k];
    }
    for (const auto& x : res)
      if (!is_zero(x)) return std::nullopt;
    return coords;
  }

  const std::vector<std::size_t>& dependent_indices() const { return dependent_; }

 private:
  struct Row {
    std::size_t pivot = 0;
    std::vector<std::pair<std::size_t, T>> entries;
    std::vector<T> comb;
  };

  static void eliminate(Row& row, const Row& fresh) {
    T f{};
    for (const auto& [c, val] : row.entries) {
      if (c == fresh.pivot) {
        f = val;
        break;
      }
    }
    if (is_zero(f)) return;
    std::vector<std::pair<std::size_t, T>> merged;
    merged.reserve(row.entries.size() + fresh.entries.size());
    std::size_t i = 0, j = 0;
    while (i < row.entries.size() || j < fresh.entries.size()) {
      if (j == fresh.entries.size() || (i < row.entries.size() && row.entries[i].first < fresh.entries[j].first)) {
        merged.push_back(row.entries[i++]);
      } else if (i == row.entries.size() || fresh.entries[j].first < row.entries[i].first) {
        merged.emplace_back(fresh.entries[j].first, -(f * fresh.entries[j].second));
        ++j;
      } else {
        T v = row.entries[i].second - f * fresh.entries[j].second;
        if (!is_zero(v)) merged.emplace_back(row.entries[i].first, v);
        ++i;
        ++j;
      }
    }
    row.entries = std::move(merged);
    for (std::size_t k = 0; k < fresh.comb.size(); ++k)
      if (!is_zero(fresh.comb[k])) row.comb[k] -= f * fresh.comb[k];
  }

  void check(const std::vector<T>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector length does not match subspace ambient dimension");
  }

  std::size_t dim_ = 0;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
  std::vector<std::size_t> dependent_;
};

// Rank of a list of vectors over the field T.
template <class T>
std::size_t rank_of(const std::vector<std::vector<T>>& vectors, std::size_t dim) {
  SpanSolver<T> s(dim);
  for (const auto& v : vectors) s.insert(v);
  return s.rank();
}

}  // namespace lpg::exact
