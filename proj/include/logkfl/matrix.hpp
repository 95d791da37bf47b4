// Dense and sparse exact integer matrices. The dense type is the public face (Smith form,
// serialization, small homological algebra); the sparse type carries the big cochain
// differentials, which are a few nonzeros per row and must never be materialized densely.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "logkfl/integers.hpp"

namespace logkfl {

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const Int& v : a_)
      if (v != 0) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix mul(const IntMatrix& b) const {
    if (cols_ != b.rows_) fail(errc::validation, "matrix product shape mismatch");
    IntMatrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& v = (*this)(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += v * b(k, j);
      }
    return c;
  }

  // Columns s..e-1 as a new matrix.
  IntMatrix col_slice(std::size_t s, std::size_t e) const {
    IntMatrix c(rows_, e - s);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = s; j < e; ++j) c(i, j - s) = (*this)(i, j);
    return c;
  }

  // Horizontal concatenation [this | b].
  IntMatrix hstack(const IntMatrix& b) const {
    if (rows_ != b.rows_ && b.rows_ != 0 && rows_ != 0)
      fail(errc::validation, "hstack row mismatch");
    std::size_t r = rows_ ? rows_ : b.rows_;
    IntMatrix c(r, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, cols_ + j) = b(i, j);
    return c;
  }

  const std::vector<Int>& data() const { return a_; }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) { return a.hstack(b); }

// Vertical concatenation; an empty operand is treated as the identity for stacking.
inline IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) fail(errc::validation, "vstack column mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

// Row-major sparse matrix with int64 entries. Cochain differentials have entries in
// [-(k+1), k+1], so a fixed-width value type is safe here; anything that eliminates goes
// through the Int-valued accumulators instead.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  // per row: sorted (col, value), value != 0
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> entries;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r) {}

  void add(std::size_t i, std::uint32_t j, std::int64_t v);  // accumulate, keep sorted
  bool operator==(const SparseIntMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }

  IntMatrix to_dense() const;
  static SparseIntMatrix from_dense(const IntMatrix& m);

  // this * b, both sparse; used by complex sanity checks.
  SparseIntMatrix mul(const SparseIntMatrix& b) const;
  bool is_zero() const;
  std::size_t nnz() const;
};

}  // namespace logkfl
