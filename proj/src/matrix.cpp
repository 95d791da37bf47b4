#include "logkfl/matrix.hpp"

#include <algorithm>
#include <cstdint>

namespace logkfl {

void SparseIntMatrix::add(std::size_t i, std::uint32_t j, std::int64_t v) {
  if (v == 0) return;
  auto& row = entries[i];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  if (it != row.end() && it->first == j) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {j, v});
  }
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& [j, v] : entries[i]) m(i, j) = v;
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& m) {
  SparseIntMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) {
        // dense sources are small; entries fit in int64 by construction of callers
        s.entries[i].push_back({static_cast<std::uint32_t>(j),
                                static_cast<std::int64_t>(m(i, j))});
      }
  return s;
}

SparseIntMatrix SparseIntMatrix::mul(const SparseIntMatrix& b) const {
  if (cols != b.rows) fail(errc::validation, "sparse product shape mismatch");
  SparseIntMatrix c(rows, b.cols);
  std::vector<std::int64_t> acc;
  std::vector<std::uint32_t> touched;
  acc.assign(b.cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    touched.clear();
    for (const auto& [k, v] : entries[i]) {
      for (const auto& [j, w] : b.entries[k]) {
        if (acc[j] == 0) touched.push_back(j);
        acc[j] += v * w;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t j : touched) {
      if (acc[j] != 0) c.entries[i].push_back({j, acc[j]});
      acc[j] = 0;
    }
  }
  return c;
}

bool SparseIntMatrix::is_zero() const {
  for (const auto& row : entries)
    if (!row.empty()) return false;
  return true;
}

std::size_t SparseIntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& row : entries) n += row.size();
  return n;
}

}  // namespace logkfl
