// Smith normal form over Z with transforms, plus the two row-space accumulators used for
// large inputs: an exact integer echelon (rank / lattice compression) and a Howell-form
// accumulator over Z/n (canonical row spans, membership, kernels). Pivoting in the dense
// Smith form picks the smallest nonzero absolute value and fully gcd-reduces its row and
// column before clearing, which keeps intermediate entries tame.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "logkfl/matrix.hpp"

namespace logkfl {

struct SmithResult {
  IntMatrix U;     // rows(A) x rows(A), unimodular
  IntMatrix Uinv;  // inverse of U, tracked alongside
  IntMatrix D;     // same shape as A, diagonal with divisibility chain
  IntMatrix V;     // cols(A) x cols(A), unimodular
  std::vector<Int> diag;  // nonnegative, d1 | d2 | ..., zeros trail
  std::size_t rank = 0;   // number of nonzero diagonal entries
};

// U * A * V = D. with_transforms=false skips U/V bookkeeping when only diag is needed.
SmithResult smith_normal_form(const IntMatrix& a, bool with_transforms = true);

// Columns form a basis of { x : A x = 0 } as a lattice in Z^cols(A).
IntMatrix kernel_basis(const IntMatrix& a);

// A particular integer solution of A x = b, if one exists.
std::optional<std::vector<Int>> solve_linear(const IntMatrix& a, const std::vector<Int>& b);

// Streaming echelon over Z. Insert rows one at a time; the stored rows span the same
// lattice as everything inserted. Width is fixed; rows are dense.
class ZEchelon {
 public:
  explicit ZEchelon(std::size_t width);

  void insert(std::vector<Int> row);
  void insert_sparse(const std::vector<std::pair<std::uint32_t, std::int64_t>>& row);

  std::size_t rank() const { return pivot_rows_.size(); }
  std::size_t width() const { return width_; }

  // Stored rows packed into a dense matrix (rank x width), echelon order.
  IntMatrix to_matrix() const;

 private:
  std::size_t width_;
  std::vector<std::vector<Int>> pivot_rows_;   // indexed by slot
  std::vector<long> pivot_of_col_;             // col -> slot or -1
  std::vector<std::size_t> lead_of_slot_;
};

// Streaming Howell-form accumulator over Z/n (n >= 2, n < 2^31). The stored rows are a
// Howell basis of the span of all inserted rows: unique leading columns, leading entries
// dividing n, and the span closed under leading-zero truncation. That last property is
// what makes membership and kernel extraction complete over a non-field.
class ModHowell {
 public:
  ModHowell(std::size_t width, std::int64_t modulus);

  void insert(std::vector<std::int32_t> row);
  void insert_sparse(const std::vector<std::pair<std::uint32_t, std::int64_t>>& row);

  std::size_t rank() const { return order_.size(); }
  std::size_t width() const { return width_; }
  std::int64_t modulus() const { return n_; }

  // Reduce v against the stored rows; returns the residue (zero iff v is in the span).
  std::vector<std::int32_t> reduce(std::vector<std::int32_t> v) const;
  bool contains(const std::vector<std::int32_t>& v) const;

  // Canonicalized rows, ordered by leading column. Entries above each pivot are reduced
  // modulo the pivot, so equal spans give byte-equal results.
  std::vector<std::vector<std::int32_t>> rows() const;

 private:
  void insert_worker(std::vector<std::int32_t> row);

  std::size_t width_;
  std::int64_t n_;
  std::vector<std::vector<std::int32_t>> rows_;  // slot -> row
  std::vector<long> pivot_of_col_;
  std::vector<std::size_t> order_;  // slots sorted by leading column
};

// Generators of the solution module { x in (Z/n)^w : R x = 0 } where the rows of R were
// inserted into `rows`. Returned as a list of vectors.
std::vector<std::vector<std::int32_t>> kernel_mod(const ModHowell& rows);

// Invariant factors (each > 1) of the finite module (Z/n)^w / rowspan, given the Howell
// accumulator of the subgroup rows. Appended zeros never occur (the module is finite).
std::vector<Int> quotient_invariants_mod(const ModHowell& sub, std::size_t width,
                                         std::int64_t n);

}  // namespace logkfl
