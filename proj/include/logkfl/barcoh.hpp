// Streaming machinery for the standard cochain complex of a finite abelian group with
// trivial action. The full degree-(c+1) condition set d f = z has |G|^{c+1} rows, but
// d(df - z) = 0 whenever dz = 0, and an inhomogeneous cochain F with dF = 0 vanishes
// everywhere as soon as it vanishes on tuples whose first argument is 0 or a standard
// generator (induction on the digit sum of the first argument, using the dF = 0 relation
// at (e_j, g', ...) to peel one digit off). Two consequences drive everything here:
//
//   1. a degree-c cochain constrained by the defining relations is determined by its
//      values on the (s+1)*|G|^{c-1} coordinates with short first argument, and
//   2. only the (s+1)*|G|^c condition rows with short first argument need to be
//      generated; the rest are linear consequences.
//
// Coefficients stay generic: consumers reduce mod p, mod n, or keep exact rows.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "logkfl/abelian.hpp"
#include "logkfl/matrix.hpp"

namespace logkfl {

// A finite abelian group presented as a product of cyclic factors, with elements encoded
// as mixed-radix indices (first factor fastest). Factors equal to 1 are dropped.
struct FiniteAbelianGroup {
  std::vector<std::int64_t> factors;
  std::vector<std::int64_t> strides;  // strides[j] = product of factors[0..j-1]
  std::int64_t order = 1;

  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> f);
  static FiniteAbelianGroup from_group(const FgAbGroup& g);  // finite groups only

  std::size_t dims() const { return factors.size(); }
  std::int64_t digit(std::int64_t a, std::size_t j) const {
    return (a / strides[j]) % factors[j];
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;
  std::int64_t generator(std::size_t j) const { return strides[j]; }
  int digit_sum(std::int64_t a) const;
  // (j, a - e_j) for the first index j with nonzero digit; a must be nonzero.
  std::pair<std::size_t, std::int64_t> parent(std::int64_t a) const;
  // 0 for the identity, 1+j for the j-th generator, -1 otherwise.
  int slot(std::int64_t a) const;
};

// |G|^k as int64 with an overflow/size guard (throws SizeBound past 2^31).
std::int64_t tuple_count(const FiniteAbelianGroup& g, int k);

// Rows of the degree-k differential matrix d^k: C^k -> C^{k+1}, one row per target tuple
// in G^{k+1}, entries over source coordinates in G^k. Tuple ids are big-endian (first
// argument slowest). The same face pattern is used everywhere in this module:
// t = 0 drops the first argument, 1 <= t <= k merges arguments t and t+1, t = k+1 drops
// the last; the face at position t carries sign (-1)^t.
void stream_diff_rows(
    const FiniteAbelianGroup& g, int k,
    const std::function<void(std::int64_t row_id,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>&)>& cb);

// d^k materialized; callers are responsible for size guards.
SparseIntMatrix bar_differential(const FiniteAbelianGroup& g, int k);

// Rows of d^k restricted to target tuples whose first argument is the identity or a
// generator, (s+1)*|G|^k rows in all. These span the full row lattice of d^k over Z:
// the identity d(df) = 0 expresses every other row as an integer combination of rows
// with shorter first argument, by the same induction that prunes the condition set.
void stream_diff_rows_pruned(
    const FiniteAbelianGroup& g, int k,
    const std::function<void(const std::vector<std::pair<std::int64_t, std::int64_t>>&)>& cb);

using SymbolFn = std::function<std::int64_t(const std::vector<std::int64_t>&)>;

// Parameterization of degree-c cochains (c >= 1) by their values on short-first-argument
// coordinates, plus the pruned condition stream for d f = sum_k lambda_k z_k. Symbols
// z_k are degree-(c+1) cochains evaluated only at tuples with short first argument; their
// contributions propagate into the expression tables as affine corrections.
class BarPropagation {
 public:
  BarPropagation(FiniteAbelianGroup g, int c, std::vector<SymbolFn> symbols = {},
                 std::int64_t sym_mod = 0);

  std::size_t params() const { return p_; }
  std::size_t symbol_count() const { return syms_.size(); }
  std::size_t domain_size() const { return static_cast<std::size_t>(nc_); }
  std::size_t rest_size() const { return static_cast<std::size_t>(ny_); }
  const FiniteAbelianGroup& group() const { return g_; }
  int degree() const { return c_; }

  std::uint32_t param_id(int slot, std::int64_t rest) const {
    return static_cast<std::uint32_t>(slot * ny_ + rest);
  }

  // Emits every pruned condition row except the defining ones (which are identically
  // zero by construction). Row entries are sorted by parameter id; the symbol vector has
  // one entry per z_k carrying the full affine contribution including -z_k at the row
  // tuple itself. Returns the number of rows emitted.
  std::size_t stream(
      const std::function<void(const std::vector<std::pair<std::uint32_t, std::int64_t>>&,
                               const std::vector<std::int64_t>&)>& cb) const;

  // Values on all of G^c implied by parameter values (and symbol weights), reduced mod m.
  std::vector<std::int64_t> expand(const std::vector<std::int64_t>& param_vals,
                                   const std::vector<std::int64_t>& sym_vals,
                                   std::int64_t m) const;

  // Parameter projection of the coboundary image: column w (a source coordinate in
  // G^{c-1}) lists the values of d(delta_w) at every parameter coordinate. Exact match
  // with the full coboundary image under the parameterization, since the projection is
  // injective on cocycles.
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> coboundary_columns() const;

 private:
  FiniteAbelianGroup g_;
  int c_;
  std::int64_t ny_;  // |G|^{c-1}
  std::int64_t nc_;  // |G|^c
  std::size_t p_;    // (s+1) * ny_
  std::vector<SymbolFn> syms_;
  std::int64_t sym_mod_;
  // Per coordinate of G^c: the parameter expression, sorted by id, and (when symbols are
  // present) the affine symbol corrections, stored densely coord-major.
  std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>> expr_;
  std::vector<std::int64_t> zcorr_;

  std::int64_t eval_symbol(std::size_t k, const std::vector<std::int64_t>& args) const;
};

}  // namespace logkfl
