#include "logkfl/chain.hpp"

#include "logkfl/errors.hpp"

namespace logkfl {

namespace {

// Dense SNF-based extraction is quadratic-ish in the generator count; past this it is
// never the right tool and the streaming engine should be used instead.
constexpr std::size_t kDenseGenCap = 4096;

IntMatrix first_rows(const IntMatrix& m, std::size_t t) {
  IntMatrix out(t, m.cols());
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

IntMatrix lattice_preimage(const IntMatrix& a, const FgAbGroup& tgt) {
  if (a.rows() != tgt.gens()) fail(errc::validation, "lattice_preimage: shape mismatch");
  IntMatrix stacked = hstack(a, relation_rows(tgt).transpose());
  IntMatrix k = kernel_basis(stacked);
  return first_rows(k, a.cols());
}

Subquotient subquotient(const IntMatrix& span_gens, const IntMatrix& modded_out,
                        const FgAbGroup& ambient) {
  if (span_gens.rows() != ambient.gens() ||
      (modded_out.cols() > 0 && modded_out.rows() != ambient.gens()))
    fail(errc::validation, "subquotient: shape mismatch");
  IntMatrix stacked = hstack(span_gens, hstack(modded_out, relation_rows(ambient).transpose()));
  IntMatrix k = kernel_basis(stacked);
  std::size_t t = span_gens.cols();
  IntMatrix rel(k.cols(), t);
  for (std::size_t r = 0; r < k.cols(); ++r)
    for (std::size_t j = 0; j < t; ++j) rel(r, j) = k(j, r);
  Subquotient sq;
  sq.span_gens = span_gens;
  sq.pres = presented_quotient(rel, t);
  sq.group = sq.pres.group;
  return sq;
}

std::vector<Int> subquotient_class(const Subquotient& sq, const IntMatrix& modded_out,
                                   const FgAbGroup& ambient, const std::vector<Int>& v) {
  IntMatrix stacked =
      hstack(sq.span_gens, hstack(modded_out, relation_rows(ambient).transpose()));
  auto sol = solve_linear(stacked, v);
  if (!sol) fail(errc::validation, "subquotient_class: vector outside the span");
  std::size_t t = sq.span_gens.cols();
  std::vector<Int> alpha(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(t));
  const FgAbGroup& g = sq.group;
  std::vector<Int> out(g.gens(), Int(0));
  for (std::size_t i = 0; i < g.gens(); ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < t; ++j) acc += sq.pres.class_coords(i, j) * alpha[j];
    if (i >= static_cast<std::size_t>(g.rank))
      acc = mod_pos(acc, g.torsion[i - static_cast<std::size_t>(g.rank)]);
    out[i] = acc;
  }
  return out;
}

FgAbGroup homology_at(const ChainComplex& c, int i) {
  int top = static_cast<int>(c.groups.size()) - 1;
  if (c.groups.empty() || i < 0 || i > top) fail(errc::validation, "homology_at: degree out of range");
  if (c.diff.size() + 1 != c.groups.size())
    fail(errc::validation, "homology_at: differential count mismatch");
  std::size_t gi = c.groups[static_cast<std::size_t>(i)].gens();
  std::size_t gprev = i > 0 ? c.groups[static_cast<std::size_t>(i - 1)].gens() : 0;
  std::size_t gnext = i < top ? c.groups[static_cast<std::size_t>(i + 1)].gens() : 0;
  if (gi > kDenseGenCap || gprev > kDenseGenCap || gnext > kDenseGenCap)
    fail(errc::size_bound, "homology_at: dense extraction past the generator cap");

  // d o d = 0 modulo the relations of the target, checked where both maps exist.
  if (i > 0 && i < top) {
    SparseIntMatrix dd = c.diff[static_cast<std::size_t>(i)].mul(c.diff[static_cast<std::size_t>(i - 1)]);
    const FgAbGroup& tgt = c.groups[static_cast<std::size_t>(i + 1)];
    for (std::size_t r = 0; r < dd.rows; ++r) {
      bool free_row = r < static_cast<std::size_t>(tgt.rank);
      const Int d = free_row ? Int(0) : tgt.torsion[r - static_cast<std::size_t>(tgt.rank)];
      for (const auto& [col, val] : dd.entries[r]) {
        (void)col;
        if (free_row ? (val != 0) : (val % static_cast<std::int64_t>(d) != 0))
          fail(errc::not_a_complex, "homology_at: d o d is nonzero");
      }
    }
  }

  IntMatrix zgens;
  if (i < top) {
    IntMatrix b = c.diff[static_cast<std::size_t>(i)].to_dense();
    zgens = lattice_preimage(b, c.groups[static_cast<std::size_t>(i + 1)]);
  } else {
    zgens = IntMatrix::identity(gi);
  }
  IntMatrix bd(gi, gprev);
  if (i > 0) bd = c.diff[static_cast<std::size_t>(i - 1)].to_dense();
  return subquotient(zgens, bd, c.groups[static_cast<std::size_t>(i)]).group;
}

}  // namespace logkfl
