// Cochain complexes of finitely generated abelian groups with sparse differentials, and
// the dense homology extractor used at desk scale. Large complexes (bar/Cech) are built
// here but their cohomology goes through the streaming engine in groupcoh instead.
#pragma once

#include <vector>

#include "logkfl/abelian.hpp"
#include "logkfl/matrix.hpp"

namespace logkfl {

struct ChainComplex {
  std::vector<FgAbGroup> groups;       // degrees 0..N
  std::vector<SparseIntMatrix> diff;   // diff[i]: groups[i] -> groups[i+1]; size N

  std::size_t top_degree() const { return groups.empty() ? 0 : groups.size() - 1; }
};

// ker(d^i) / im(d^{i-1}) in normal form, with d^{-1} = 0 and d^N = 0. Checks d∘d = 0
// at position i (zero modulo the relations of the target group) and throws NotAComplex
// otherwise. Dense: intended for groups of at most a few thousand generators.
FgAbGroup homology_at(const ChainComplex& c, int i);

// Presentation of (span of the columns of span_gens + relation lattice) modulo
// (span of the columns of modded_out + relation lattice) inside the ambient group.
// Returns the quotient together with coordinates for mapping ambient vectors into it.
struct Subquotient {
  FgAbGroup group;
  IntMatrix span_gens;      // ambient x t, the chosen generating vectors
  PresentedQuotient pres;   // over the t generators
};
Subquotient subquotient(const IntMatrix& span_gens, const IntMatrix& modded_out,
                        const FgAbGroup& ambient);

// Class of an ambient vector in a subquotient (the vector must lie in the span).
// Returns coordinates over the normal-form generators of sq.group.
std::vector<Int> subquotient_class(const Subquotient& sq, const IntMatrix& modded_out,
                                   const FgAbGroup& ambient, const std::vector<Int>& v);

// Generators of { x : A x lies in the relation lattice of tgt }, as columns.
IntMatrix lattice_preimage(const IntMatrix& a, const FgAbGroup& tgt);

}  // namespace logkfl
