// Finitely generated abelian groups in invariant-factor normal form, the structure
// calculus on them (sums, tensor, hom, exterior powers, torsion selectors), and
// homomorphisms between presented groups. Generator convention throughout: the free
// generators come first, then one generator per invariant factor in chain order.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logkfl/matrix.hpp"
#include "logkfl/snf.hpp"

namespace logkfl {

struct FgAbGroup {
  int rank = 0;
  std::vector<Int> torsion;  // d1 | d2 | ... , every entry >= 2

  FgAbGroup() = default;
  FgAbGroup(int r, std::vector<Int> t) : rank(r), torsion(std::move(t)) {}

  static FgAbGroup zero() { return FgAbGroup(); }
  static FgAbGroup free_group(int r) { return FgAbGroup(r, {}); }
  static FgAbGroup cyclic(const Int& n);  // Z/n (n >= 1; n = 1 gives the zero group)

  bool operator==(const FgAbGroup& o) const { return rank == o.rank && torsion == o.torsion; }
  bool operator!=(const FgAbGroup& o) const { return !(*this == o); }

  bool is_zero() const { return rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  bool is_finite() const { return rank == 0; }
  std::size_t gens() const { return static_cast<std::size_t>(rank) + torsion.size(); }

  Int order() const;     // fails on infinite groups
  Int exponent() const;  // exponent of the torsion part (1 if none)

  std::string to_string() const;  // "0", "Z^2 x Z/2 x Z/6", ...
};

// Normal form of Z^rank + sum of Z/moduli (moduli arbitrary, 0 treated as a Z factor).
FgAbGroup canonical_group(int rank, const std::vector<Int>& moduli);

// Cokernel of the relation rows acting on Z^generators.
FgAbGroup group_from_presentation(const IntMatrix& relations, std::size_t generators);

// Quotient Z^g / rowspan(relations) together with the change of coordinates:
// gen_vectors columns express each normal-form generator in the ambient Z^g, and
// class_coords rows express the class of each ambient basis vector over the normal-form
// generators (entries reduced mod the invariant factor for torsion generators).
struct PresentedQuotient {
  FgAbGroup group;
  IntMatrix gen_vectors;   // g x gens(group)
  IntMatrix class_coords;  // gens(group) x g
};
PresentedQuotient presented_quotient(const IntMatrix& relations, std::size_t generators);

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup tensor_ab(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup hom_ab(const FgAbGroup& a, const FgAbGroup& b);
FgAbGroup exterior_power(const FgAbGroup& g, int i);  // free groups only
FgAbGroup n_torsion(const FgAbGroup& g, const Int& n);
FgAbGroup quotient_by_n(const FgAbGroup& g, const Int& n);  // G / nG

// p-primary part and prime-to-p part of the torsion subgroup.
FgAbGroup primary_component(const FgAbGroup& g, const Int& p);
FgAbGroup prime_to_p_component(const FgAbGroup& g, const Int& p);

struct TorsionDecomposition {
  int rank = 0;
  std::map<Int, std::vector<Int>> primary;  // prime -> ascending prime powers
};
TorsionDecomposition torsion_decompose(const FgAbGroup& g);
FgAbGroup recompose(const TorsionDecomposition& d);

// Relation rows of the standard presentation (one row d_i * e_{rank+i} per factor).
IntMatrix relation_rows(const FgAbGroup& g);

struct Homomorphism {
  FgAbGroup source;
  FgAbGroup target;
  IntMatrix matrix;  // gens(target) x gens(source), columns are generator images

  bool well_defined() const;
  FgAbGroup kernel() const;
  FgAbGroup image() const;
  FgAbGroup cokernel() const;
  bool is_zero_map() const;
  bool is_injective() const { return kernel().is_zero(); }
  bool is_surjective() const { return cokernel().is_zero(); }
};

Homomorphism identity_hom(const FgAbGroup& g);

}  // namespace logkfl
