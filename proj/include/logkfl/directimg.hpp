// Symbolic higher direct images from the Kummer-log-flat site down to the classical
// flat site, over desk-scale base descriptions: a log trait (one marked closed point)
// or a Dedekind base with a finite marked locus. Images are formal sums of skyscrapers
// at marked points; the three supported sheaf classes each have a closed-form answer
// per point, driven by the log rank there:
//
//   rational vector spaces      R^i = 0 for i >= 1
//   finite l-groups M           R^i = sum over points of residue char != l of
//                                     i_x*( M(-i)^binomial(rank_x, i) )
//   lattices Z^r                R^1 = 0, and for i >= 2
//                                     R^i = sum over points of
//                                     i_x*( ((Q/Z) prime to p_x)^{r*binomial(rank_x, i-1)}
//                                           twisted by -(i-1) )
//
// The sum over primes l in the lattice case is kept in closed form through the
// prime-to-p divisible atom; it is never truncated to finitely many primes.
#pragma once

#include <string>
#include <vector>

#include "logkfl/abelian.hpp"
#include "logkfl/coefficients.hpp"
#include "logkfl/config.hpp"

namespace logkfl {

struct BasePoint {
  std::string label;
  Int residue_char = 0;       // 0 or a prime
  Int residue_field_size = 0; // 0 = unspecified; otherwise a power of residue_char
  int log_rank = 0;           // rank of the log structure's stalk at the point

  bool operator==(const BasePoint& o) const = default;
};

enum class BaseKind { log_trait, dedekind_with_s };

struct BaseDescription {
  BaseKind kind = BaseKind::log_trait;
  std::vector<BasePoint> points;  // marked (log-nontrivial) closed points
  Int generic_char = 0;           // 0 or a prime

  bool operator==(const BaseDescription& o) const = default;
};

// Structural validation: point invariants, distinct labels, one marked point on a
// trait. Log ranks above one are allowed here (the wedge-power binomials handle them);
// the long-exact-sequence calculators impose the rank-one bound separately.
void validate_base(const BaseDescription& base);

enum class SheafClass { finite_l_group, lattice, rational_space };

struct SheafSpec {
  SheafClass kind = SheafClass::lattice;
  Int l = 0;           // finite_l_group: the prime
  FgAbGroup group;     // finite_l_group: a finite l-primary group
  int rank = 0;        // lattice rank, or rational dimension
  IntMatrix frobenius; // finite_l_group only; empty means trivial action

  static SheafSpec finite_l(const Int& l, FgAbGroup m);
  static SheafSpec finite_l_with_frobenius(const Int& l, FgAbGroup m, IntMatrix frob);
  static SheafSpec lattice(int rank);
  static SheafSpec rational(int dim);

  bool has_frobenius() const { return frobenius.rows() != 0; }
};

void validate_sheaf(const SheafSpec& f);

// Formal sum of skyscrapers i_x*(module) over marked points; at most one term per
// point, zero modules dropped, terms in base point order.
struct SkyscraperTerm {
  std::string point;
  SymbolicModule module;

  bool operator==(const SkyscraperTerm& o) const = default;
};

struct DirectImageExpr {
  std::vector<SkyscraperTerm> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const DirectImageExpr& o) const = default;
};

// R^i of the comparison map for i >= 1, as a skyscraper expression over the base.
DirectImageExpr higher_direct_image(const BaseDescription& base, const SheafSpec& f, int i);

// The module sitting at x (matched by label); zero when x carries no term.
SymbolicModule stalk_on_strict_site(const DirectImageExpr& expr, const BasePoint& x);

// Smallest degree beyond which every higher direct image of f vanishes on the strict
// site over this base: with rho the largest marked log rank, rational spaces die in
// degree 1, finite l-groups from degree rho + 1, lattices from degree rho + 2.
int vanishing_degree(const BaseDescription& base, const SheafSpec& f);

}  // namespace logkfl
