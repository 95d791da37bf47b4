// Symbolic coefficient modules: formal direct sums of the handful of module shapes the
// closed-form computations produce (Z, Z/n, Q, Q/Z, Q_l/Z_l, prime-to-p Q/Z), each with a
// Tate twist. Arithmetic on these is a small rewrite system; anything outside its scope
// raises UnsupportedTensor / UnsupportedModule rather than guessing.
#pragma once

#include <string>
#include <vector>

#include "logkfl/abelian.hpp"

namespace logkfl {

enum class AtomKind {
  free_z,             // Z
  finite_cyclic,      // Z/param
  rational_q,         // Q
  q_mod_z,            // Q/Z
  primary_divisible,  // Q_l/Z_l, l = param
  prime_to_p,         // prime-to-p part of Q/Z, p = param
};

struct CoeffAtom {
  AtomKind kind = AtomKind::free_z;
  Int param = 0;
  int twist = 0;

  bool operator==(const CoeffAtom& o) const {
    return kind == o.kind && param == o.param && twist == o.twist;
  }
  bool operator<(const CoeffAtom& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (param != o.param) return param < o.param;
    return twist < o.twist;
  }
};

struct SymbolicTerm {
  CoeffAtom atom;
  Int mult = 1;
  bool operator==(const SymbolicTerm& o) const { return atom == o.atom && mult == o.mult; }
};

// Zero is the empty sum. Terms are kept sorted by atom with multiplicities merged, so
// equality of values is equality of representations.
struct SymbolicModule {
  std::vector<SymbolicTerm> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const SymbolicModule& o) const { return terms == o.terms; }
  bool operator!=(const SymbolicModule& o) const { return !(*this == o); }

  std::string to_string() const;
};

SymbolicModule sym_zero();
SymbolicModule sym_atom(CoeffAtom a, const Int& mult = 1);
SymbolicModule sym_free(int rank, int twist = 0);
SymbolicModule sym_cyclic(const Int& n, int twist = 0, const Int& mult = 1);
SymbolicModule sym_rational(int dim = 1, int twist = 0);
SymbolicModule sym_qmodz(int twist = 0);
SymbolicModule sym_primary_divisible(const Int& l, int twist = 0);
SymbolicModule sym_prime_to_p(const Int& p, int twist = 0);
SymbolicModule sym_from_group(const FgAbGroup& g, int twist = 0);

SymbolicModule direct_sum_sym(const SymbolicModule& a, const SymbolicModule& b);
SymbolicModule scale_sym(const SymbolicModule& a, const Int& mult);
SymbolicModule twist_sym(const SymbolicModule& a, int w);
SymbolicModule tensor_sym(const SymbolicModule& a, const SymbolicModule& b);
SymbolicModule n_torsion_sym(const SymbolicModule& a, const Int& n);

// Torsion-part selectors. Free and rational atoms contribute nothing (they carry no
// torsion); p = 0 means the ambient characteristic is zero and nothing is removed.
SymbolicModule prime_to_p_sym(const SymbolicModule& a, const Int& p);
SymbolicModule p_primary_sym(const SymbolicModule& a, const Int& p);

bool is_finite_sym(const SymbolicModule& a);
FgAbGroup group_of_sym(const SymbolicModule& a);  // finite or free-plus-finite values only

// A finitely generated group with an endomorphism playing the Frobenius, a Tate twist,
// and the size q of the residue field it acts for.
struct ZhatModule {
  FgAbGroup group;
  IntMatrix frobenius;  // gens x gens, acting on normal-form generators
  int twist = 0;
  Int q = 0;
};

// Kernel and cokernel of q^twist * frobenius - id on a finite module. Negative twists
// need q invertible modulo the exponent (NonInvertibleTwist otherwise).
struct FrobKerCoker {
  FgAbGroup h0;
  FgAbGroup h1;
};
FrobKerCoker frobenius_kernel_cokernel(const ZhatModule& m);

}  // namespace logkfl
