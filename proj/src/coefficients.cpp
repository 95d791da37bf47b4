#include "logkfl/coefficients.hpp"

#include <algorithm>

namespace logkfl {

namespace {

bool is_divisible_kind(AtomKind k) {
  return k == AtomKind::rational_q || k == AtomKind::q_mod_z ||
         k == AtomKind::primary_divisible || k == AtomKind::prime_to_p;
}

SymbolicModule normalized(std::vector<SymbolicTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const SymbolicTerm& a, const SymbolicTerm& b) { return a.atom < b.atom; });
  SymbolicModule out;
  for (SymbolicTerm& t : terms) {
    if (t.mult == 0) continue;
    if (t.mult < 0) fail(errc::validation, "negative multiplicity");
    if (!out.terms.empty() && out.terms.back().atom == t.atom)
      out.terms.back().mult += t.mult;
    else
      out.terms.push_back(std::move(t));
  }
  return out;
}

std::string atom_str(const CoeffAtom& a) {
  std::string s;
  switch (a.kind) {
    case AtomKind::free_z: s = "Z"; break;
    case AtomKind::finite_cyclic: s = "Z/" + a.param.str(); break;
    case AtomKind::rational_q: s = "Q"; break;
    case AtomKind::q_mod_z: s = "Q/Z"; break;
    case AtomKind::primary_divisible: s = "Q_" + a.param.str() + "/Z_" + a.param.str(); break;
    case AtomKind::prime_to_p: s = "(Q/Z)'_" + a.param.str(); break;
  }
  if (a.twist != 0) s += "(" + std::to_string(a.twist) + ")";
  return s;
}

}  // namespace

std::string SymbolicModule::to_string() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const SymbolicTerm& t : terms) {
    if (!s.empty()) s += " + ";
    s += atom_str(t.atom);
    if (t.mult != 1) s += "^" + t.mult.str();
  }
  return s;
}

SymbolicModule sym_zero() { return {}; }

SymbolicModule sym_atom(CoeffAtom a, const Int& mult) {
  if (mult == 0) return {};
  return normalized({SymbolicTerm{a, mult}});
}

SymbolicModule sym_free(int rank, int twist) {
  if (rank < 0) fail(errc::validation, "negative rank");
  return sym_atom(CoeffAtom{AtomKind::free_z, 0, twist}, rank);
}

SymbolicModule sym_cyclic(const Int& n, int twist, const Int& mult) {
  if (n < 1) fail(errc::validation, "cyclic coefficient needs n >= 1");
  if (n == 1) return {};
  return sym_atom(CoeffAtom{AtomKind::finite_cyclic, n, twist}, mult);
}

SymbolicModule sym_rational(int dim, int twist) {
  if (dim < 0) fail(errc::validation, "negative dimension");
  return sym_atom(CoeffAtom{AtomKind::rational_q, 0, twist}, dim);
}

SymbolicModule sym_qmodz(int twist) { return sym_atom(CoeffAtom{AtomKind::q_mod_z, 0, twist}); }

SymbolicModule sym_primary_divisible(const Int& l, int twist) {
  if (l < 2 || !is_prime_int(l)) fail(errc::validation, "primary divisible needs a prime");
  return sym_atom(CoeffAtom{AtomKind::primary_divisible, l, twist});
}

SymbolicModule sym_prime_to_p(const Int& p, int twist) {
  if (p < 2 || !is_prime_int(p)) fail(errc::validation, "prime-to-p needs a prime");
  return sym_atom(CoeffAtom{AtomKind::prime_to_p, p, twist});
}

SymbolicModule sym_from_group(const FgAbGroup& g, int twist) {
  SymbolicModule out = sym_free(g.rank, twist);
  for (const Int& d : g.torsion) out = direct_sum_sym(out, sym_cyclic(d, twist));
  return out;
}

SymbolicModule direct_sum_sym(const SymbolicModule& a, const SymbolicModule& b) {
  std::vector<SymbolicTerm> t = a.terms;
  t.insert(t.end(), b.terms.begin(), b.terms.end());
  return normalized(std::move(t));
}

SymbolicModule scale_sym(const SymbolicModule& a, const Int& mult) {
  if (mult == 0) return {};
  std::vector<SymbolicTerm> t = a.terms;
  for (SymbolicTerm& s : t) s.mult *= mult;
  return normalized(std::move(t));
}

SymbolicModule twist_sym(const SymbolicModule& a, int w) {
  std::vector<SymbolicTerm> t = a.terms;
  for (SymbolicTerm& s : t) s.atom.twist += w;
  return normalized(std::move(t));
}

namespace {

// Tensor of two atoms; twists add. Divisible-by-divisible products are outside the
// rewrite system on purpose.
SymbolicModule atom_tensor(const CoeffAtom& x, const CoeffAtom& y) {
  if (is_divisible_kind(x.kind) && is_divisible_kind(y.kind))
    fail(errc::unsupported_tensor,
         "tensor of two divisible modules: " + atom_str(x) + " (x) " + atom_str(y));
  // order so that x is the "plainer" side: Z first, then Z/n, then the divisibles
  const CoeffAtom& a = is_divisible_kind(x.kind) ? y : x;
  const CoeffAtom& b = is_divisible_kind(x.kind) ? x : y;
  const int w = x.twist + y.twist;
  if (a.kind == AtomKind::free_z) {
    CoeffAtom r = b;
    r.twist = w;
    return sym_atom(r);
  }
  // now a is finite cyclic (free handled above; rationals are divisible)
  const Int& n = a.param;
  switch (b.kind) {
    case AtomKind::free_z:
    case AtomKind::finite_cyclic:
      return sym_cyclic(b.kind == AtomKind::free_z ? n : gcd_int(n, b.param), w);
    case AtomKind::rational_q:
      return sym_zero();
    case AtomKind::q_mod_z:
      return sym_cyclic(n, w);
    case AtomKind::primary_divisible:
      return sym_cyclic(p_primary_part(n, b.param), w);
    case AtomKind::prime_to_p:
      return sym_cyclic(prime_to_p_part(n, b.param), w);
  }
  fail(errc::validation, "unreachable");
}

}  // namespace

SymbolicModule tensor_sym(const SymbolicModule& a, const SymbolicModule& b) {
  SymbolicModule out;
  for (const SymbolicTerm& s : a.terms)
    for (const SymbolicTerm& t : b.terms)
      out = direct_sum_sym(out, scale_sym(atom_tensor(s.atom, t.atom), s.mult * t.mult));
  return out;
}

SymbolicModule n_torsion_sym(const SymbolicModule& a, const Int& n) {
  if (n < 1) fail(errc::validation, "n-torsion needs n >= 1");
  SymbolicModule out;
  for (const SymbolicTerm& t : a.terms) {
    Int d;
    switch (t.atom.kind) {
      case AtomKind::free_z:
      case AtomKind::rational_q: continue;
      case AtomKind::finite_cyclic: d = gcd_int(t.atom.param, n); break;
      case AtomKind::q_mod_z: d = n; break;
      case AtomKind::primary_divisible: d = p_primary_part(n, t.atom.param); break;
      case AtomKind::prime_to_p: d = prime_to_p_part(n, t.atom.param); break;
    }
    out = direct_sum_sym(out, sym_cyclic(d, t.atom.twist, t.mult));
  }
  return out;
}

SymbolicModule prime_to_p_sym(const SymbolicModule& a, const Int& p) {
  if (p != 0 && (p < 2 || !is_prime_int(p))) fail(errc::validation, "p must be 0 or prime");
  SymbolicModule out;
  for (const SymbolicTerm& t : a.terms) {
    CoeffAtom r = t.atom;
    switch (t.atom.kind) {
      case AtomKind::free_z:
      case AtomKind::rational_q:
        continue;  // no torsion to keep
      case AtomKind::finite_cyclic:
        r.param = prime_to_p_part(t.atom.param, p);
        if (r.param == 1) continue;
        break;
      case AtomKind::q_mod_z:
        if (p != 0) r.kind = AtomKind::prime_to_p, r.param = p;
        break;
      case AtomKind::primary_divisible:
        if (t.atom.param == p) continue;
        break;
      case AtomKind::prime_to_p:
        if (p != 0 && t.atom.param != p)
          fail(errc::unsupported_module, "prime-to-p part of " + atom_str(t.atom) +
                                             " away from " + p.str());
        break;
    }
    out = direct_sum_sym(out, sym_atom(r, t.mult));
  }
  return out;
}

SymbolicModule p_primary_sym(const SymbolicModule& a, const Int& p) {
  if (p < 2 || !is_prime_int(p)) fail(errc::validation, "p-primary part needs a prime");
  SymbolicModule out;
  for (const SymbolicTerm& t : a.terms) {
    CoeffAtom r = t.atom;
    switch (t.atom.kind) {
      case AtomKind::free_z:
      case AtomKind::rational_q:
        continue;
      case AtomKind::finite_cyclic:
        r.param = p_primary_part(t.atom.param, p);
        if (r.param == 1) continue;
        break;
      case AtomKind::q_mod_z:
        r.kind = AtomKind::primary_divisible;
        r.param = p;
        break;
      case AtomKind::primary_divisible:
        if (t.atom.param != p) continue;
        break;
      case AtomKind::prime_to_p:
        if (t.atom.param == p) continue;
        r.kind = AtomKind::primary_divisible;
        r.param = p;
        break;
    }
    out = direct_sum_sym(out, sym_atom(r, t.mult));
  }
  return out;
}

bool is_finite_sym(const SymbolicModule& a) {
  for (const SymbolicTerm& t : a.terms)
    if (t.atom.kind != AtomKind::finite_cyclic) return false;
  return true;
}

FgAbGroup group_of_sym(const SymbolicModule& a) {
  int rank = 0;
  std::vector<Int> moduli;
  for (const SymbolicTerm& t : a.terms) {
    if (t.mult > 1'000'000) fail(errc::validation, "multiplicity too large to expand");
    const long m = static_cast<long>(t.mult);
    if (t.atom.kind == AtomKind::free_z)
      rank += static_cast<int>(m);
    else if (t.atom.kind == AtomKind::finite_cyclic)
      for (long i = 0; i < m; ++i) moduli.push_back(t.atom.param);
    else
      fail(errc::unsupported_module, "not finitely generated: " + atom_str(t.atom));
  }
  return canonical_group(rank, moduli);
}

FrobKerCoker frobenius_kernel_cokernel(const ZhatModule& m) {
  if (!m.group.is_finite()) {
    // Free lattice with trivial action: continuous cohomology of the
    // profinite generator gives H0 = the lattice and H1 = 0 (a continuous
    // homomorphism from a profinite group to a discrete free group is
    // trivial), so the two-term complex is not used here.
    const bool free_group = m.group.torsion.empty();
    const bool identity_frob =
        m.frobenius.rows() == m.group.gens() && m.frobenius.cols() == m.group.gens() &&
        m.frobenius == IntMatrix::identity(m.group.gens());
    if (free_group && m.twist == 0 && identity_frob)
      return FrobKerCoker{m.group, FgAbGroup::zero()};
    fail(errc::validation,
         "frobenius kernel/cokernel needs a finite module, or a free module "
         "with twist 0 and identity frobenius");
  }
  if (m.q < 2) fail(errc::validation, "q must be at least 2");
  if (m.frobenius.rows() != m.group.gens() || m.frobenius.cols() != m.group.gens())
    fail(errc::validation, "frobenius shape mismatch");
  const Int e = m.group.exponent();
  Int scale = 1;
  if (m.twist >= 0) {
    scale = mod_pow(m.q, Int(m.twist), e == 1 ? Int(2) : e);
  } else {
    if (e > 1 && gcd_int(m.q, e) != 1)
      fail(errc::non_invertible_twist,
           "negative twist with q = " + m.q.str() + " not invertible on the module");
    if (e > 1) scale = mod_pow(mod_inverse(m.q % e, e), Int(-m.twist), e);
  }
  IntMatrix em = m.frobenius;
  for (std::size_t i = 0; i < em.rows(); ++i) {
    for (std::size_t j = 0; j < em.cols(); ++j) em(i, j) *= scale;
    em(i, i) -= 1;
  }
  Homomorphism h{m.group, m.group, em};
  if (!h.well_defined()) fail(errc::validation, "frobenius does not respect the relations");
  return FrobKerCoker{h.kernel(), h.cokernel()};
}

}  // namespace logkfl
