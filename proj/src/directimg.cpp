#include "logkfl/directimg.hpp"

#include <algorithm>
#include <set>

#include "logkfl/errors.hpp"
#include "logkfl/integers.hpp"

namespace logkfl {

namespace {

void validate_point(const BasePoint& x) {
  if (x.label.empty()) fail(errc::validation, "marked point needs a label");
  if (x.log_rank < 0) fail(errc::validation, "log rank must be nonnegative");
  if (x.residue_char != 0 && !is_prime_int(x.residue_char))
    fail(errc::validation, "residue characteristic must be 0 or prime");
  if (x.residue_field_size != 0) {
    if (x.residue_char == 0)
      fail(errc::validation, "finite residue field needs a positive residue characteristic");
    Int q = x.residue_field_size;
    if (q < 2) fail(errc::validation, "residue field size must be at least 2");
    while (q % x.residue_char == 0) q /= x.residue_char;
    if (q != 1)
      fail(errc::validation, "residue field size must be a power of the residue characteristic");
  }
}

// The divisible group of torsion prime to the residue characteristic: the sum over all
// primes l != p of Q_l/Z_l, in closed form (all of Q/Z when p = 0).
SymbolicModule prime_to_residue_divisible(const BasePoint& x) {
  return x.residue_char == 0 ? sym_qmodz(0) : sym_prime_to_p(x.residue_char, 0);
}

}  // namespace

void validate_base(const BaseDescription& base) {
  if (base.kind != BaseKind::log_trait && base.kind != BaseKind::dedekind_with_s)
    fail(errc::unsupported_base, "unknown base kind");
  if (base.generic_char != 0 && !is_prime_int(base.generic_char))
    fail(errc::validation, "generic characteristic must be 0 or prime");
  if (base.kind == BaseKind::log_trait && base.points.size() != 1)
    fail(errc::validation, "a log trait has exactly one marked point");
  std::set<std::string> labels;
  for (const BasePoint& x : base.points) {
    validate_point(x);
    if (!labels.insert(x.label).second)
      fail(errc::validation, "duplicate marked point label: " + x.label);
  }
}

SheafSpec SheafSpec::finite_l(const Int& l, FgAbGroup m) {
  SheafSpec f;
  f.kind = SheafClass::finite_l_group;
  f.l = l;
  f.group = std::move(m);
  return f;
}

SheafSpec SheafSpec::finite_l_with_frobenius(const Int& l, FgAbGroup m, IntMatrix frob) {
  SheafSpec f = finite_l(l, std::move(m));
  f.frobenius = std::move(frob);
  return f;
}

SheafSpec SheafSpec::lattice(int rank) {
  SheafSpec f;
  f.kind = SheafClass::lattice;
  f.rank = rank;
  return f;
}

SheafSpec SheafSpec::rational(int dim) {
  SheafSpec f;
  f.kind = SheafClass::rational_space;
  f.rank = dim;
  return f;
}

void validate_sheaf(const SheafSpec& f) {
  switch (f.kind) {
    case SheafClass::finite_l_group: {
      if (!is_prime_int(f.l)) fail(errc::validation, "finite l-group needs a prime l");
      if (!f.group.is_finite()) fail(errc::validation, "finite l-group needs a finite group");
      for (const Int& d : f.group.torsion)
        if (prime_to_p_part(d, f.l) != 1)
          fail(errc::validation, "group is not " + f.l.str() + "-primary");
      if (f.has_frobenius() &&
          (f.frobenius.rows() != f.group.gens() || f.frobenius.cols() != f.group.gens()))
        fail(errc::validation, "frobenius shape mismatch");
      return;
    }
    case SheafClass::lattice:
    case SheafClass::rational_space:
      if (f.rank < 0) fail(errc::validation, "rank must be nonnegative");
      if (f.has_frobenius())
        fail(errc::validation, "explicit frobenius is only supported on finite l-groups");
      return;
  }
  fail(errc::validation, "unknown sheaf class");
}

DirectImageExpr higher_direct_image(const BaseDescription& base, const SheafSpec& f, int i) {
  validate_base(base);
  validate_sheaf(f);
  if (i < 1) fail(errc::validation, "higher direct images start at degree 1");

  DirectImageExpr out;
  switch (f.kind) {
    case SheafClass::rational_space:
      return out;  // smooth group scheme with uniquely divisible points: no higher images
    case SheafClass::finite_l_group:
      for (const BasePoint& x : base.points) {
        if (x.residue_char == f.l) continue;  // extension by zero across char-l points
        const Int mult = binomial_int(x.log_rank, i);
        if (mult == 0) continue;
        SymbolicModule m = scale_sym(twist_sym(sym_from_group(f.group), -i), mult);
        if (!m.is_zero()) out.terms.push_back({x.label, std::move(m)});
      }
      return out;
    case SheafClass::lattice: {
      if (i == 1) return out;  // degree-one images of lattices vanish
      for (const BasePoint& x : base.points) {
        const Int mult = Int(f.rank) * binomial_int(x.log_rank, i - 1);
        if (mult == 0) continue;
        SymbolicModule m =
            scale_sym(twist_sym(prime_to_residue_divisible(x), -(i - 1)), mult);
        if (!m.is_zero()) out.terms.push_back({x.label, std::move(m)});
      }
      return out;
    }
  }
  fail(errc::unsupported_base, "unknown base kind");
}

SymbolicModule stalk_on_strict_site(const DirectImageExpr& expr, const BasePoint& x) {
  SymbolicModule out = sym_zero();
  for (const SkyscraperTerm& t : expr.terms)
    if (t.point == x.label) out = direct_sum_sym(out, t.module);
  return out;
}

int vanishing_degree(const BaseDescription& base, const SheafSpec& f) {
  validate_base(base);
  validate_sheaf(f);
  int rho = 0;
  for (const BasePoint& x : base.points) rho = std::max(rho, x.log_rank);
  switch (f.kind) {
    case SheafClass::rational_space:
      return 1;
    case SheafClass::finite_l_group:
      return rho >= 1 ? rho + 1 : 1;
    case SheafClass::lattice:
      return rho >= 1 ? rho + 2 : 1;
  }
  fail(errc::unsupported_base, "unknown base kind");
}

}  // namespace logkfl
