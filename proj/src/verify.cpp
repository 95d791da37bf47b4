#include "logkfl/verify.hpp"

#include <functional>
#include <random>

#include "logkfl/abelian.hpp"
#include "logkfl/calculators.hpp"
#include "logkfl/chain.hpp"
#include "logkfl/coefficients.hpp"
#include "logkfl/directimg.hpp"
#include "logkfl/groupcoh.hpp"
#include "logkfl/kummer.hpp"
#include "logkfl/snf.hpp"

namespace logkfl {

namespace {

struct Suite {
  VerifyResult result;

  explicit Suite(std::string name) { result.suite = std::move(name); }

  void check(bool ok, const std::string& what) {
    if (!ok && result.pass) {
      result.pass = false;
      result.detail = what;
    }
  }
};

VerifyResult run_suite(const std::string& name, const std::function<void(Suite&)>& body) {
  Suite s(name);
  try {
    body(s);
  } catch (const std::exception& e) {
    s.check(false, std::string("exception: ") + e.what());
  }
  return s.result;
}

bool unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  SmithResult s = smith_normal_form(m, false);
  if (s.rank != m.rows()) return false;
  for (const Int& d : s.diag)
    if (d != 0 && d != 1) return false;
  return true;
}

Int gcd_of_entries(const IntMatrix& m) {
  Int g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g = gcd_int(g, m(i, j));
  return g;
}

void snf_suite(Suite& s) {
  std::mt19937 rng(20260814u);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = static_cast<std::size_t>(dim(rng));
    const std::size_t c = static_cast<std::size_t>(dim(rng));
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = entry(rng);
    SmithResult f = smith_normal_form(a);
    s.check(f.U.mul(a).mul(f.V) == f.D, "U*A*V = D");
    s.check(f.U.mul(f.Uinv) == IntMatrix::identity(r), "U*Uinv = I");
    s.check(unimodular(f.V), "V unimodular");
    for (std::size_t k = 0; k + 1 < f.rank; ++k)
      s.check(f.diag[k + 1] % f.diag[k] == 0, "divisibility chain");
    if (f.rank > 0) s.check(f.diag[0] == gcd_of_entries(a), "d1 = gcd of entries");
    IntMatrix ker = kernel_basis(a);
    s.check(a.mul(ker).is_zero(), "A * kernel_basis(A) = 0");
    s.check(f.rank + ker.cols() == c, "rank-nullity");
  }
}

void abelian_suite(Suite& s) {
  s.check(canonical_group(0, {4, 6}) == canonical_group(0, {2, 12}), "normal form of Z/4 + Z/6");
  s.check(tensor_ab(FgAbGroup::cyclic(4), FgAbGroup::cyclic(6)) == FgAbGroup::cyclic(2),
          "Z/4 (x) Z/6 = Z/2");
  s.check(hom_ab(FgAbGroup::cyclic(6), FgAbGroup::cyclic(12)) == FgAbGroup::cyclic(6),
          "Hom(Z/6, Z/12) = Z/6");
  s.check(hom_ab(FgAbGroup::free_group(1), FgAbGroup::cyclic(5)) == FgAbGroup::cyclic(5),
          "Hom(Z, Z/5) = Z/5");
  s.check(exterior_power(FgAbGroup::free_group(4), 2) == FgAbGroup::free_group(6),
          "wedge^2 Z^4 = Z^6");
  IntMatrix rel(2, 2);
  rel(0, 0) = 2;
  rel(1, 1) = 3;
  s.check(group_from_presentation(rel, 2) == FgAbGroup::cyclic(6), "Z^2/(2e1, 3e2) = Z/6");
  s.check(n_torsion(FgAbGroup::cyclic(12), 4) == FgAbGroup::cyclic(4), "(Z/12)[4] = Z/4");
  s.check(quotient_by_n(FgAbGroup::cyclic(12), 4) == FgAbGroup::cyclic(4), "(Z/12)/4 = Z/4");
  s.check(primary_component(FgAbGroup::cyclic(12), 2) == FgAbGroup::cyclic(4),
          "2-part of Z/12");
  s.check(prime_to_p_component(FgAbGroup::cyclic(12), 2) == FgAbGroup::cyclic(3),
          "prime-to-2 part of Z/12");
  const FgAbGroup g = canonical_group(1, {2, 6});
  s.check(recompose(torsion_decompose(g)) == g, "decompose/recompose round trip");
}

void chain_suite(Suite& s) {
  const FgAbGroup pairs[][2] = {
      {FgAbGroup::cyclic(4), FgAbGroup::cyclic(2)},
      {canonical_group(0, {2, 2}), FgAbGroup::cyclic(3)},
      {FgAbGroup::cyclic(6), FgAbGroup::cyclic(4)},
  };
  for (const auto& pr : pairs) {
    ChainComplex c = standard_complex(pr[0], pr[1], 3);
    for (std::size_t i = 0; i + 1 < c.diff.size(); ++i)
      s.check(c.diff[i + 1].mul(c.diff[i]).is_zero(), "d after d = 0");
    for (int i = 0; i <= 2; ++i)
      s.check(homology_at(c, i) == cohomology_bruteforce(pr[0], pr[1], i),
              "dense homology matches streaming cohomology");
  }
}

void groupcoh_suite(Suite& s) {
  const FgAbGroup coeffs[] = {FgAbGroup::free_group(1), FgAbGroup::cyclic(4),
                              canonical_group(1, {2})};
  for (Int m : {Int(2), Int(4), Int(6)})
    for (const FgAbGroup& coeff : coeffs)
      for (int i = 0; i <= 3; ++i)
        s.check(cohomology_bruteforce(FgAbGroup::cyclic(m), coeff, i) ==
                    cohomology_cyclic_closed(m, coeff, i),
                "brute force matches cyclic closed form");
  const FgAbGroup klein = canonical_group(0, {2, 2});
  for (int i = 1; i <= 3; ++i) {
    FgAbGroup h = cohomology_bruteforce(klein, FgAbGroup::cyclic(4), i);
    s.check(klein.order() % h.exponent() == 0, "positive-degree cohomology killed by |G|");
  }
  s.check(cohomology_bruteforce(klein, FgAbGroup::cyclic(4), 0) == FgAbGroup::cyclic(4),
          "H^0 is the invariants");
  s.check(cohomology_rational(klein, 0) == sym_rational(1), "H^0(G, Q) = Q");
  s.check(cohomology_rational(klein, 2).is_zero(), "H^2(G, Q) = 0");
  IntMatrix onto(1, 1);
  onto(0, 0) = 1;
  Homomorphism inf = inflation(FgAbGroup::cyclic(4), FgAbGroup::cyclic(2), onto,
                               FgAbGroup::cyclic(2), 1);
  s.check(inf.well_defined() && inf.kernel().is_zero(), "degree-1 inflation injective");
}

void profinite_suite(Suite& s) {
  struct Case {
    int r;
    FgAbGroup m;
    Int p;
    int i;
    std::vector<Int> ladder;
    FgAbGroup expect;
  };
  const Case cases[] = {
      {1, FgAbGroup::cyclic(2), 5, 2, {2, 4, 8}, FgAbGroup::zero()},
      {1, FgAbGroup::cyclic(3), 2, 1, {3, 9}, FgAbGroup::cyclic(3)},
      {2, FgAbGroup::cyclic(2), 3, 2, {2, 4}, FgAbGroup::cyclic(2)},
  };
  for (const Case& c : cases) {
    FgAbGroup got = profinite_colimit_bruteforce(c.r, c.m, c.p, c.i, c.ladder);
    s.check(got == c.expect, "ladder colimit value");
    SymbolicModule closed = profinite_closed_form(c.r, sym_from_group(c.m), c.p, c.i);
    s.check(group_of_sym(closed) == got, "closed form matches ladder");
  }
}

void coefficients_suite(Suite& s) {
  std::mt19937 rng(7u);
  std::uniform_int_distribution<int> pick_n(2, 12), pick_q(2, 9), pick_e(-4, 4);
  for (int trial = 0; trial < 12; ++trial) {
    FgAbGroup g = canonical_group(0, {Int(pick_n(rng))});
    IntMatrix frob(1, 1);
    frob(0, 0) = pick_e(rng);
    ZhatModule m{g, frob, 0, Int(pick_q(rng))};
    FrobKerCoker kc = frobenius_kernel_cokernel(m);
    s.check(kc.h0.order() == kc.h1.order(),
            "fixed and cofixed points of a finite module have equal order");
  }
  {
    ZhatModule m{FgAbGroup::cyclic(9), IntMatrix::identity(1), -1, 7};
    FrobKerCoker kc = frobenius_kernel_cokernel(m);
    s.check(kc.h0 == FgAbGroup::cyclic(3) && kc.h1 == FgAbGroup::cyclic(3),
            "twist by q^{-1} on Z/9 at q = 7");
  }
  s.check(tensor_sym(sym_cyclic(4, -1), sym_cyclic(6, 1)) == sym_cyclic(2, 0),
          "Z/4(-1) (x) Z/6(1) = Z/2");
  s.check(n_torsion_sym(sym_qmodz(), 6) == sym_cyclic(6), "(Q/Z)[6] = Z/6");
  s.check(prime_to_p_sym(sym_cyclic(12), 2) == sym_cyclic(3), "prime-to-2 part of Z/12");
  s.check(p_primary_sym(sym_qmodz(), 5) == sym_primary_divisible(5), "5-part of Q/Z");
  s.check(group_of_sym(direct_sum_sym(sym_free(2), sym_cyclic(3))) == canonical_group(2, {3}),
          "symbolic/concrete round trip");
}

void kummer_suite(Suite& s) {
  const LogPointModel flat{1, 0};
  cech_complex(flat, 4, FgAbGroup::cyclic(2), 2);  // throws if the identification fails
  const LogPointModel wild{1, 3};
  s.check(kummer_group(wild, 12) == FgAbGroup::cyclic(4), "level 12 at p = 3 has group Z/4");
  s.check(cech_cohomology(wild, 12, FgAbGroup::cyclic(4), 1) == FgAbGroup::cyclic(4),
          "H^1(Z/4, Z/4) = Z/4");
  Homomorphism t = cech_cohomology_tower_map(wild, 2, 6, FgAbGroup::cyclic(2), 1);
  s.check(t.well_defined() && t.kernel().is_zero() && t.cokernel().is_zero(),
          "tower map between levels 2 and 6 at p = 3 is an isomorphism");
  const LogPointModel surf{2, 3};
  s.check(cech_colimit(surf, sym_cyclic(2), 1) == scale_sym(twist_sym(sym_cyclic(2), -1), 2),
          "rank-2 colimit in degree 1");
  s.check(cech_colimit(surf, sym_primary_divisible(3), 1).is_zero(),
          "p-primary coefficients die in the colimit");
}

void directimg_suite(Suite& s) {
  BaseDescription trait{BaseKind::log_trait, {BasePoint{"x", 3, 9, 2}}, 0};
  s.check(higher_direct_image(trait, SheafSpec::lattice(1), 1).is_zero(), "R^1 of a lattice");
  s.check(higher_direct_image(trait, SheafSpec::rational(2), 1).is_zero() &&
              higher_direct_image(trait, SheafSpec::rational(2), 2).is_zero(),
          "rational images vanish");
  DirectImageExpr r2 = higher_direct_image(trait, SheafSpec::lattice(1), 2);
  SymbolicModule want = scale_sym(twist_sym(sym_prime_to_p(3), -1), 2);
  s.check(stalk_on_strict_site(r2, trait.points[0]) == want, "lattice image at level 2");
  for (Int l : {Int(2), Int(5), Int(7)}) {
    DirectImageExpr fin = higher_direct_image(trait, SheafSpec::finite_l(l, FgAbGroup::cyclic(l)), 1);
    SymbolicModule stalk = stalk_on_strict_site(fin, trait.points[0]);
    s.check(stalk == scale_sym(twist_sym(sym_cyclic(l), -1), 2),
            "finite image one degree down matches the lattice rule");
  }
  const int vd = vanishing_degree(trait, SheafSpec::lattice(1));
  s.check(!higher_direct_image(trait, SheafSpec::lattice(1), vd - 1).is_zero(),
          "last lattice image nonzero");
  s.check(higher_direct_image(trait, SheafSpec::lattice(1), vd).is_zero() &&
              higher_direct_image(trait, SheafSpec::lattice(1), vd + 1).is_zero(),
          "lattice images vanish from the vanishing degree");
}

Int order_of_entry(const TableEntry& e, bool& finite) {
  if (e.extension) {
    if (e.sub.opaque || e.quot.opaque || !is_finite_sym(e.sub.module) ||
        !is_finite_sym(e.quot.module)) {
      finite = false;
      return 1;
    }
    return group_of_sym(e.sub.module).order() * group_of_sym(e.quot.module).order();
  }
  if (e.value.opaque || !is_finite_sym(e.value.module)) {
    finite = false;
    return 1;
  }
  return group_of_sym(e.value.module).order();
}

void calculators_suite(Suite& s) {
  {
    CohomologyTable t = dvr_calculator(2, SheafSpec::lattice(1), CalcMode::computed);
    const SymbolicModule want[] = {sym_free(1), sym_zero(), sym_qmodz(), sym_zero(), sym_zero()};
    s.check(t.degrees.size() == 5, "lattice table has degrees 0..4");
    for (std::size_t i = 0; i < t.degrees.size() && i < 5; ++i)
      s.check(t.degrees[i] == TableEntry::of(Cell::of(want[i])), "lattice table entry");
    s.check(t.diagnostics.empty(), "no discrepancies at q = 2");
  }
  {
    CohomologyTable t = dvr_calculator(2, SheafSpec::finite_l(3, FgAbGroup::cyclic(9)),
                                       CalcMode::computed);
    const SymbolicModule want[] = {sym_cyclic(9), sym_cyclic(9), sym_zero(), sym_zero()};
    s.check(t.degrees.size() == 4, "finite table has degrees 0..3");
    for (std::size_t i = 0; i < t.degrees.size() && i < 4; ++i)
      s.check(t.degrees[i] == TableEntry::of(Cell::of(want[i])), "finite table entry");
  }
  {
    CohomologyTable t = dvr_calculator(7, SheafSpec::finite_l(3, FgAbGroup::cyclic(3)),
                                       CalcMode::computed);
    s.check(!t.diagnostics.empty(), "twist-acts-trivially discrepancy surfaced at q = 7");
    for (const ExactSegment& seg : t.segments) {
      if (!seg.closed_left || !seg.closed_right) continue;
      Int num = 1, den = 1;
      bool finite = true;
      for (std::size_t k = 0; k < seg.terms.size(); ++k) {
        Int o = order_of_entry(seg.terms[k].entry, finite);
        (k % 2 == 0 ? num : den) *= o;
      }
      if (finite) s.check(num == den, "alternating order product over a closed fragment");
    }
  }
}

}  // namespace

std::vector<VerifyResult> run_verify_suites() {
  return {
      run_suite("snf", snf_suite),
      run_suite("abelian", abelian_suite),
      run_suite("chain", chain_suite),
      run_suite("group-cohomology", groupcoh_suite),
      run_suite("profinite", profinite_suite),
      run_suite("coefficients", coefficients_suite),
      run_suite("kummer-cech", kummer_suite),
      run_suite("direct-images", directimg_suite),
      run_suite("calculators", calculators_suite),
  };
}

bool all_pass(const std::vector<VerifyResult>& results) {
  for (const VerifyResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace logkfl
