// Standard complexes, brute-force group cohomology, cyclic closed forms, inflation,
// and the profinite colimit machinery.
#include <vector>

#include "doctest.h"
#include "logkfl/chain.hpp"
#include "logkfl/groupcoh.hpp"

using namespace logkfl;

TEST_CASE("standard complex is a complex and matches the dense homology path") {
  const FgAbGroup groups[] = {FgAbGroup::cyclic(4), canonical_group(0, {2, 2}),
                              FgAbGroup::cyclic(6)};
  const FgAbGroup coeffs[] = {FgAbGroup::free_group(1), FgAbGroup::cyclic(2),
                              canonical_group(0, {4})};
  for (const FgAbGroup& g : groups)
    for (const FgAbGroup& m : coeffs) {
      ChainComplex c = standard_complex(g, m, 3);
      REQUIRE(c.groups.size() == 4);
      REQUIRE(c.diff.size() == 3);
      for (std::size_t i = 0; i + 1 < c.diff.size(); ++i)
        CHECK(c.diff[i + 1].mul(c.diff[i]).is_zero());
      for (int i = 0; i <= 2; ++i) CHECK(homology_at(c, i) == cohomology_bruteforce(g, m, i));
    }
}

TEST_CASE("degree zero is the coefficients and positive degrees are killed by the order") {
  const FgAbGroup g = canonical_group(0, {2, 4});
  const FgAbGroup m = canonical_group(1, {6});
  CHECK(cohomology_bruteforce(g, m, 0) == m);
  for (int i = 1; i <= 3; ++i) {
    FgAbGroup h = cohomology_bruteforce(g, m, i);
    CHECK(h.is_finite());
    if (!h.torsion.empty()) CHECK(g.order() % h.exponent() == 0);
  }
}

TEST_CASE("brute force agrees with the cyclic closed form") {
  const FgAbGroup coeffs[] = {FgAbGroup::free_group(1), FgAbGroup::cyclic(2),
                              FgAbGroup::cyclic(4), FgAbGroup::cyclic(6),
                              canonical_group(1, {2})};
  for (Int m : {Int(2), Int(3), Int(4), Int(6)})
    for (const FgAbGroup& coeff : coeffs)
      for (int i = 0; i <= 4; ++i)
        CHECK(cohomology_bruteforce(FgAbGroup::cyclic(m), coeff, i) ==
              cohomology_cyclic_closed(m, coeff, i));
}

TEST_CASE("cyclic closed form values") {
  // H^i(Z/m, M): M, ker, coker, ker, ... for multiplication by m on M
  CHECK(cohomology_cyclic_closed(4, FgAbGroup::free_group(1), 0) == FgAbGroup::free_group(1));
  CHECK(cohomology_cyclic_closed(4, FgAbGroup::free_group(1), 1) == FgAbGroup::zero());
  CHECK(cohomology_cyclic_closed(4, FgAbGroup::free_group(1), 2) == FgAbGroup::cyclic(4));
  CHECK(cohomology_cyclic_closed(4, FgAbGroup::cyclic(6), 1) == FgAbGroup::cyclic(2));
  CHECK(cohomology_cyclic_closed(4, FgAbGroup::cyclic(6), 2) == FgAbGroup::cyclic(2));
}

TEST_CASE("klein group cohomology of Z/2 grows linearly") {
  const FgAbGroup klein = canonical_group(0, {2, 2});
  for (int i = 0; i <= 4; ++i) {
    FgAbGroup h = cohomology_bruteforce(klein, FgAbGroup::cyclic(2), i);
    CHECK(h == canonical_group(0, std::vector<Int>(static_cast<std::size_t>(i + 1), 2)));
  }
}

TEST_CASE("rational coefficients survive only in degree zero") {
  const FgAbGroup g = canonical_group(0, {2, 6});
  CHECK(cohomology_rational(g, 0) == sym_rational(1));
  for (int i = 1; i <= 4; ++i) CHECK(cohomology_rational(g, i).is_zero());
}

TEST_CASE("inflation in degree one is injective; non-surjections are rejected") {
  IntMatrix onto(1, 1);
  onto(0, 0) = 1;
  Homomorphism inf =
      inflation(FgAbGroup::cyclic(4), FgAbGroup::cyclic(2), onto, FgAbGroup::cyclic(2), 1);
  CHECK(inf.well_defined());
  CHECK(inf.kernel().is_zero());
  CHECK(inf.source == cohomology_bruteforce(FgAbGroup::cyclic(2), FgAbGroup::cyclic(2), 1));
  CHECK(inf.target == cohomology_bruteforce(FgAbGroup::cyclic(4), FgAbGroup::cyclic(2), 1));

  IntMatrix twice(1, 1);
  twice(0, 0) = 2;  // Z/4 -> Z/4, not onto
  CHECK_THROWS_WITH_AS(
      inflation(FgAbGroup::cyclic(4), FgAbGroup::cyclic(4), twice, FgAbGroup::cyclic(2), 1),
      "inflation needs a surjection", error);
}

TEST_CASE("validation and resource errors carry their codes") {
  try {
    standard_complex(FgAbGroup::free_group(1), FgAbGroup::cyclic(2), 2);
    FAIL("infinite group accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::validation);
  }
  try {
    cohomology_bruteforce(canonical_group(0, {64, 64}), FgAbGroup::cyclic(2), 4);
    FAIL("size bound ignored");
  } catch (const error& e) {
    CHECK(e.code() == errc::size_bound);
    CHECK(is_resource_error(e.code()));
  }
}

TEST_CASE("profinite closed form") {
  // degree zero is the module itself
  CHECK(profinite_closed_form(2, sym_cyclic(6), 5, 0) == sym_cyclic(6));
  // prime-to-p part with binomial multiplicity
  CHECK(profinite_closed_form(2, sym_cyclic(6), 3, 1) == scale_sym(sym_cyclic(2), 2));
  CHECK(profinite_closed_form(2, sym_cyclic(6), 3, 2) == sym_cyclic(2));
  CHECK(profinite_closed_form(2, sym_cyclic(6), 3, 3).is_zero());  // past the variable count
  CHECK(profinite_closed_form(1, sym_cyclic(9), 3, 1).is_zero());  // p-primary dies
  // twists ride along
  CHECK(profinite_closed_form(1, sym_cyclic(4, -1), 3, 1) == sym_cyclic(4, -1));
  // divisible coefficients stay symbolic
  CHECK(profinite_closed_form(1, sym_qmodz(), 5, 1) == sym_prime_to_p(5));
  // free or rational summands are outside the formula in positive degree
  CHECK_THROWS_AS(profinite_closed_form(1, sym_free(1), 5, 1), error);
  CHECK_THROWS_AS(profinite_closed_form(1, sym_rational(1), 5, 1), error);
  CHECK_THROWS_AS(profinite_closed_form(1, sym_cyclic(2), 6, 1), error);  // p must be prime
}

TEST_CASE("profinite ladder computation matches the closed form") {
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
      {2, FgAbGroup::cyclic(6), 5, 1, {6, 12, 24}, canonical_group(0, {6, 6})},
  };
  for (const Case& c : cases) {
    FgAbGroup got = profinite_colimit_bruteforce(c.r, c.m, c.p, c.i, c.ladder);
    CHECK(got == c.expect);
    CHECK(group_of_sym(profinite_closed_form(c.r, sym_from_group(c.m), c.p, c.i)) == got);
  }
}

TEST_CASE("ladders that cannot certify stabilization are refused, not guessed") {
  // exponent 4 never divides any rung: no stabilization witness
  try {
    profinite_colimit_bruteforce(1, FgAbGroup::cyclic(4), 3, 1, {2});
    FAIL("unstabilized ladder accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_stabilized);
    CHECK(is_resource_error(e.code()));
  }
  // malformed ladders: not a divisor chain, or not coprime to p
  CHECK_THROWS_AS(profinite_colimit_bruteforce(1, FgAbGroup::cyclic(2), 5, 1, {4, 2}), error);
  CHECK_THROWS_AS(profinite_colimit_bruteforce(1, FgAbGroup::cyclic(3), 2, 1, {2, 4}), error);
  CHECK_THROWS_AS(profinite_colimit_bruteforce(1, FgAbGroup::cyclic(2), 5, 1, {}), error);
  // coefficients with p-torsion are outside the ladder computation by design
  CHECK_THROWS_AS(profinite_colimit_bruteforce(2, FgAbGroup::cyclic(6), 3, 1, {2, 4, 8}), error);
}
