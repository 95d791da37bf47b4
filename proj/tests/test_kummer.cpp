// Kummer covers of a log point: covering groups, the executable identification of the
// Cech complex with the standard complex, tower maps, and the colimit formula.
#include <string>

#include "doctest.h"
#include "logkfl/groupcoh.hpp"
#include "logkfl/kummer.hpp"

using namespace logkfl;

TEST_CASE("covering group is the prime-to-p part of the level, repeated by rank") {
  CHECK(kummer_group({2, 3}, 6) == canonical_group(0, {2, 2}));
  CHECK(kummer_group({1, 2}, 8) == FgAbGroup::zero());
  CHECK(kummer_group({1, 0}, 5) == FgAbGroup::cyclic(5));
  CHECK(kummer_group({3, 5}, 10) == canonical_group(0, {2, 2, 2}));

  KummerCover c = kummer_cover({1, 3}, 18);
  CHECK(c.m == 2);
  CHECK(c.t == 2);
  CHECK(c.level == 18);

  CHECK_THROWS_AS(kummer_cover({1, 4}, 2), error);   // residue char must be 0 or prime
  CHECK_THROWS_AS(kummer_cover({-1, 0}, 2), error);  // rank must be nonnegative
  CHECK_THROWS_AS(kummer_cover({1, 0}, 0), error);   // level must be positive
}

TEST_CASE("cech complex is matrix-identical to the standard complex") {
  // The identification is asserted inside cech_complex; a sweep over models and
  // coefficients exercises it. The returned complex must also have the right shape.
  const FgAbGroup mods[] = {FgAbGroup::free_group(1), FgAbGroup::cyclic(2),
                            FgAbGroup::cyclic(6)};
  for (int r = 0; r <= 2; ++r)
    for (int n = 1; n <= 5; ++n)
      for (const FgAbGroup& m : mods)
        for (Int p : {Int(0), Int(2), Int(3)}) {
          ChainComplex cx = cech_complex({r, p}, n, m, 3);
          REQUIRE(cx.groups.size() == 4);
          REQUIRE(cx.diff.size() == 3);
          ChainComplex std_cx = standard_complex(kummer_group({r, p}, n), m, 3);
          CHECK(cx.groups == std_cx.groups);
          for (std::size_t k = 0; k < 3; ++k) CHECK(cx.diff[k] == std_cx.diff[k]);
        }
}

TEST_CASE("degree one of a cover with integer coefficients vanishes; above it is finite "
          "prime-to-p torsion") {
  for (int r = 1; r <= 2; ++r)
    for (int n = 2; n <= 6; ++n)
      for (Int p : {Int(0), Int(2), Int(3), Int(5)}) {
        LogPointModel md{r, p};
        CHECK(cech_cohomology(md, n, FgAbGroup::free_group(1), 1) == FgAbGroup::zero());
        for (int i = 2; i <= 3; ++i) {
          FgAbGroup h = cech_cohomology(md, n, FgAbGroup::free_group(1), i);
          CHECK(h.is_finite());
          if (p != 0)
            for (const Int& d : h.torsion) CHECK(d % p != 0);
        }
        for (int i = 1; i <= 3; ++i)
          CHECK(cohomology_rational(kummer_group(md, n), i).is_zero());
      }
  CHECK(cech_cohomology({1, 0}, 2, FgAbGroup::free_group(1), 2) == FgAbGroup::cyclic(2));
}

TEST_CASE("purely wild covers are connected and acyclic") {
  ChainComplex cx = cech_complex({1, 2}, 2, FgAbGroup::cyclic(2), 3);
  for (const FgAbGroup& g : cx.groups) CHECK(g == FgAbGroup::cyclic(2));
  CHECK(cx.diff[0].is_zero());
  for (int i = 1; i <= 3; ++i)
    CHECK(cech_cohomology({1, 2}, 2, FgAbGroup::cyclic(2), i) == FgAbGroup::zero());
}

TEST_CASE("tower maps are isomorphisms between a level and its prime-to-p saturation") {
  Homomorphism f = cech_cohomology_tower_map({1, 3}, 2, 6, FgAbGroup::free_group(1), 2);
  CHECK(f.source == FgAbGroup::cyclic(2));
  CHECK(f.target == FgAbGroup::cyclic(2));
  CHECK(f.well_defined());
  CHECK(f.kernel().is_zero());
  CHECK(f.cokernel().is_zero());

  Homomorphism g = cech_cohomology_tower_map({1, 3}, 2, 2, FgAbGroup::free_group(1), 2);
  CHECK(g.source == g.target);

  try {
    cech_cohomology_tower_map({1, 3}, 2, 4, FgAbGroup::free_group(1), 2);
    FAIL("tower step 2 -> 4 at p = 3 accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::bad_tower);
  }
}

TEST_CASE("colimit formula: prime-to-p part, twist by -i, binomial multiplicity") {
  CHECK(cech_colimit({1, 5}, sym_cyclic(6), 1) == sym_cyclic(6, -1));
  CHECK(cech_colimit({2, 3}, sym_cyclic(2), 2) == sym_cyclic(2, -2));
  CHECK(cech_colimit({2, 3}, sym_cyclic(2), 1) == scale_sym(sym_cyclic(2, -1), 2));
  CHECK(cech_colimit({1, 3}, sym_cyclic(9), 1).is_zero());   // p-primary part dies
  CHECK(cech_colimit({1, 3}, sym_cyclic(2), 2).is_zero());   // past the chart rank
  CHECK(cech_colimit({2, 3}, sym_cyclic(12), 2) == sym_cyclic(4, -2));
  CHECK(cech_colimit({2, 0}, sym_qmodz(), 1) == scale_sym(sym_qmodz(-1), 2));
  CHECK(cech_colimit({2, 3}, sym_qmodz(), 1) == scale_sym(sym_prime_to_p(3, -1), 2));

  try {
    cech_colimit({1, 3}, sym_free(1), 1);
    FAIL("free coefficients accepted by the colimit formula");
  } catch (const error& e) {
    CHECK(e.code() == errc::validation);
  }
  CHECK_THROWS_AS(cech_colimit({1, 3}, sym_rational(1), 1), error);
  CHECK_THROWS_AS(cech_colimit({1, 3}, sym_cyclic(2), 0), error);  // starts in degree 1
}

TEST_CASE("cech cohomology agrees with the covering-group cohomology on examples") {
  CHECK(cech_cohomology({1, 3}, 12, FgAbGroup::cyclic(4), 1) == FgAbGroup::cyclic(4));
  CHECK(cech_cohomology({2, 0}, 2, FgAbGroup::cyclic(2), 2) ==
        cohomology_bruteforce(canonical_group(0, {2, 2}), FgAbGroup::cyclic(2), 2));
}
