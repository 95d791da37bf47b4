// Symbolic module arithmetic and the Frobenius fixed/cofixed-point computation.
#include "doctest.h"
#include "logkfl/coefficients.hpp"

using namespace logkfl;

TEST_CASE("symbolic normalization merges and sorts terms") {
  SymbolicModule a = direct_sum_sym(sym_cyclic(2), direct_sum_sym(sym_free(1), sym_cyclic(2)));
  SymbolicModule b = direct_sum_sym(scale_sym(sym_cyclic(2), 2), sym_free(1));
  CHECK(a == b);
  CHECK(scale_sym(a, 0).is_zero());
  CHECK(sym_cyclic(1).is_zero());
  CHECK(sym_free(0).is_zero());
  CHECK(twist_sym(sym_cyclic(3, 1), -1) == sym_cyclic(3));
  CHECK(direct_sum_sym(sym_zero(), sym_zero()).is_zero());
}

TEST_CASE("string forms use the displayed notation") {
  CHECK(sym_zero().to_string() == "0");
  CHECK(sym_free(1).to_string() == "Z");
  CHECK(sym_cyclic(9, -1).to_string() == "Z/9(-1)");
  CHECK(sym_qmodz().to_string() == "Q/Z");
  CHECK(scale_sym(sym_cyclic(2), 3).to_string() == "Z/2^3");
}

TEST_CASE("tensor rules on atoms") {
  CHECK(tensor_sym(sym_cyclic(4, -1), sym_cyclic(6, 1)) == sym_cyclic(2));
  CHECK(tensor_sym(sym_free(1, 1), sym_cyclic(5, 2)) == sym_cyclic(5, 3));
  CHECK(tensor_sym(sym_rational(1), sym_cyclic(5)).is_zero());
  CHECK(tensor_sym(sym_free(2), sym_free(3)) == sym_free(6));
  // divisible tensor divisible (Q counts as divisible) is outside this calculus
  CHECK_THROWS_AS(tensor_sym(sym_qmodz(), sym_qmodz()), error);
  try {
    tensor_sym(sym_rational(1), sym_rational(1));
    FAIL("Q (x) Q accepted");
  } catch (const error& err) {
    CHECK(err.code() == errc::unsupported_tensor);
  }
}

TEST_CASE("torsion selectors on symbolic modules") {
  CHECK(n_torsion_sym(sym_qmodz(), 6) == sym_cyclic(6));
  CHECK(n_torsion_sym(sym_primary_divisible(3), 6) == sym_cyclic(3));
  CHECK(n_torsion_sym(sym_cyclic(12), 4) == sym_cyclic(4));
  CHECK(prime_to_p_sym(sym_cyclic(12), 2) == sym_cyclic(3));
  CHECK(prime_to_p_sym(sym_qmodz(), 3) == sym_prime_to_p(3));
  CHECK(prime_to_p_sym(sym_qmodz(), 0) == sym_qmodz());
  CHECK(prime_to_p_sym(sym_free(2), 5).is_zero());  // free atoms carry no torsion
  CHECK(p_primary_sym(sym_qmodz(), 5) == sym_primary_divisible(5));
  CHECK(p_primary_sym(sym_cyclic(12), 2) == sym_cyclic(4));
}

TEST_CASE("finiteness predicate and the group of a symbolic value") {
  CHECK(is_finite_sym(sym_cyclic(6)));
  CHECK(!is_finite_sym(sym_qmodz()));
  CHECK(!is_finite_sym(sym_free(1)));
  CHECK(group_of_sym(direct_sum_sym(sym_free(2), scale_sym(sym_cyclic(3), 2))) ==
        canonical_group(2, {3, 3}));
  CHECK_THROWS_AS(group_of_sym(sym_primary_divisible(2)), error);
}

TEST_CASE("frobenius kernel and cokernel on finite modules") {
  // untwisted identity: everything is fixed
  FrobKerCoker kc =
      frobenius_kernel_cokernel(ZhatModule{FgAbGroup::cyclic(9), IntMatrix::identity(1), 0, 4});
  CHECK(kc.h0 == FgAbGroup::cyclic(9));
  CHECK(kc.h1 == FgAbGroup::cyclic(9));

  // twist by q: multiplication by q - 1
  kc = frobenius_kernel_cokernel(ZhatModule{FgAbGroup::cyclic(9), IntMatrix::identity(1), 1, 4});
  CHECK(kc.h0 == FgAbGroup::cyclic(3));
  CHECK(kc.h1 == FgAbGroup::cyclic(3));

  // inverse twist at an invertible q
  kc = frobenius_kernel_cokernel(ZhatModule{FgAbGroup::cyclic(9), IntMatrix::identity(1), -1, 7});
  CHECK(kc.h0 == FgAbGroup::cyclic(3));
  CHECK(kc.h1 == FgAbGroup::cyclic(3));

  // inverse twist needs q invertible modulo the exponent
  CHECK_THROWS_AS(
      frobenius_kernel_cokernel(ZhatModule{FgAbGroup::cyclic(4), IntMatrix::identity(1), -1, 2}),
      error);
  try {
    frobenius_kernel_cokernel(ZhatModule{FgAbGroup::cyclic(4), IntMatrix::identity(1), -1, 2});
  } catch (const error& e) {
    CHECK(e.code() == errc::non_invertible_twist);
  }
}

TEST_CASE("free module with trivial action gets the classical answer") {
  FrobKerCoker kc = frobenius_kernel_cokernel(
      ZhatModule{FgAbGroup::free_group(2), IntMatrix::identity(2), 0, 5});
  CHECK(kc.h0 == FgAbGroup::free_group(2));
  CHECK(kc.h1 == FgAbGroup::zero());

  // twisted or genuinely acting free modules are out of scope here
  IntMatrix neg = IntMatrix::identity(1);
  neg(0, 0) = -1;
  CHECK_THROWS_AS(
      frobenius_kernel_cokernel(ZhatModule{FgAbGroup::free_group(1), neg, 0, 5}), error);
  CHECK_THROWS_AS(frobenius_kernel_cokernel(
                      ZhatModule{FgAbGroup::free_group(1), IntMatrix::identity(1), 1, 5}),
                  error);
  CHECK_THROWS_AS(frobenius_kernel_cokernel(
                      ZhatModule{canonical_group(1, {2}), IntMatrix::identity(2), 0, 5}),
                  error);
}

TEST_CASE("frobenius validation: shape, well-definedness, q bound") {
  CHECK_THROWS_AS(frobenius_kernel_cokernel(
                      ZhatModule{FgAbGroup::cyclic(4), IntMatrix::identity(2), 0, 3}),
                  error);
  CHECK_THROWS_AS(frobenius_kernel_cokernel(
                      ZhatModule{FgAbGroup::cyclic(4), IntMatrix::identity(1), 0, 1}),
                  error);
  // a matrix that is not a homomorphism on Z/2 + Z/4 (sends the order-2 generator to a
  // generator of order 4)
  IntMatrix badmap(2, 2);
  badmap(0, 0) = 1;
  badmap(1, 0) = 1;
  badmap(1, 1) = 1;
  CHECK_THROWS_AS(frobenius_kernel_cokernel(
                      ZhatModule{canonical_group(0, {2, 4}), badmap, 0, 3}),
                  error);
}
