// Cohomology of finite abelian groups with trivial action: the materialized standard
// complex, brute-force cohomology through the streaming parameterization, the cyclic
// closed forms, inflation maps, and the profinite colimit machinery (closed form and
// honest finite-level ladders with a stabilization witness).
#pragma once

#include <vector>

#include "logkfl/abelian.hpp"
#include "logkfl/barcoh.hpp"
#include "logkfl/chain.hpp"
#include "logkfl/coefficients.hpp"

namespace logkfl {

// Standard cochain complex C^0..C^degree_max of G with coefficients in M (trivial
// action). Generators are coefficient-generator major: index = m_gen * |G|^r + tuple.
// Size guard: |G|^degree_max * gens(M) must stay within the configured size bound.
ChainComplex standard_complex(const FgAbGroup& g, const FgAbGroup& m, int degree_max);

// H^i(G, M) in normal form. Splits M into cyclic and free summands; cyclic summands go
// through a Howell-form kernel/coboundary quotient in parameter space, free summands
// through a rank certificate (mod-p elimination with an early-stop target matched
// against the coboundary rank from one degree down) plus invariant factors of the
// incoming differential accumulated mod |G|^2. The certificate only uses inequalities
// that hold unconditionally, so a reached target proves the rational rank exactly; if
// no small prime reaches it the exact integer echelon settles the rank instead.
FgAbGroup cohomology_bruteforce(const FgAbGroup& g, const FgAbGroup& m, int i);

// H^i(Z/m, M): M for i = 0, the m-torsion M[m] in odd degrees, M/mM in positive even
// degrees.
FgAbGroup cohomology_cyclic_closed(const Int& m, const FgAbGroup& coeff, int i);

// H^i(G, Q) for finite G: Q in degree 0, zero above.
SymbolicModule cohomology_rational(const FgAbGroup& g, int i);

// Inflation H^i(G, M) -> H^i(G', M) along a surjection G' ->> G of finite abelian
// groups, given on normal-form generators (columns of map_to_small are the images of
// the generators of big in the coordinates of small). Throws NotSurjective when the
// images fail to generate. Dense cocycle-level computation.
Homomorphism inflation(const FgAbGroup& big, const FgAbGroup& small,
                       const IntMatrix& map_to_small, const FgAbGroup& coeff, int i);

// Closed form of the profinite colimit over the prime-to-p tower in r variables:
// M itself in degree 0, (prime-to-p part of M)^binom(r,i) above. Torsion coefficients
// only for i >= 1; a free or rational summand has no prime-to-p torsion part and the
// formula does not apply to it.
SymbolicModule profinite_closed_form(int r, const SymbolicModule& m, const Int& p, int i);

// Finite-level computation of the same colimit along an explicit ladder m_1 | m_2 | ...
// of levels coprime to p. Per prime component of M the image chain of cohomology along
// the inflations is computed honestly; the result is reported only when a stabilization
// witness exists: some rung j with exp divides m_j, followed either by a vanishing
// image, a further rung with exp dividing m_{j+1}/m_j, or i <= 1, and with every later
// inflation injective on the arriving image. Otherwise NotStabilized.
FgAbGroup profinite_colimit_bruteforce(int r, const FgAbGroup& m, const Int& p, int i,
                                       const std::vector<Int>& ladder);

}  // namespace logkfl
