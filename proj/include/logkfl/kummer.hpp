// Kummer covering tower of a strictly henselian log point. The model keeps just the
// data the cohomology depends on: the rank r of the chart's group envelope and the
// residue characteristic p. The level-n cover has covering group H_n ≅ (Z/m)^r, where
// m is the prime-to-p part of n (the p-part of the root extraction is connected and
// contributes no new points), and its Čech complex with constant coefficients is the
// standard cochain complex of H_n. The construction here builds the Čech differentials
// from the homogeneous fiber-product coordinates and checks the identification against
// the standard complex matrix by matrix, so "can be identified" is executable.
#pragma once

#include "logkfl/abelian.hpp"
#include "logkfl/chain.hpp"
#include "logkfl/coefficients.hpp"
#include "logkfl/config.hpp"

namespace logkfl {

struct LogPointModel {
  int chart_rank = 0;  // rank of the chart's group envelope P^gp ≅ Z^r
  Int residue_char = 0;  // residue characteristic: a prime, or 0

  bool valid() const;
};

// Level-n cover bookkeeping: n = m * p^t with gcd(m, p) = 1.
struct KummerCover {
  LogPointModel base;
  Int level = 1;
  Int m = 1;  // prime-to-p part of the level
  int t = 0;  // p-adic valuation of the level
};

KummerCover kummer_cover(const LogPointModel& model, const Int& n);

// Covering group H_n ≅ (Z/m)^r for m the prime-to-p part of n.
FgAbGroup kummer_group(const LogPointModel& model, const Int& n);

// Čech complex of the level-n cover with constant coefficients. Cochains in degree d
// live on the (d+1)-fold fiber product, which the torsor trivialization identifies with
// H_n^d worth of connected components; faces are computed in those coordinates and the
// resulting complex is asserted equal to standard_complex(kummer_group(model, n), ...).
ChainComplex cech_complex(const LogPointModel& model, const Int& n, const FgAbGroup& coeff,
                          int degree_max);

// Ȟ^i of the level-n cover: cohomology of the standard complex of H_n.
FgAbGroup cech_cohomology(const LogPointModel& model, const Int& n, const FgAbGroup& coeff,
                          int i);

// The map Ȟ^i(level m) → Ȟ^i(level n) for m the prime-to-p part of n. Both levels have
// the same covering group, so the map is the identity; it is checked to be an
// isomorphism before returning. Rejects towers where m is not the prime-to-p part of n.
Homomorphism cech_cohomology_tower_map(const LogPointModel& model, const Int& m, const Int& n,
                                       const FgAbGroup& coeff, int i);

// Colimit over all levels n of Ȟ^i with torsion coefficients: the prime-to-p part of
// the coefficients, twisted by (-i), with multiplicity binomial(r, i). Zero when the
// coefficients are p-primary or when i exceeds r.
SymbolicModule cech_colimit(const LogPointModel& model, const SymbolicModule& coeff, int i);

}  // namespace logkfl
