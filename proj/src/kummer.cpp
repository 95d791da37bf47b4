#include "logkfl/kummer.hpp"

#include <cstdint>
#include <vector>

#include "logkfl/barcoh.hpp"
#include "logkfl/errors.hpp"
#include "logkfl/groupcoh.hpp"
#include "logkfl/integers.hpp"

namespace logkfl {

namespace {

void check_model(const LogPointModel& model) {
  if (!model.valid())
    fail(errc::validation, "log point needs chart rank >= 0 and residue characteristic 0 or prime");
}

void check_level(const Int& n) {
  if (n < 1) fail(errc::validation, "cover level must be at least 1");
}

// Big-endian tuple codecs over group elements (first argument slowest), matching the
// coordinate convention of the standard complex.
void decode_be(std::int64_t id, std::int64_t order, int len, std::int64_t* out) {
  for (int j = len - 1; j >= 0; --j) {
    out[j] = id % order;
    id /= order;
  }
}

std::int64_t encode_be(const std::int64_t* digits, std::int64_t order, int len) {
  std::int64_t id = 0;
  for (int j = 0; j < len; ++j) id = id * order + digits[j];
  return id;
}

std::int64_t sub_el(const FiniteAbelianGroup& g, std::int64_t a, std::int64_t b) {
  return g.add(a, g.neg(b));
}

// Differential C^d -> C^{d+1} of the Čech complex of the level cover, in the basis the
// torsor trivialization provides. A cochain assigns a coefficient value to each
// component of the (d+1)-fold fiber product; components are labelled by position tuples
// (p_1, ..., p_d) in H^d (the translation from a chosen base sheet to each later sheet).
// Face j of the (d+2)-fold product forgets sheet j and rebases when j = 0:
//
//   j = 0:           (p_2 - p_1, ..., p_{d+1} - p_1)
//   1 <= j <= d:     (p_1, ..., omit p_j, ..., p_{d+1})
//   j = d + 1:       (p_1, ..., p_d)
//
// The matrix is assembled against the successive-ratio labels g_j = p_j - p_{j-1} used
// by the standard complex, so equality with its differential is a literal matrix check.
SparseIntMatrix cech_differential(const FiniteAbelianGroup& h, int d, std::size_t coeff_gens) {
  const std::int64_t order = h.order;
  const std::size_t ns = static_cast<std::size_t>(tuple_count(h, d));
  const std::size_t nt = static_cast<std::size_t>(tuple_count(h, d + 1));
  SparseIntMatrix out(coeff_gens * nt, coeff_gens * ns);

  std::vector<std::int64_t> ratios(static_cast<std::size_t>(d) + 1);
  std::vector<std::int64_t> pos(static_cast<std::size_t>(d) + 2);  // pos[0] = 0
  std::vector<std::int64_t> fpos(static_cast<std::size_t>(d) + 1);
  std::vector<std::int64_t> fratios(static_cast<std::size_t>(d) + 1);
  for (std::int64_t rid = 0; rid < static_cast<std::int64_t>(nt); ++rid) {
    decode_be(rid, order, d + 1, ratios.data());
    pos[0] = 0;
    for (int j = 1; j <= d + 1; ++j)
      pos[static_cast<std::size_t>(j)] =
          h.add(pos[static_cast<std::size_t>(j) - 1], ratios[static_cast<std::size_t>(j) - 1]);
    std::int64_t sign = 1;
    for (int face = 0; face <= d + 1; ++face, sign = -sign) {
      if (face == 0) {
        for (int j = 1; j <= d; ++j)
          fpos[static_cast<std::size_t>(j)] =
              sub_el(h, pos[static_cast<std::size_t>(j) + 1], pos[1]);
      } else {
        int w = 1;
        for (int j = 1; j <= d + 1; ++j) {
          if (j == face) continue;
          fpos[static_cast<std::size_t>(w++)] = pos[static_cast<std::size_t>(j)];
        }
      }
      std::int64_t prev = 0;
      for (int j = 1; j <= d; ++j) {
        fratios[static_cast<std::size_t>(j) - 1] =
            sub_el(h, fpos[static_cast<std::size_t>(j)], prev);
        prev = fpos[static_cast<std::size_t>(j)];
      }
      const std::int64_t src = encode_be(fratios.data(), order, d);
      for (std::size_t mg = 0; mg < coeff_gens; ++mg)
        out.add(mg * nt + static_cast<std::size_t>(rid),
                static_cast<std::uint32_t>(mg * ns + static_cast<std::size_t>(src)), sign);
    }
  }
  return out;
}

}  // namespace

bool LogPointModel::valid() const {
  return chart_rank >= 0 && (residue_char == 0 || is_prime_int(residue_char));
}

KummerCover kummer_cover(const LogPointModel& model, const Int& n) {
  check_model(model);
  check_level(n);
  KummerCover cover;
  cover.base = model;
  cover.level = n;
  cover.m = prime_to_p_part(n, model.residue_char);
  cover.t = model.residue_char == 0 ? 0 : valuation(n, model.residue_char);
  return cover;
}

FgAbGroup kummer_group(const LogPointModel& model, const Int& n) {
  const KummerCover cover = kummer_cover(model, n);
  std::vector<Int> tor(static_cast<std::size_t>(model.chart_rank), cover.m);
  return canonical_group(0, std::move(tor));
}

ChainComplex cech_complex(const LogPointModel& model, const Int& n, const FgAbGroup& coeff,
                          int degree_max) {
  const FgAbGroup h = kummer_group(model, n);
  ChainComplex standard = standard_complex(h, coeff, degree_max);

  const FiniteAbelianGroup fin = FiniteAbelianGroup::from_group(h);
  ChainComplex cech;
  for (int d = 0; d <= degree_max; ++d) {
    // One copy of the coefficients per connected component of the (d+1)-fold fiber
    // product; the torsor trivialization indexes components by H^d.
    const std::size_t components = static_cast<std::size_t>(tuple_count(fin, d));
    std::vector<Int> tor;
    tor.reserve(coeff.torsion.size() * components);
    for (const Int& t : coeff.torsion) tor.insert(tor.end(), components, t);
    cech.groups.emplace_back(static_cast<int>(static_cast<std::size_t>(coeff.rank) * components),
                             std::move(tor));
  }
  for (int d = 0; d < degree_max; ++d)
    cech.diff.push_back(cech_differential(fin, d, coeff.gens()));

  if (cech.groups != standard.groups || cech.diff != standard.diff)
    fail(errc::validation, "internal error: Čech/standard complex identification failed");
  return cech;
}

FgAbGroup cech_cohomology(const LogPointModel& model, const Int& n, const FgAbGroup& coeff,
                          int i) {
  return cohomology_bruteforce(kummer_group(model, n), coeff, i);
}

Homomorphism cech_cohomology_tower_map(const LogPointModel& model, const Int& m, const Int& n,
                                       const FgAbGroup& coeff, int i) {
  check_model(model);
  check_level(m);
  check_level(n);
  if (i < 0) fail(errc::validation, "degree must be nonnegative");
  if (m != prime_to_p_part(n, model.residue_char))
    fail(errc::bad_tower, "tower step " + m.str() + " -> " + n.str() +
                              " needs the lower level to be the prime-to-p part of the upper");
  // Both levels share the covering group (Z/m)^r, hence the same standard complex; the
  // refinement map is the identity on cohomology.
  const FgAbGroup h = cech_cohomology(model, n, coeff, i);
  Homomorphism map{h, h, IntMatrix::identity(h.gens())};
  if (!map.well_defined() || map.kernel() != FgAbGroup::zero() ||
      map.cokernel() != FgAbGroup::zero())
    fail(errc::validation, "internal error: tower map is not an isomorphism");
  return map;
}

SymbolicModule cech_colimit(const LogPointModel& model, const SymbolicModule& coeff, int i) {
  check_model(model);
  if (i < 1) fail(errc::validation, "colimit formula needs degree >= 1");
  for (const SymbolicTerm& t : coeff.terms)
    if (t.atom.kind == AtomKind::free_z || t.atom.kind == AtomKind::rational_q)
      fail(errc::validation, "colimit formula needs torsion coefficients");
  const Int mult = binomial_int(model.chart_rank, i);
  if (mult == 0) return sym_zero();
  return scale_sym(twist_sym(prime_to_p_sym(coeff, model.residue_char), -i), mult);
}

}  // namespace logkfl
