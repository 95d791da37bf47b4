#include "logkfl/abelian.hpp"

#include <algorithm>

#include "logkfl/integers.hpp"

namespace logkfl {

FgAbGroup FgAbGroup::cyclic(const Int& n) {
  if (n < 1) fail(errc::validation, "cyclic group needs n >= 1");
  if (n == 1) return FgAbGroup();
  return FgAbGroup(0, {n});
}

Int FgAbGroup::order() const {
  if (rank > 0) fail(errc::validation, "order of an infinite group");
  Int o = 1;
  for (const Int& d : torsion) o *= d;
  return o;
}

Int FgAbGroup::exponent() const { return torsion.empty() ? Int(1) : torsion.back(); }

std::string FgAbGroup::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  if (rank == 1) s = "Z";
  if (rank > 1) s = "Z^" + std::to_string(rank);
  for (const Int& d : torsion) {
    if (!s.empty()) s += " x ";
    s += "Z/" + d.str();
  }
  return s;
}

FgAbGroup canonical_group(int rank, const std::vector<Int>& moduli) {
  if (rank < 0) fail(errc::validation, "negative rank");
  std::map<Int, std::vector<int>> exps;  // prime -> exponents, one per contributing modulus
  for (const Int& m : moduli) {
    if (m < 0) fail(errc::validation, "negative modulus");
    if (m == 0) {
      ++rank;  // Z/0 = Z
      continue;
    }
    if (m == 1) continue;
    for (const auto& [p, e] : factorize(m)) exps[p].push_back(e);
  }
  std::size_t chain = 0;
  for (auto& [p, es] : exps) {
    std::sort(es.begin(), es.end(), std::greater<int>());
    chain = std::max(chain, es.size());
  }
  // slot t of the descending chain collects the t-th largest power of every prime
  std::vector<Int> factors;
  for (std::size_t t = 0; t < chain; ++t) {
    Int f = 1;
    for (const auto& [p, es] : exps)
      if (t < es.size()) f *= pow_int(p, es[t]);
    factors.push_back(f);
  }
  std::reverse(factors.begin(), factors.end());
  return FgAbGroup(rank, std::move(factors));
}

FgAbGroup group_from_presentation(const IntMatrix& relations, std::size_t generators) {
  if (relations.cols() != generators && relations.rows() != 0)
    fail(errc::validation, "presentation width mismatch");
  if (relations.rows() == 0) return FgAbGroup::free_group(static_cast<int>(generators));
  SmithResult s = smith_normal_form(relations, /*with_transforms=*/false);
  std::vector<Int> tors;
  for (const Int& d : s.diag)
    if (d > 1) tors.push_back(d);
  int rank = static_cast<int>(generators - s.rank);
  return FgAbGroup(rank, std::move(tors));
}

PresentedQuotient presented_quotient(const IntMatrix& relations, std::size_t generators) {
  const std::size_t g = generators;
  IntMatrix rt = (relations.rows() == 0) ? IntMatrix(g, 0) : relations.transpose();
  if (rt.rows() != g) fail(errc::validation, "presentation width mismatch");
  // quotient by the column span of rt; U rt V = D diagonalizes, so the classes of the
  // columns of U^{-1} generate, the t-th with annihilator (d_t).
  SmithResult s = smith_normal_form(rt);
  std::vector<std::size_t> pick_free, pick_tors;
  for (std::size_t t = 0; t < g; ++t) {
    Int d = (t < s.diag.size()) ? s.diag[t] : Int(0);
    if (d == 0)
      pick_free.push_back(t);
    else if (d > 1)
      pick_tors.push_back(t);
  }
  PresentedQuotient out;
  std::vector<Int> tors;
  for (std::size_t t : pick_tors) tors.push_back(s.diag[t]);
  out.group = FgAbGroup(static_cast<int>(pick_free.size()), std::move(tors));

  std::vector<std::size_t> pick = pick_free;
  pick.insert(pick.end(), pick_tors.begin(), pick_tors.end());
  out.gen_vectors = IntMatrix(g, pick.size());
  out.class_coords = IntMatrix(pick.size(), g);
  for (std::size_t j = 0; j < pick.size(); ++j) {
    const std::size_t t = pick[j];
    for (std::size_t i = 0; i < g; ++i) out.gen_vectors(i, j) = s.Uinv(i, t);
    const bool is_tors = j >= pick_free.size();
    for (std::size_t i = 0; i < g; ++i)
      out.class_coords(j, i) = is_tors ? mod_pos(s.U(t, i), s.diag[t]) : s.U(t, i);
  }
  return out;
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Int> m = a.torsion;
  m.insert(m.end(), b.torsion.begin(), b.torsion.end());
  return canonical_group(a.rank + b.rank, m);
}

FgAbGroup tensor_ab(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Int> m;
  for (int i = 0; i < a.rank; ++i) m.insert(m.end(), b.torsion.begin(), b.torsion.end());
  for (int i = 0; i < b.rank; ++i) m.insert(m.end(), a.torsion.begin(), a.torsion.end());
  for (const Int& da : a.torsion)
    for (const Int& db : b.torsion) m.push_back(gcd_int(da, db));
  return canonical_group(a.rank * b.rank, m);
}

FgAbGroup hom_ab(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Int> m;
  for (int i = 0; i < a.rank; ++i) m.insert(m.end(), b.torsion.begin(), b.torsion.end());
  for (const Int& da : a.torsion)
    for (const Int& db : b.torsion) m.push_back(gcd_int(da, db));
  return canonical_group(a.rank * b.rank, m);
}

FgAbGroup exterior_power(const FgAbGroup& g, int i) {
  if (i < 0) fail(errc::validation, "negative exterior power");
  if (!g.is_free()) fail(errc::non_free_group, "exterior power of a non-free group");
  Int b = binomial_int(g.rank, i);
  return FgAbGroup::free_group(static_cast<int>(b));
}

FgAbGroup n_torsion(const FgAbGroup& g, const Int& n) {
  if (n < 1) fail(errc::validation, "n-torsion needs n >= 1");
  std::vector<Int> m;
  for (const Int& d : g.torsion) m.push_back(gcd_int(d, n));
  return canonical_group(0, m);
}

FgAbGroup quotient_by_n(const FgAbGroup& g, const Int& n) {
  if (n < 1) fail(errc::validation, "quotient needs n >= 1");
  std::vector<Int> m;
  for (int i = 0; i < g.rank; ++i) m.push_back(n);
  for (const Int& d : g.torsion) m.push_back(gcd_int(d, n));
  return canonical_group(0, m);
}

FgAbGroup primary_component(const FgAbGroup& g, const Int& p) {
  if (p < 2) fail(errc::validation, "primary component needs a prime");
  std::vector<Int> m;
  for (const Int& d : g.torsion) m.push_back(p_primary_part(d, p));
  return canonical_group(0, m);
}

FgAbGroup prime_to_p_component(const FgAbGroup& g, const Int& p) {
  std::vector<Int> m;
  for (const Int& d : g.torsion) m.push_back(prime_to_p_part(d, p));
  return canonical_group(0, m);
}

TorsionDecomposition torsion_decompose(const FgAbGroup& g) {
  TorsionDecomposition out;
  out.rank = g.rank;
  for (const Int& d : g.torsion)
    for (const auto& [p, e] : factorize(d)) out.primary[p].push_back(pow_int(p, e));
  for (auto& [p, list] : out.primary) std::sort(list.begin(), list.end());
  return out;
}

FgAbGroup recompose(const TorsionDecomposition& d) {
  std::vector<Int> m;
  for (const auto& [p, list] : d.primary) m.insert(m.end(), list.begin(), list.end());
  return canonical_group(d.rank, m);
}

IntMatrix relation_rows(const FgAbGroup& g) {
  IntMatrix r(g.torsion.size(), g.gens());
  for (std::size_t i = 0; i < g.torsion.size(); ++i)
    r(i, static_cast<std::size_t>(g.rank) + i) = g.torsion[i];
  return r;
}

bool Homomorphism::well_defined() const {
  if (matrix.rows() != target.gens() || matrix.cols() != source.gens()) return false;
  for (std::size_t i = 0; i < source.torsion.size(); ++i) {
    const std::size_t c = static_cast<std::size_t>(source.rank) + i;
    const Int& d = source.torsion[i];
    for (std::size_t r = 0; r < target.gens(); ++r) {
      Int v = d * matrix(r, c);
      if (r < static_cast<std::size_t>(target.rank)) {
        if (v != 0) return false;
      } else if (v % target.torsion[r - target.rank] != 0) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Generators of { x in Z^{gens(src)} : F x lies in the relation lattice of tgt },
// returned as columns. This is the preimage of zero at the cocycle level.
IntMatrix preimage_lattice(const IntMatrix& f, const FgAbGroup& tgt) {
  IntMatrix aug = hstack(f, relation_rows(tgt).transpose());
  IntMatrix k = kernel_basis(aug);
  IntMatrix out(f.cols(), k.cols());
  for (std::size_t i = 0; i < f.cols(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) out(i, j) = k(i, j);
  return out;
}

}  // namespace

FgAbGroup Homomorphism::kernel() const {
  IntMatrix pre = preimage_lattice(matrix, target);  // contains the source relations
  // kernel = span(pre) / relations(source); present it over the columns of pre
  IntMatrix rel = preimage_lattice(pre, source).transpose();
  return group_from_presentation(rel, pre.cols());
}

FgAbGroup Homomorphism::image() const {
  IntMatrix pre = preimage_lattice(matrix, target);
  // image = Z^{gens(source)} / preimage-of-zero
  return group_from_presentation(pre.transpose(), source.gens());
}

FgAbGroup Homomorphism::cokernel() const {
  IntMatrix rel = vstack(matrix.transpose(), relation_rows(target));
  return group_from_presentation(rel, target.gens());
}

bool Homomorphism::is_zero_map() const { return image().is_zero(); }

Homomorphism identity_hom(const FgAbGroup& g) {
  return Homomorphism{g, g, IntMatrix::identity(g.gens())};
}

}  // namespace logkfl
