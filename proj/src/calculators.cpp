#include "logkfl/calculators.hpp"

#include <algorithm>
#include <utility>

#include "logkfl/errors.hpp"
#include "logkfl/integers.hpp"

namespace logkfl {

namespace {

std::string subst(const std::string& stem, int i) {
  const auto pos = stem.find("{}");
  if (pos == std::string::npos) return stem + std::to_string(i);
  return stem.substr(0, pos) + std::to_string(i) + stem.substr(pos + 2);
}

Int require_prime_power(const Int& q) {
  if (q < 2) fail(errc::validation, "residue field size must be at least 2");
  const auto fac = factorize(q);
  if (fac.size() != 1) fail(errc::validation, "residue field size must be a prime power");
  return fac.begin()->first;
}

GradedModule zero_row() {
  GradedModule row;
  row.entries.assign(3, sym_zero());
  return row;
}

void add_at(GradedModule& row, int i, const SymbolicModule& m) {
  row.entries[static_cast<std::size_t>(i)] =
      direct_sum_sym(row.entries[static_cast<std::size_t>(i)], m);
}

GradedModule row_sum(const GradedModule& a, const GradedModule& b) {
  GradedModule out = zero_row();
  for (int i = 0; i < 3; ++i) add_at(out, i, direct_sum_sym(a.at(i), b.at(i)));
  return out;
}

// Fixed and cofixed points of the q^w-scaled Frobenius on one finite cyclic factor.
std::pair<FgAbGroup, FgAbGroup> cyclic_frobenius(const Int& n, int w, const Int& q) {
  ZhatModule zm{FgAbGroup::cyclic(n), IntMatrix::identity(n == 1 ? 0 : 1), w, q};
  const FrobKerCoker kc = frobenius_kernel_cokernel(zm);
  return {kc.h0, kc.h1};
}

}  // namespace

SymbolicModule GradedModule::at(int i) const {
  if (i < 0) return sym_zero();
  if (i < static_cast<int>(entries.size())) return entries[static_cast<std::size_t>(i)];
  if (!tail_zero) fail(errc::malformed_rows, "row value requested past an unknown tail");
  return sym_zero();
}

bool GradedModule::all_zero() const {
  for (const SymbolicModule& m : entries)
    if (!m.is_zero()) return false;
  return true;
}

Cell Cell::of(SymbolicModule m) {
  Cell c;
  c.module = std::move(m);
  return c;
}

Cell Cell::symbol(std::string n) {
  Cell c;
  c.opaque = true;
  c.name = std::move(n);
  return c;
}

std::string Cell::to_string() const { return opaque ? name : module.to_string(); }

GradedRow GradedRow::of(const GradedModule& m) {
  GradedRow row;
  row.tail_zero = m.tail_zero;
  row.cells.reserve(m.entries.size());
  for (const SymbolicModule& e : m.entries) row.cells.push_back(Cell::of(e));
  return row;
}

Cell GradedRow::at(int i) const {
  if (i < 0) return Cell::of(sym_zero());
  if (i < static_cast<int>(cells.size())) return cells[static_cast<std::size_t>(i)];
  if (tail_zero) return Cell::of(sym_zero());
  if (tail_stem.empty()) fail(errc::malformed_rows, "row has an unknown unnamed tail");
  return Cell::symbol(subst(tail_stem, i));
}

int GradedRow::last_nonzero() const {
  int last = -1;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i)
    if (!cells[static_cast<std::size_t>(i)].is_zero()) last = i;
  return last;
}

TableEntry TableEntry::of(Cell c) {
  TableEntry e;
  e.value = std::move(c);
  return e;
}

TableEntry TableEntry::ext(Cell sub, Cell quot) {
  TableEntry e;
  e.extension = true;
  e.sub = std::move(sub);
  e.quot = std::move(quot);
  return e;
}

std::string TableEntry::to_string() const {
  if (!extension) return value.to_string();
  return "extension of " + quot.to_string() + " by " + sub.to_string();
}

GradedModule zhat_cohomology(const ZhatModule& m) {
  if (!m.group.is_finite()) {
    // Validates the free-trivial shape (and reports H0 = group, H1 = 0); the row is the
    // classical one, with the connecting degree-two term from 0 -> Z -> Q -> Q/Z -> 0.
    frobenius_kernel_cokernel(m);
    GradedModule row = zero_row();
    row.entries[0] = sym_from_group(m.group);
    row.entries[2] = scale_sym(sym_qmodz(), m.group.rank);
    return row;
  }
  const FrobKerCoker kc = frobenius_kernel_cokernel(m);
  GradedModule row = zero_row();
  row.entries[0] = sym_from_group(kc.h0);
  row.entries[1] = sym_from_group(kc.h1);
  return row;
}

GradedModule zhat_cohomology(const SymbolicModule& m, const Int& q) {
  require_prime_power(q);
  GradedModule row = zero_row();
  for (const SymbolicTerm& t : m.terms) {
    const int w = t.atom.twist;
    switch (t.atom.kind) {
      case AtomKind::free_z:
        if (w != 0) fail(errc::unsupported_module, "twisted lattice over the Galois group");
        add_at(row, 0, sym_atom(t.atom, t.mult));
        add_at(row, 2, scale_sym(sym_qmodz(), t.mult));
        break;
      case AtomKind::rational_q:
        if (w != 0) fail(errc::unsupported_module, "twisted rational space over the Galois group");
        add_at(row, 0, sym_atom(t.atom, t.mult));
        break;
      case AtomKind::finite_cyclic: {
        const auto [h0, h1] = cyclic_frobenius(t.atom.param, w, q);
        add_at(row, 0, scale_sym(sym_from_group(h0), t.mult));
        add_at(row, 1, scale_sym(sym_from_group(h1), t.mult));
        break;
      }
      case AtomKind::q_mod_z:
        if (w != 0) fail(errc::unsupported_module, "twisted full divisible group");
        add_at(row, 0, sym_atom(t.atom, t.mult));
        add_at(row, 1, sym_atom(t.atom, t.mult));
        break;
      case AtomKind::primary_divisible: {
        const Int l = t.atom.param;
        if (w == 0) {
          add_at(row, 0, sym_atom(t.atom, t.mult));
          add_at(row, 1, sym_atom(t.atom, t.mult));
          break;
        }
        if (w < 0 && q % l == 0)
          fail(errc::non_invertible_twist,
               "negative twist with q = " + q.str() + " on the " + l.str() + "-divisible group");
        const int v = valuation(pow_int(q, static_cast<unsigned>(w < 0 ? -w : w)) - 1, l);
        add_at(row, 0, sym_cyclic(pow_int(l, static_cast<unsigned>(v)), 0, t.mult));
        break;
      }
      case AtomKind::prime_to_p: {
        const Int p = t.atom.param;
        if (w == 0) {
          add_at(row, 0, sym_atom(t.atom, t.mult));
          add_at(row, 1, sym_atom(t.atom, t.mult));
          break;
        }
        if (w < 0 && prime_to_p_part(q, p) != 1)
          fail(errc::non_invertible_twist,
               "negative twist with q = " + q.str() + " on the prime-to-" + p.str() +
                   " divisible group");
        const Int n = prime_to_p_part(pow_int(q, static_cast<unsigned>(w < 0 ? -w : w)) - 1, p);
        add_at(row, 0, sym_cyclic(n, 0, t.mult));
        break;
      }
    }
  }
  return row;
}

CohomologyTable leray_two_row(const GradedRow& lower, const GradedRow& upper, int q0,
                              bool connecting_zero, const LerayLabels& labels) {
  if (q0 != 1 && q0 != 2) fail(errc::malformed_rows, "upper row degree must be 1 or 2");
  if (!upper.tail_zero) fail(errc::malformed_rows, "upper row needs a known zero tail");
  if (!lower.tail_zero && lower.tail_stem.empty())
    fail(errc::malformed_rows, "lower row has an unknown unnamed tail");

  const int nl = static_cast<int>(lower.cells.size());
  const int nu = static_cast<int>(upper.cells.size());
  const int nbase = std::max(q0, nu - 1 + q0);
  const int top = lower.tail_zero ? std::max(nbase, nl - 1) : nbase + 1;

  const Cell zero = Cell::of(sym_zero());
  CohomologyTable out;
  out.tail_zero = lower.tail_zero;

  for (int i = 0; i <= top; ++i) {
    if (i < q0) {
      out.degrees.push_back(TableEntry::of(lower.at(i)));
      continue;
    }
    const Cell a = lower.at(i);
    const Cell b = upper.at(i - q0);
    const Cell inc = upper.at(i - q0 - 1);  // source of the connecting map into lower^i
    const Cell dst = lower.at(i + 1);       // target of the connecting map out of b
    Cell sub = zero;
    if (!a.is_zero())
      sub = (connecting_zero || inc.is_zero())
                ? a
                : Cell::symbol("coker(" + subst(labels.upper, i - q0 - 1) + " -> " +
                               subst(labels.lower, i) + ")");
    Cell quot = zero;
    if (!b.is_zero())
      quot = (connecting_zero || dst.is_zero())
                 ? b
                 : Cell::symbol("ker(" + subst(labels.upper, i - q0) + " -> " +
                                subst(labels.lower, i + 1) + ")");
    if (sub.is_zero())
      out.degrees.push_back(TableEntry::of(quot));
    else if (quot.is_zero())
      out.degrees.push_back(TableEntry::of(sub));
    else
      out.degrees.push_back(TableEntry::ext(sub, quot));
  }

  // One pass down the long exact sequence, cut into zero-delimited fragments.
  ExactSegment cur;
  auto flush = [&](bool closed_right) {
    if (cur.terms.empty()) return;
    cur.closed_right = closed_right;
    out.segments.push_back(cur);
    cur = ExactSegment{};
  };
  auto push = [&](std::string label, TableEntry entry) {
    if (entry.is_zero()) {
      flush(true);
      return;
    }
    cur.terms.push_back(LesTerm{std::move(label), std::move(entry)});
  };
  for (int i = q0; i <= top; ++i) {
    push(subst(labels.lower, i), TableEntry::of(lower.at(i)));
    push(subst(labels.total, i), out.degrees[static_cast<std::size_t>(i)]);
    push(subst(labels.upper, i - q0), TableEntry::of(upper.at(i - q0)));
  }
  flush(lower.tail_zero && lower.at(top + 1).is_zero());
  return out;
}

CohomologyTable leray_two_row(const GradedModule& lower, const GradedModule& upper, int q0,
                              bool connecting_zero, const LerayLabels& labels) {
  return leray_two_row(GradedRow::of(lower), GradedRow::of(upper), q0, connecting_zero, labels);
}

CohomologyTable dvr_calculator(const Int& q, const SheafSpec& f, CalcMode mode) {
  const Int p = require_prime_power(q);
  validate_sheaf(f);

  const BasePoint x{"x", p, q, 1};
  const BaseDescription base{BaseKind::log_trait, {x}, 0};

  GradedModule lower;
  GradedModule upper_computed;  // empty row = no upper terms at all
  int q0 = 1;
  std::string stalk_name = "0";
  switch (f.kind) {
    case SheafClass::rational_space:
      lower = zhat_cohomology(sym_rational(f.rank), q);
      break;
    case SheafClass::finite_l_group: {
      const IntMatrix frob =
          f.has_frobenius() ? f.frobenius : IntMatrix::identity(f.group.gens());
      lower = zhat_cohomology(ZhatModule{f.group, frob, 0, q});
      const SymbolicModule stalk =
          stalk_on_strict_site(higher_direct_image(base, f, 1), x);
      if (!stalk.is_zero()) {
        stalk_name = stalk.to_string();
        upper_computed = f.has_frobenius()
                             ? zhat_cohomology(ZhatModule{f.group, frob, -1, q})
                             : zhat_cohomology(stalk, q);
      }
      break;
    }
    case SheafClass::lattice: {
      q0 = 2;
      lower = zhat_cohomology(sym_free(f.rank), q);
      const SymbolicModule stalk =
          stalk_on_strict_site(higher_direct_image(base, f, 2), x);
      if (!stalk.is_zero()) {
        stalk_name = stalk.to_string();
        upper_computed = zhat_cohomology(stalk, q);
      }
      break;
    }
  }

  // Two-row sanity: every other higher direct image must vanish over this base.
  for (int i = 1; i <= vanishing_degree(base, f); ++i)
    if (i != q0 && !higher_direct_image(base, f, i).is_zero())
      fail(errc::validation, "internal error: more than one higher row over the trait");

  const LerayLabels labels{"H^{}_fl(X, F)", "H^{}_kfl(X, F)",
                           "H^{}(Gal(k^s/k), " + stalk_name + ")"};
  // Paper mode zeroes the upper-row values but keeps the row shape, so the two modes
  // always emit tables of the same length.
  GradedModule upper_used = upper_computed;
  if (mode == CalcMode::paper)
    for (SymbolicModule& e : upper_used.entries) e = sym_zero();
  CohomologyTable out =
      leray_two_row(GradedRow::of(lower), GradedRow::of(upper_used), q0, false, labels);
  out.mode = mode;
  for (int u = 0; u < static_cast<int>(upper_computed.entries.size()); ++u) {
    const SymbolicModule& val = upper_computed.entries[static_cast<std::size_t>(u)];
    if (!val.is_zero())
      out.diagnostics.push_back(Diagnostic{u, subst(labels.upper, u), val, sym_zero()});
  }
  return out;
}

CohomologyTable dedekind_calculator(const std::vector<BasePoint>& points, const SheafSpec& f,
                                    const std::vector<std::string>& etale_labels,
                                    CalcMode mode) {
  validate_sheaf(f);
  if (f.has_frobenius())
    fail(errc::validation, "the Dedekind calculator needs a constant sheaf");
  for (const BasePoint& x : points) {
    if (x.residue_field_size == 0)
      fail(errc::non_finite_residue_field,
           "marked point " + x.label + " needs a finite residue field");
    if (x.log_rank != 1)
      fail(errc::validation, "marked points must have log rank one for the calculators");
  }
  const BaseDescription base{BaseKind::dedekind_with_s, points, 0};
  validate_base(base);

  const int q0 = f.kind == SheafClass::lattice ? 2 : 1;
  GradedModule upper_computed = zero_row();
  std::vector<Diagnostic> diags;
  if (f.kind != SheafClass::rational_space) {
    const DirectImageExpr expr = higher_direct_image(base, f, q0);
    for (const BasePoint& x : points) {
      const SymbolicModule stalk = stalk_on_strict_site(expr, x);
      if (stalk.is_zero()) continue;
      const GradedModule row = zhat_cohomology(stalk, x.residue_field_size);
      for (int u = 0; u < static_cast<int>(row.entries.size()); ++u) {
        const SymbolicModule& val = row.entries[static_cast<std::size_t>(u)];
        if (!val.is_zero())
          diags.push_back(Diagnostic{
              u, "H^" + std::to_string(u) + "(Gamma_" + x.label + ", " + stalk.to_string() + ")",
              val, sym_zero()});
      }
      upper_computed = row_sum(upper_computed, row);
    }
    for (int i = 1; i <= vanishing_degree(base, f); ++i)
      if (i != q0 && !higher_direct_image(base, f, i).is_zero())
        fail(errc::validation, "internal error: more than one higher row over the base");
  }

  GradedRow lower;
  lower.tail_zero = false;
  lower.tail_stem = "H^{}_et(X, F)";
  for (const std::string& name : etale_labels)
    lower.cells.push_back(Cell::symbol(
        name.empty() ? subst(lower.tail_stem, static_cast<int>(lower.cells.size())) : name));

  const LerayLabels labels{"H^{}_et(X, F)", "H^{}_kfl(X, F)", "sum_x H^{}(Gamma_x, R)"};
  GradedModule upper_used = upper_computed;
  if (mode == CalcMode::paper)
    for (SymbolicModule& e : upper_used.entries) e = sym_zero();
  CohomologyTable out = leray_two_row(lower, GradedRow::of(upper_used), q0, false, labels);
  out.mode = mode;
  out.diagnostics = std::move(diags);
  if (upper_used.all_zero()) {
    out.notes.push_back("H^i_kfl(X, F) = H^i_et(X, F) for all i >= 0");
  } else {
    int last = 0;
    for (int u = 0; u < static_cast<int>(upper_used.entries.size()); ++u)
      if (!upper_used.entries[static_cast<std::size_t>(u)].is_zero()) last = u;
    out.notes.push_back("H^i_kfl(X, F) = H^i_et(X, F) for i >= " +
                        std::to_string(last + q0 + 2));
  }
  return out;
}

}  // namespace logkfl
