// Long-exact-sequence calculators over a trait with finite residue field and over a
// Dedekind base with finitely many marked points. The comparison between the two
// topologies is a two-row spectral sequence here (the higher direct images live in a
// single degree over these bases), so every table is assembled from one long exact
// sequence
//
//   ... -> lower^i -> H^i -> upper^{i-q0} -> lower^{i+1} -> ...
//
// with lower = the classical-site row, upper = the Galois cohomology of the direct
// image stalk, and q0 the degree where the direct image sits (1 for finite sheaves,
// 2 for lattices). Degrees where a connecting map cannot be certified zero are reported
// as extension problems or named kernel/cokernel symbols instead of being guessed.
//
// Every calculator runs in one of two modes. Computed mode evaluates all Frobenius
// fixed points and cofixed points exactly. Paper mode zeroes the twisted upper-row
// terms, as the worked examples assert. The two modes disagree exactly when the twist
// acts trivially (l divides q - 1); every disagreement is recorded in the diagnostics
// of both modes, so neither reading silently wins.
#pragma once

#include <string>
#include <vector>

#include "logkfl/coefficients.hpp"
#include "logkfl/config.hpp"
#include "logkfl/directimg.hpp"

namespace logkfl {

// Concrete cohomology row: modules by degree, zero beyond the listed entries when
// tail_zero is set (an unknown tail is only meaningful for opaque rows below).
struct GradedModule {
  std::vector<SymbolicModule> entries;
  bool tail_zero = true;

  SymbolicModule at(int i) const;
  bool all_zero() const;
  bool operator==(const GradedModule& o) const = default;
};

// One table cell: a concrete module or a named symbol we cannot evaluate (an opaque
// étale group, or an uncertified kernel/cokernel inside a sequence).
struct Cell {
  bool opaque = false;
  std::string name;       // set when opaque
  SymbolicModule module;  // set when concrete

  static Cell of(SymbolicModule m);
  static Cell symbol(std::string n);
  bool is_zero() const { return !opaque && module.is_zero(); }
  std::string to_string() const;
  bool operator==(const Cell& o) const = default;
};

// A row whose cells may be opaque; an unknown tail generates symbols from tail_stem
// ("{}" is replaced by the degree).
struct GradedRow {
  std::vector<Cell> cells;
  bool tail_zero = true;
  std::string tail_stem;

  static GradedRow of(const GradedModule& m);
  Cell at(int i) const;
  int last_nonzero() const;  // -1 when all listed cells vanish
};

// A resolved table degree: a single cell, or an unresolved extension
// 0 -> sub -> H -> quot -> 0 (reported, never split by fiat).
struct TableEntry {
  bool extension = false;
  Cell value;
  Cell sub, quot;

  static TableEntry of(Cell c);
  static TableEntry ext(Cell sub, Cell quot);
  bool is_zero() const { return !extension && value.is_zero(); }
  std::string to_string() const;
  bool operator==(const TableEntry& o) const = default;
};

struct LesTerm {
  std::string label;
  TableEntry entry;

  bool operator==(const LesTerm& o) const = default;
};

// A fragment of the assembled long exact sequence. closed_left / closed_right say the
// fragment is bounded by genuine zeros on that side, so a fully closed fragment with
// finite entries must have alternating-order product one.
struct ExactSegment {
  std::vector<LesTerm> terms;
  bool closed_left = true;
  bool closed_right = true;

  bool operator==(const ExactSegment& o) const = default;
};

// A disagreement between computed Frobenius arithmetic and a stated vanishing claim.
// The same diagnostics are attached in both modes.
struct Diagnostic {
  int degree = 0;
  std::string term;
  SymbolicModule computed;
  SymbolicModule paper_claimed;

  bool operator==(const Diagnostic& o) const = default;
};

enum class CalcMode { computed, paper };

struct CohomologyTable {
  CalcMode mode = CalcMode::computed;
  std::vector<TableEntry> degrees;
  bool tail_zero = true;
  std::vector<ExactSegment> segments;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> notes;
};

// Galois cohomology of the profinite completion of the integers acting through the
// Frobenius. Rows have degrees 0..2 and zero tail.
//
// Explicit-module form: finite modules go through the kernel/cokernel of
// (q^w * frobenius - 1); a free module with trivial action gets the classical row
// (Z^r, 0, (Q/Z)^r).
GradedModule zhat_cohomology(const ZhatModule& m);

// Symbolic form, trivial Galois action on the underlying group, Tate twists acting by
// powers of q. Supported terms: Z and Q untwisted, Z/n with any twist, Q/Z untwisted,
// the l-divisible and prime-to-p divisible atoms with any twist. Twisted lattices,
// twisted rational spaces and twisted full Q/Z are rejected as unsupported.
GradedModule zhat_cohomology(const SymbolicModule& m, const Int& q);

// Stems for the sequence labels; "{}" is replaced by the degree.
struct LerayLabels {
  std::string lower = "lower^{}";
  std::string total = "H^{}";
  std::string upper = "upper^{}";
};

// Assembles the two-row long exact sequence with the upper row in degree q0 (1 or 2).
// Degrees below q0 copy the lower row. A degree resolves to a single cell when one side
// vanishes; it becomes an extension problem when both sides survive with certified-zero
// connecting maps (a vanishing neighbor certifies, as does connecting_zero); a side
// whose connecting map cannot be certified turns into a named kernel/cokernel symbol.
// The lower row may be opaque with an unknown tail; the upper row must be a known row
// with zero tail, else the rows are malformed.
CohomologyTable leray_two_row(const GradedRow& lower, const GradedRow& upper, int q0,
                              bool connecting_zero, const LerayLabels& labels = {});
CohomologyTable leray_two_row(const GradedModule& lower, const GradedModule& upper, int q0,
                              bool connecting_zero, const LerayLabels& labels = {});

// Cohomology table of a trait whose closed point has residue field of size q, for the
// three sheaf classes. Lower row: Galois cohomology of the sheaf. Upper row: Galois
// cohomology of the direct-image stalk (degree 1 for finite sheaves away from the
// residue characteristic, degree 2 for lattices). Paper mode zeroes the upper row.
CohomologyTable dvr_calculator(const Int& q, const SheafSpec& f, CalcMode mode);

// Relation between the two topologies over a Dedekind base with marked points S, all
// with finite residue fields. The classical row is opaque input (labels per degree,
// generated when absent); the Galois terms at the marked points are computed. Reports
// the connecting sequence and the degrees where the rows agree.
CohomologyTable dedekind_calculator(const std::vector<BasePoint>& points, const SheafSpec& f,
                                    const std::vector<std::string>& etale_labels, CalcMode mode);

}  // namespace logkfl
