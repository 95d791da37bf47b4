// JSON serialization for every value the command-line front end reads or emits, plus the
// small shorthand parsers ("Z/6", "(Z/2)^2 + Z", "lattice:1") used on flag arguments.
// Output uses insertion-ordered objects and integers are emitted as JSON numbers while
// they fit in 64 bits and as decimal strings beyond, so identical values always produce
// byte-identical documents. Every parser rejects malformed input with a validation error.
#pragma once

#include <string>

#include "json.hpp"
#include "logkfl/abelian.hpp"
#include "logkfl/calculators.hpp"
#include "logkfl/coefficients.hpp"
#include "logkfl/directimg.hpp"
#include "logkfl/kummer.hpp"
#include "logkfl/snf.hpp"

namespace logkfl {

using Json = nlohmann::ordered_json;

// Scalars.
Json json_of_int(const Int& v);
Int int_of_json(const Json& j);

// Matrices are arrays of row arrays; [] is the 0 x 0 matrix.
Json json_of_matrix(const IntMatrix& m);
IntMatrix matrix_of_json(const Json& j);

// {"rank": r, "torsion": [d1, d2, ...]} with d1 | d2 | ...
Json json_of_group(const FgAbGroup& g);
FgAbGroup group_of_json(const Json& j);

// A symbolic module is a list of terms {"kind", "param", "twist", "mult"}; kinds are
// free_z | finite_cyclic | rational_q | q_mod_z | primary_divisible | prime_to_p.
Json json_of_sym(const SymbolicModule& m);
SymbolicModule sym_of_json(const Json& j);

// {"diag": [...], "rank": k, "D": rows, "U": rows, "Uinv": rows, "V": rows}
Json json_of_smith(const SmithResult& s);
SmithResult smith_of_json(const Json& j);

// {"entries": [sym, ...], "tail_zero": bool}
Json json_of_graded(const GradedModule& m);
GradedModule graded_of_json(const Json& j);

// A cell is {"module": sym} or {"opaque": name}; a table entry is a cell or
// {"extension": {"sub": cell, "quot": cell}}.
Json json_of_cell(const Cell& c);
Cell cell_of_json(const Json& j);
Json json_of_entry(const TableEntry& e);
TableEntry entry_of_json(const Json& j);

// Full calculator output: mode, degrees, exact segments, diagnostics, notes.
Json json_of_table(const CohomologyTable& t);
CohomologyTable table_of_json(const Json& j);

// {"terms": [{"point": label, "module": sym}, ...]}
Json json_of_expr(const DirectImageExpr& e);
DirectImageExpr expr_of_json(const Json& j);

// {"label": ..., "p": residue char, "q": residue field size, "log_rank": ...}
Json json_of_point(const BasePoint& p);
BasePoint point_of_json(const Json& j);

// {"kind": "log_trait" | "dedekind", "generic_char": c, "points": [...]}
Json json_of_base(const BaseDescription& b);
BaseDescription base_of_json(const Json& j);

// {"kind": "finite_l", "l": ..., "group": ..., "frobenius": rows} |
// {"kind": "lattice", "rank": r} | {"kind": "rational", "rank": d}
Json json_of_sheaf(const SheafSpec& f);
SheafSpec sheaf_of_json(const Json& j);

// Parses a JSON document from flag text; validation error on syntax failure.
Json parse_json_text(const std::string& text);

// Shorthand for finitely generated groups: "0", "Z", "Z/6", "Z^2", "(Z/2)^2",
// "Z + Z/2 + Z/4" (whitespace optional, "x" also accepted as the sum separator).
FgAbGroup parse_group_text(const std::string& text);

// Shorthand for symbolic modules: group shorthand plus "Q", "Q/Z", "div:l" (the
// l-divisible atom) and "ptp:p" (prime-to-p Q/Z), each with an optional twist suffix
// "(w)" as in "Z/3(-1)".
SymbolicModule parse_sym_text(const std::string& text);

// Sheaf shorthand: "lattice:r", "rational:d", "zl:l:GROUP" with GROUP in group
// shorthand (e.g. "zl:3:Z/9").
SheafSpec parse_sheaf_text(const std::string& text);

}  // namespace logkfl
