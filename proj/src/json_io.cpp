#include "logkfl/json_io.hpp"

#include <cctype>
#include <cstdint>
#include <limits>

namespace logkfl {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(errc::validation, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string string_of_json(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int small_int_of_json(const Json& j, const char* what) {
  Int v = int_of_json(j);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    bad(std::string(what) + " out of range");
  return static_cast<int>(v);
}

}  // namespace

Json json_of_int(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

Int int_of_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty()) bad("empty integer literal");
    std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) bad("malformed integer literal");
    for (; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) bad("malformed integer literal");
    return Int(s);
  }
  bad("expected an integer");
}

Json json_of_matrix(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(json_of_int(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_of_json(const Json& j) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  if (j.empty()) return IntMatrix();
  if (!j[0].is_array()) bad("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = int_of_json(j[i][k]);
  }
  return m;
}

Json json_of_group(const FgAbGroup& g) {
  Json out = Json::object();
  out["rank"] = g.rank;
  Json tor = Json::array();
  for (const Int& d : g.torsion) tor.push_back(json_of_int(d));
  out["torsion"] = std::move(tor);
  return out;
}

FgAbGroup group_of_json(const Json& j) {
  const int rank = small_int_of_json(field(j, "rank"), "rank");
  const Json& tor = field(j, "torsion");
  if (!tor.is_array()) bad("torsion must be an array");
  std::vector<Int> moduli;
  for (const Json& d : tor) moduli.push_back(int_of_json(d));
  if (rank < 0) bad("rank must be nonnegative");
  return canonical_group(rank, moduli);
}

namespace {

const char* kind_name(AtomKind k) {
  switch (k) {
    case AtomKind::free_z: return "free_z";
    case AtomKind::finite_cyclic: return "finite_cyclic";
    case AtomKind::rational_q: return "rational_q";
    case AtomKind::q_mod_z: return "q_mod_z";
    case AtomKind::primary_divisible: return "primary_divisible";
    case AtomKind::prime_to_p: return "prime_to_p";
  }
  bad("unknown atom kind");
}

AtomKind kind_of_name(const std::string& s) {
  if (s == "free_z") return AtomKind::free_z;
  if (s == "finite_cyclic") return AtomKind::finite_cyclic;
  if (s == "rational_q") return AtomKind::rational_q;
  if (s == "q_mod_z") return AtomKind::q_mod_z;
  if (s == "primary_divisible") return AtomKind::primary_divisible;
  if (s == "prime_to_p") return AtomKind::prime_to_p;
  bad("unknown atom kind \"" + s + "\"");
}

}  // namespace

Json json_of_sym(const SymbolicModule& m) {
  Json out = Json::array();
  for (const SymbolicTerm& t : m.terms) {
    Json term = Json::object();
    term["kind"] = kind_name(t.atom.kind);
    term["param"] = json_of_int(t.atom.param);
    term["twist"] = t.atom.twist;
    term["mult"] = json_of_int(t.mult);
    out.push_back(std::move(term));
  }
  return out;
}

SymbolicModule sym_of_json(const Json& j) {
  if (!j.is_array()) bad("symbolic module must be an array of terms");
  SymbolicModule out;
  for (const Json& term : j) {
    CoeffAtom a;
    a.kind = kind_of_name(string_of_json(field(term, "kind"), "kind"));
    a.param = int_of_json(field(term, "param"));
    a.twist = small_int_of_json(field(term, "twist"), "twist");
    out = direct_sum_sym(out, sym_atom(a, int_of_json(field(term, "mult"))));
  }
  return out;
}

Json json_of_smith(const SmithResult& s) {
  Json out = Json::object();
  Json diag = Json::array();
  for (const Int& d : s.diag) diag.push_back(json_of_int(d));
  out["diag"] = std::move(diag);
  out["rank"] = s.rank;
  out["D"] = json_of_matrix(s.D);
  out["U"] = json_of_matrix(s.U);
  out["Uinv"] = json_of_matrix(s.Uinv);
  out["V"] = json_of_matrix(s.V);
  return out;
}

SmithResult smith_of_json(const Json& j) {
  SmithResult s;
  const Json& diag = field(j, "diag");
  if (!diag.is_array()) bad("diag must be an array");
  for (const Json& d : diag) s.diag.push_back(int_of_json(d));
  Int rank = int_of_json(field(j, "rank"));
  if (rank < 0 || rank > Int(s.diag.size())) bad("rank out of range");
  s.rank = static_cast<std::size_t>(rank);
  s.D = matrix_of_json(field(j, "D"));
  s.U = matrix_of_json(field(j, "U"));
  s.Uinv = matrix_of_json(field(j, "Uinv"));
  s.V = matrix_of_json(field(j, "V"));
  return s;
}

Json json_of_graded(const GradedModule& m) {
  Json out = Json::object();
  Json entries = Json::array();
  for (const SymbolicModule& e : m.entries) entries.push_back(json_of_sym(e));
  out["entries"] = std::move(entries);
  out["tail_zero"] = m.tail_zero;
  return out;
}

GradedModule graded_of_json(const Json& j) {
  GradedModule m;
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) bad("entries must be an array");
  for (const Json& e : entries) m.entries.push_back(sym_of_json(e));
  const Json& tz = field(j, "tail_zero");
  if (!tz.is_boolean()) bad("tail_zero must be a boolean");
  m.tail_zero = tz.get<bool>();
  return m;
}

Json json_of_cell(const Cell& c) {
  Json out = Json::object();
  if (c.opaque)
    out["opaque"] = c.name;
  else
    out["module"] = json_of_sym(c.module);
  return out;
}

Cell cell_of_json(const Json& j) {
  if (!j.is_object()) bad("cell must be an object");
  if (j.contains("opaque")) return Cell::symbol(string_of_json(j.at("opaque"), "opaque"));
  return Cell::of(sym_of_json(field(j, "module")));
}

Json json_of_entry(const TableEntry& e) {
  if (!e.extension) return json_of_cell(e.value);
  Json ext = Json::object();
  ext["sub"] = json_of_cell(e.sub);
  ext["quot"] = json_of_cell(e.quot);
  Json out = Json::object();
  out["extension"] = std::move(ext);
  return out;
}

TableEntry entry_of_json(const Json& j) {
  if (!j.is_object()) bad("table entry must be an object");
  if (j.contains("extension")) {
    const Json& ext = j.at("extension");
    return TableEntry::ext(cell_of_json(field(ext, "sub")), cell_of_json(field(ext, "quot")));
  }
  return TableEntry::of(cell_of_json(j));
}

Json json_of_table(const CohomologyTable& t) {
  Json out = Json::object();
  out["mode"] = t.mode == CalcMode::computed ? "computed" : "paper";
  Json degrees = Json::array();
  for (const TableEntry& e : t.degrees) degrees.push_back(json_of_entry(e));
  out["degrees"] = std::move(degrees);
  out["tail_zero"] = t.tail_zero;
  Json segments = Json::array();
  for (const ExactSegment& s : t.segments) {
    Json seg = Json::object();
    seg["closed_left"] = s.closed_left;
    seg["closed_right"] = s.closed_right;
    Json terms = Json::array();
    for (const LesTerm& term : s.terms) {
      Json lt = Json::object();
      lt["label"] = term.label;
      lt["entry"] = json_of_entry(term.entry);
      terms.push_back(std::move(lt));
    }
    seg["terms"] = std::move(terms);
    segments.push_back(std::move(seg));
  }
  out["segments"] = std::move(segments);
  Json diagnostics = Json::array();
  for (const Diagnostic& d : t.diagnostics) {
    Json dj = Json::object();
    dj["degree"] = d.degree;
    dj["term"] = d.term;
    dj["computed"] = json_of_sym(d.computed);
    dj["paper_claimed"] = json_of_sym(d.paper_claimed);
    diagnostics.push_back(std::move(dj));
  }
  out["diagnostics"] = std::move(diagnostics);
  out["notes"] = t.notes;
  return out;
}

CohomologyTable table_of_json(const Json& j) {
  CohomologyTable t;
  const std::string mode = string_of_json(field(j, "mode"), "mode");
  if (mode == "computed")
    t.mode = CalcMode::computed;
  else if (mode == "paper")
    t.mode = CalcMode::paper;
  else
    bad("mode must be \"computed\" or \"paper\"");
  const Json& degrees = field(j, "degrees");
  if (!degrees.is_array()) bad("degrees must be an array");
  for (const Json& e : degrees) t.degrees.push_back(entry_of_json(e));
  const Json& tz = field(j, "tail_zero");
  if (!tz.is_boolean()) bad("tail_zero must be a boolean");
  t.tail_zero = tz.get<bool>();
  const Json& segments = field(j, "segments");
  if (!segments.is_array()) bad("segments must be an array");
  for (const Json& sj : segments) {
    ExactSegment s;
    const Json& cl = field(sj, "closed_left");
    const Json& cr = field(sj, "closed_right");
    if (!cl.is_boolean() || !cr.is_boolean()) bad("segment flags must be booleans");
    s.closed_left = cl.get<bool>();
    s.closed_right = cr.get<bool>();
    const Json& terms = field(sj, "terms");
    if (!terms.is_array()) bad("segment terms must be an array");
    for (const Json& tj : terms)
      s.terms.push_back(LesTerm{string_of_json(field(tj, "label"), "label"),
                                entry_of_json(field(tj, "entry"))});
    t.segments.push_back(std::move(s));
  }
  const Json& diagnostics = field(j, "diagnostics");
  if (!diagnostics.is_array()) bad("diagnostics must be an array");
  for (const Json& dj : diagnostics) {
    Diagnostic d;
    d.degree = small_int_of_json(field(dj, "degree"), "degree");
    d.term = string_of_json(field(dj, "term"), "term");
    d.computed = sym_of_json(field(dj, "computed"));
    d.paper_claimed = sym_of_json(field(dj, "paper_claimed"));
    t.diagnostics.push_back(std::move(d));
  }
  const Json& notes = field(j, "notes");
  if (!notes.is_array()) bad("notes must be an array");
  for (const Json& n : notes) t.notes.push_back(string_of_json(n, "note"));
  return t;
}

Json json_of_expr(const DirectImageExpr& e) {
  Json terms = Json::array();
  for (const SkyscraperTerm& t : e.terms) {
    Json tj = Json::object();
    tj["point"] = t.point;
    tj["module"] = json_of_sym(t.module);
    terms.push_back(std::move(tj));
  }
  Json out = Json::object();
  out["terms"] = std::move(terms);
  return out;
}

DirectImageExpr expr_of_json(const Json& j) {
  DirectImageExpr e;
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) bad("terms must be an array");
  for (const Json& tj : terms)
    e.terms.push_back(SkyscraperTerm{string_of_json(field(tj, "point"), "point"),
                                     sym_of_json(field(tj, "module"))});
  return e;
}

Json json_of_point(const BasePoint& p) {
  Json out = Json::object();
  out["label"] = p.label;
  out["p"] = json_of_int(p.residue_char);
  out["q"] = json_of_int(p.residue_field_size);
  out["log_rank"] = p.log_rank;
  return out;
}

BasePoint point_of_json(const Json& j) {
  BasePoint p;
  p.label = string_of_json(field(j, "label"), "label");
  p.residue_char = int_of_json(field(j, "p"));
  p.residue_field_size = j.contains("q") ? int_of_json(j.at("q")) : Int(0);
  p.log_rank = j.contains("log_rank") ? small_int_of_json(j.at("log_rank"), "log_rank") : 1;
  return p;
}

Json json_of_base(const BaseDescription& b) {
  Json out = Json::object();
  out["kind"] = b.kind == BaseKind::log_trait ? "log_trait" : "dedekind";
  out["generic_char"] = json_of_int(b.generic_char);
  Json points = Json::array();
  for (const BasePoint& p : b.points) points.push_back(json_of_point(p));
  out["points"] = std::move(points);
  return out;
}

BaseDescription base_of_json(const Json& j) {
  BaseDescription b;
  const std::string kind = string_of_json(field(j, "kind"), "kind");
  if (kind == "log_trait")
    b.kind = BaseKind::log_trait;
  else if (kind == "dedekind")
    b.kind = BaseKind::dedekind_with_s;
  else
    bad("base kind must be \"log_trait\" or \"dedekind\"");
  b.generic_char = j.contains("generic_char") ? int_of_json(j.at("generic_char")) : Int(0);
  const Json& points = field(j, "points");
  if (!points.is_array()) bad("points must be an array");
  for (const Json& pj : points) b.points.push_back(point_of_json(pj));
  return b;
}

Json json_of_sheaf(const SheafSpec& f) {
  Json out = Json::object();
  switch (f.kind) {
    case SheafClass::finite_l_group:
      out["kind"] = "finite_l";
      out["l"] = json_of_int(f.l);
      out["group"] = json_of_group(f.group);
      if (f.has_frobenius()) out["frobenius"] = json_of_matrix(f.frobenius);
      break;
    case SheafClass::lattice:
      out["kind"] = "lattice";
      out["rank"] = f.rank;
      break;
    case SheafClass::rational_space:
      out["kind"] = "rational";
      out["rank"] = f.rank;
      break;
  }
  return out;
}

SheafSpec sheaf_of_json(const Json& j) {
  const std::string kind = string_of_json(field(j, "kind"), "kind");
  if (kind == "finite_l") {
    Int l = int_of_json(field(j, "l"));
    FgAbGroup g = group_of_json(field(j, "group"));
    if (j.contains("frobenius"))
      return SheafSpec::finite_l_with_frobenius(l, g, matrix_of_json(j.at("frobenius")));
    return SheafSpec::finite_l(l, g);
  }
  if (kind == "lattice") return SheafSpec::lattice(small_int_of_json(field(j, "rank"), "rank"));
  if (kind == "rational") return SheafSpec::rational(small_int_of_json(field(j, "rank"), "rank"));
  bad("sheaf kind must be \"finite_l\", \"lattice\" or \"rational\"");
}

Json parse_json_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON document");
  return j;
}

namespace {

// Recursive-descent shorthand parser shared by the group and symbolic readers.
struct ShorthandParser {
  const std::string& s;
  std::size_t pos = 0;
  bool symbolic;  // whether Q, Q/Z, div:, ptp: atoms are admitted

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool eat_word(const char* w) {
    skip_ws();
    std::size_t n = std::string(w).size();
    if (s.compare(pos, n, w) == 0) {
      pos += n;
      return true;
    }
    return false;
  }

  Int number() {
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) bad("expected a number in \"" + s + "\"");
    Int v(s.substr(start, pos - start));
    return neg ? Int(-v) : v;
  }

  int exponent_suffix() {
    if (!eat('^')) return 1;
    Int e = number();
    if (e < 0 || e > 64) bad("exponent out of range in \"" + s + "\"");
    return static_cast<int>(e);
  }

  int twist_suffix() {
    skip_ws();
    if (pos >= s.size() || s[pos] != '(') return 0;
    ++pos;
    Int w = number();
    if (!eat(')')) bad("unterminated twist in \"" + s + "\"");
    if (w < -1000 || w > 1000) bad("twist out of range in \"" + s + "\"");
    return static_cast<int>(w);
  }

  SymbolicModule atom() {
    skip_ws();
    if (eat('(')) {
      SymbolicModule inner = sum();
      if (!eat(')')) bad("unbalanced parentheses in \"" + s + "\"");
      int e = exponent_suffix();
      return scale_sym(inner, e);
    }
    if (eat('0')) return sym_zero();
    if (symbolic && eat_word("Q/Z")) {
      int w = twist_suffix();
      return scale_sym(sym_qmodz(w), exponent_suffix());
    }
    if (symbolic && eat_word("Q")) {
      int w = twist_suffix();
      return sym_rational(exponent_suffix(), w);
    }
    if (symbolic && eat_word("div:")) {
      Int l = number();
      int w = twist_suffix();
      return scale_sym(sym_primary_divisible(l, w), exponent_suffix());
    }
    if (symbolic && eat_word("ptp:")) {
      Int p = number();
      int w = twist_suffix();
      return scale_sym(sym_prime_to_p(p, w), exponent_suffix());
    }
    if (eat('Z')) {
      if (eat('/')) {
        Int n = number();
        if (n < 1) bad("cyclic modulus must be positive in \"" + s + "\"");
        int w = twist_suffix();
        if (w != 0 && !symbolic) bad("twists need the symbolic reader");
        return scale_sym(sym_cyclic(n, w), exponent_suffix());
      }
      int w = twist_suffix();
      if (w != 0 && !symbolic) bad("twists need the symbolic reader");
      return sym_free(exponent_suffix(), w);
    }
    bad("unrecognized term in \"" + s + "\"");
  }

  SymbolicModule sum() {
    SymbolicModule out = atom();
    for (;;) {
      skip_ws();
      if (eat('+') || eat_word("x"))
        out = direct_sum_sym(out, atom());
      else
        return out;
    }
  }

  SymbolicModule run() {
    SymbolicModule out = sum();
    skip_ws();
    if (pos != s.size()) bad("trailing text in \"" + s + "\"");
    return out;
  }
};

}  // namespace

FgAbGroup parse_group_text(const std::string& text) {
  ShorthandParser p{text, 0, false};
  return group_of_sym(p.run());
}

SymbolicModule parse_sym_text(const std::string& text) {
  ShorthandParser p{text, 0, true};
  return p.run();
}

SheafSpec parse_sheaf_text(const std::string& text) {
  if (text.rfind("lattice:", 0) == 0) {
    Int r = int_of_json(Json(text.substr(8)));
    if (r < 0 || r > 1000) bad("lattice rank out of range");
    return SheafSpec::lattice(static_cast<int>(r));
  }
  if (text.rfind("rational:", 0) == 0) {
    Int d = int_of_json(Json(text.substr(9)));
    if (d < 0 || d > 1000) bad("rational dimension out of range");
    return SheafSpec::rational(static_cast<int>(d));
  }
  if (text.rfind("zl:", 0) == 0) {
    const std::size_t sep = text.find(':', 3);
    if (sep == std::string::npos) bad("finite sheaf shorthand is zl:l:GROUP");
    Int l(text.substr(3, sep - 3));
    return SheafSpec::finite_l(l, parse_group_text(text.substr(sep + 1)));
  }
  bad("sheaf shorthand must be lattice:r, rational:d or zl:l:GROUP");
}

}  // namespace logkfl
