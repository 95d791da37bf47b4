// Command-line front end. Every verb reads flags (shorthand text or JSON documents),
// runs one library operation, and prints either an aligned human table or a JSON
// document that re-parses under the schemas in json_io. Exit codes: 0 success, 2 bad
// input or unknown verb, 3 when a size bound or an unstabilized ladder stops the
// computation. Output is byte-deterministic for fixed input and format.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logkfl/config.hpp"
#include "logkfl/groupcoh.hpp"
#include "logkfl/json_io.hpp"
#include "logkfl/snf.hpp"
#include "logkfl/verify.hpp"

namespace {

using namespace logkfl;

enum class Format { human, machine };

struct CommonFlags {
  std::string format = "human";
  std::uint64_t size_bound_flag = 0;

  Format format_value() const {
    if (format == "human") return Format::human;
    if (format == "machine") return Format::machine;
    fail(errc::validation, "--format must be human or machine");
  }
  void apply() const {
    if (size_bound_flag > 0) set_size_bound(size_bound_flag);
  }
};

void add_common(CLI::App* sub, CommonFlags& common) {
  sub->add_option("--format", common.format, "output format: human | machine");
  sub->add_option("--size-bound", common.size_bound_flag,
                  "cap on materialized cochain tables (entries)");
}

void emit(const CommonFlags& common, const Json& machine, const std::string& human) {
  if (common.format_value() == Format::machine)
    std::cout << machine.dump() << "\n";
  else
    std::cout << human << "\n";
}

Int parse_int_flag(const std::string& text, const char* what) {
  try {
    return int_of_json(Json(text));
  } catch (const error&) {
    fail(errc::validation, std::string(what) + " must be an integer");
  }
}

std::vector<Int> parse_int_list(const std::string& text, const char* what) {
  Json j = parse_json_text(text);
  if (!j.is_array()) fail(errc::validation, std::string(what) + " must be a JSON array");
  std::vector<Int> out;
  for (const Json& v : j) out.push_back(int_of_json(v));
  return out;
}

SheafSpec parse_sheaf_flag(const std::string& text) {
  if (!text.empty() && text[0] == '{') return sheaf_of_json(parse_json_text(text));
  return parse_sheaf_text(text);
}

CalcMode parse_mode(const std::string& text) {
  if (text == "computed") return CalcMode::computed;
  if (text == "paper") return CalcMode::paper;
  fail(errc::validation, "--mode must be computed or paper");
}

std::string matrix_lines(const IntMatrix& m) {
  // column-aligned entries
  std::vector<std::size_t> width(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      width[j] = std::max(width[j], m(i, j).str().size());
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string line;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string cell = m(i, j).str();
      if (j) line += " ";
      line += std::string(width[j] - cell.size(), ' ') + cell;
    }
    out += "  " + line + "\n";
  }
  if (m.rows() == 0) out += "  (empty)\n";
  return out;
}

std::string smith_human(const SmithResult& s) {
  std::string out;
  out += "D:\n" + matrix_lines(s.D);
  out += "U:\n" + matrix_lines(s.U);
  out += "V:\n" + matrix_lines(s.V);
  out += "diag:";
  for (const Int& d : s.diag) out += " " + d.str();
  out += "\nrank: " + std::to_string(s.rank);
  return out;
}

std::string graded_human(const GradedModule& m) {
  std::string out;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    if (i) out += "\n";
    out += "H^" + std::to_string(i) + " = " + m.entries[i].to_string();
  }
  if (m.tail_zero) out += "\n(zero in all higher degrees)";
  return out;
}

std::string expr_human(const DirectImageExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const SkyscraperTerm& t : e.terms) {
    if (!out.empty()) out += " + ";
    out += "i_" + t.point + "*( " + t.module.to_string() + " )";
  }
  return out;
}

std::string table_human(const CohomologyTable& t) {
  std::string out = "mode: ";
  out += t.mode == CalcMode::computed ? "computed" : "paper";
  for (std::size_t i = 0; i < t.degrees.size(); ++i)
    out += "\nH^" + std::to_string(i) + " = " + t.degrees[i].to_string();
  if (t.tail_zero) out += "\n(zero in all higher degrees)";
  for (const ExactSegment& seg : t.segments) {
    out += "\nexact: ";
    if (seg.closed_left) out += "0 -> ";
    for (std::size_t k = 0; k < seg.terms.size(); ++k) {
      if (k) out += " -> ";
      out += seg.terms[k].label + " = " + seg.terms[k].entry.to_string();
    }
    if (seg.closed_right) out += " -> 0";
  }
  for (const Diagnostic& d : t.diagnostics)
    out += "\ndiagnostic: degree " + std::to_string(d.degree) + ", " + d.term +
           ": computed = " + d.computed.to_string() + ", stated = " + d.paper_claimed.to_string();
  for (const std::string& n : t.notes) out += "\nnote: " + n;
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"exact Kummer-log-flat cohomology calculator"};
  app.require_subcommand(1);

  int exit_code = 0;
  CommonFlags common;

  // snf
  std::string snf_matrix;
  CLI::App* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf_cmd->add_option("--matrix", snf_matrix, "matrix as JSON rows, e.g. \"[[2,4],[6,8]]\"")
      ->required();
  add_common(snf_cmd, common);
  snf_cmd->callback([&] {
    common.apply();
    SmithResult s = smith_normal_form(matrix_of_json(parse_json_text(snf_matrix)));
    emit(common, json_of_smith(s), smith_human(s));
  });

  // group
  std::string group_relations;
  int group_generators = -1;
  CLI::App* group_cmd =
      app.add_subcommand("group", "normal form of Z^g modulo relation rows");
  group_cmd->add_option("--relations", group_relations, "relation rows as JSON")->required();
  group_cmd->add_option("--generators", group_generators,
                        "number of generators (default: matrix columns)");
  add_common(group_cmd, common);
  group_cmd->callback([&] {
    common.apply();
    IntMatrix rel = matrix_of_json(parse_json_text(group_relations));
    std::size_t gens = group_generators < 0 ? rel.cols()
                                            : static_cast<std::size_t>(group_generators);
    FgAbGroup g = group_from_presentation(rel, gens);
    emit(common, json_of_group(g), g.to_string());
  });

  // cohomology
  std::string coh_group, coh_coeff;
  int coh_degree = 0;
  CLI::App* coh_cmd =
      app.add_subcommand("cohomology", "brute-force H^i(G, M) for finite abelian G");
  coh_cmd->add_option("--group", coh_group, "finite group shorthand, e.g. \"(Z/2)^2\"")
      ->required();
  coh_cmd->add_option("--coeff", coh_coeff, "coefficient group shorthand")->required();
  coh_cmd->add_option("--degree", coh_degree, "cohomological degree")->required();
  add_common(coh_cmd, common);
  coh_cmd->callback([&] {
    common.apply();
    FgAbGroup h =
        cohomology_bruteforce(parse_group_text(coh_group), parse_group_text(coh_coeff), coh_degree);
    emit(common, json_of_group(h), h.to_string());
  });

  // cyclic-closed
  std::string cyc_m, cyc_coeff;
  int cyc_degree = 0;
  CLI::App* cyc_cmd = app.add_subcommand("cyclic-closed", "closed form of H^i(Z/m, M)");
  cyc_cmd->add_option("--m", cyc_m, "cyclic order m")->required();
  cyc_cmd->add_option("--coeff", cyc_coeff, "coefficient group shorthand")->required();
  cyc_cmd->add_option("--degree", cyc_degree, "cohomological degree")->required();
  add_common(cyc_cmd, common);
  cyc_cmd->callback([&] {
    common.apply();
    FgAbGroup h = cohomology_cyclic_closed(parse_int_flag(cyc_m, "--m"),
                                           parse_group_text(cyc_coeff), cyc_degree);
    emit(common, json_of_group(h), h.to_string());
  });

  // profinite
  int pro_r = 0, pro_degree = 0;
  std::string pro_coeff, pro_p, pro_ladder;
  CLI::App* pro_cmd = app.add_subcommand(
      "profinite", "colimit of H^i over the prime-to-p tower in r variables");
  pro_cmd->add_option("--r", pro_r, "number of tower variables")->required();
  pro_cmd->add_option("--p", pro_p, "excluded residue characteristic (a prime)")->required();
  pro_cmd->add_option("--coeff", pro_coeff, "coefficients (symbolic shorthand)")->required();
  pro_cmd->add_option("--degree", pro_degree, "cohomological degree")->required();
  pro_cmd->add_option("--ladder", pro_ladder,
                      "finite levels as a JSON array, e.g. \"[2,4,8]\"; runs the honest "
                      "finite-level computation instead of the closed form");
  add_common(pro_cmd, common);
  pro_cmd->callback([&] {
    common.apply();
    const Int p = parse_int_flag(pro_p, "--p");
    if (pro_ladder.empty()) {
      SymbolicModule m = profinite_closed_form(pro_r, parse_sym_text(pro_coeff), p, pro_degree);
      emit(common, json_of_sym(m), m.to_string());
    } else {
      FgAbGroup h = profinite_colimit_bruteforce(pro_r, parse_group_text(pro_coeff), p,
                                                 pro_degree, parse_int_list(pro_ladder, "--ladder"));
      emit(common, json_of_group(h), h.to_string());
    }
  });

  // cech
  int cech_rank = 0, cech_degree = 0;
  std::string cech_p, cech_level, cech_coeff;
  CLI::App* cech_cmd =
      app.add_subcommand("cech", "Cech cohomology of the level-n Kummer cover of a log point");
  cech_cmd->add_option("--rank", cech_rank, "rank of the chart's group envelope")->required();
  cech_cmd->add_option("--residue-char", cech_p, "residue characteristic (0 or a prime)")
      ->required();
  cech_cmd->add_option("--level", cech_level, "cover level n")->required();
  cech_cmd->add_option("--coeff", cech_coeff, "constant coefficients (group shorthand)")
      ->required();
  cech_cmd->add_option("--degree", cech_degree, "cohomological degree")->required();
  add_common(cech_cmd, common);
  cech_cmd->callback([&] {
    common.apply();
    LogPointModel model{cech_rank, parse_int_flag(cech_p, "--residue-char")};
    FgAbGroup h = cech_cohomology(model, parse_int_flag(cech_level, "--level"),
                                  parse_group_text(cech_coeff), cech_degree);
    emit(common, json_of_group(h), h.to_string());
  });

  // cech-colimit
  int ccl_rank = 0, ccl_degree = 0;
  std::string ccl_p, ccl_coeff;
  CLI::App* ccl_cmd = app.add_subcommand(
      "cech-colimit", "colimit of the Cech cohomology over all Kummer levels");
  ccl_cmd->add_option("--rank", ccl_rank, "rank of the chart's group envelope")->required();
  ccl_cmd->add_option("--residue-char", ccl_p, "residue characteristic (0 or a prime)")
      ->required();
  ccl_cmd->add_option("--coeff", ccl_coeff, "torsion coefficients (symbolic shorthand)")
      ->required();
  ccl_cmd->add_option("--degree", ccl_degree, "cohomological degree")->required();
  add_common(ccl_cmd, common);
  ccl_cmd->callback([&] {
    common.apply();
    LogPointModel model{ccl_rank, parse_int_flag(ccl_p, "--residue-char")};
    SymbolicModule m = cech_colimit(model, parse_sym_text(ccl_coeff), ccl_degree);
    emit(common, json_of_sym(m), m.to_string());
  });

  // direct-image
  std::string di_base, di_sheaf;
  int di_degree = 0;
  CLI::App* di_cmd = app.add_subcommand(
      "direct-image", "symbolic higher direct image R^i as a sum of skyscrapers");
  di_cmd->add_option("--base", di_base, "base description as JSON")->required();
  di_cmd->add_option("--sheaf", di_sheaf, "sheaf shorthand (lattice:r, rational:d, zl:l:GROUP) or JSON")
      ->required();
  di_cmd->add_option("--degree", di_degree, "image degree (i >= 1)")->required();
  add_common(di_cmd, common);
  di_cmd->callback([&] {
    common.apply();
    DirectImageExpr e = higher_direct_image(base_of_json(parse_json_text(di_base)),
                                            parse_sheaf_flag(di_sheaf), di_degree);
    emit(common, json_of_expr(e), expr_human(e));
  });

  // zhat
  std::string zh_q, zh_coeff, zh_group, zh_frob;
  int zh_twist = 0;
  CLI::App* zh_cmd = app.add_subcommand(
      "zhat", "Galois cohomology row of a Frobenius module (degrees 0..2)");
  zh_cmd->add_option("--q", zh_q, "size of the finite base field")->required();
  zh_cmd->add_option("--coeff", zh_coeff,
                     "symbolic module with trivial action (symbolic shorthand)");
  zh_cmd->add_option("--group", zh_group, "explicit underlying group (group shorthand)");
  zh_cmd->add_option("--frobenius", zh_frob,
                     "Frobenius matrix on the generators as JSON (with --group; default identity)");
  zh_cmd->add_option("--twist", zh_twist, "Tate twist");
  add_common(zh_cmd, common);
  zh_cmd->callback([&] {
    common.apply();
    const Int q = parse_int_flag(zh_q, "--q");
    GradedModule row;
    if (!zh_group.empty()) {
      if (!zh_coeff.empty()) fail(errc::validation, "--coeff and --group are exclusive");
      FgAbGroup g = parse_group_text(zh_group);
      IntMatrix frob = zh_frob.empty()
                           ? IntMatrix::identity(g.gens())
                           : matrix_of_json(parse_json_text(zh_frob));
      row = zhat_cohomology(ZhatModule{g, frob, zh_twist, q});
    } else if (!zh_coeff.empty()) {
      if (!zh_frob.empty()) fail(errc::validation, "--frobenius needs --group");
      row = zhat_cohomology(twist_sym(parse_sym_text(zh_coeff), zh_twist), q);
    } else {
      fail(errc::validation, "zhat needs --coeff or --group");
    }
    emit(common, json_of_graded(row), graded_human(row));
  });

  // calc-dvr
  std::string dvr_q, dvr_sheaf, dvr_mode = "computed";
  CLI::App* dvr_cmd = app.add_subcommand(
      "calc-dvr", "cohomology table of a trait with finite residue field");
  dvr_cmd->add_option("--q", dvr_q, "residue field size (a prime power)")->required();
  dvr_cmd->add_option("--sheaf", dvr_sheaf, "sheaf shorthand or JSON")->required();
  dvr_cmd->add_option("--mode", dvr_mode, "computed | paper");
  add_common(dvr_cmd, common);
  dvr_cmd->callback([&] {
    common.apply();
    CohomologyTable t = dvr_calculator(parse_int_flag(dvr_q, "--q"), parse_sheaf_flag(dvr_sheaf),
                                       parse_mode(dvr_mode));
    emit(common, json_of_table(t), table_human(t));
  });

  // calc-dedekind
  std::string ded_points, ded_sheaf, ded_labels, ded_mode = "computed";
  CLI::App* ded_cmd = app.add_subcommand(
      "calc-dedekind", "comparison table over a Dedekind base with marked points");
  ded_cmd->add_option("--points", ded_points, "marked points as a JSON array")->required();
  ded_cmd->add_option("--sheaf", ded_sheaf, "sheaf shorthand or JSON")->required();
  ded_cmd->add_option("--etale-labels", ded_labels,
                      "optional JSON array naming the classical-site terms per degree");
  ded_cmd->add_option("--mode", ded_mode, "computed | paper");
  add_common(ded_cmd, common);
  ded_cmd->callback([&] {
    common.apply();
    Json pts = parse_json_text(ded_points);
    if (!pts.is_array()) fail(errc::validation, "--points must be a JSON array");
    std::vector<BasePoint> points;
    for (const Json& pj : pts) points.push_back(point_of_json(pj));
    std::vector<std::string> labels;
    if (!ded_labels.empty()) {
      Json lj = parse_json_text(ded_labels);
      if (!lj.is_array()) fail(errc::validation, "--etale-labels must be a JSON array");
      for (const Json& v : lj) {
        if (!v.is_string()) fail(errc::validation, "--etale-labels entries must be strings");
        labels.push_back(v.get<std::string>());
      }
    }
    CohomologyTable t =
        dedekind_calculator(points, parse_sheaf_flag(ded_sheaf), labels, parse_mode(ded_mode));
    emit(common, json_of_table(t), table_human(t));
  });

  // verify
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the per-module invariant suites");
  add_common(verify_cmd, common);
  verify_cmd->callback([&] {
    common.apply();
    std::vector<VerifyResult> results = run_verify_suites();
    if (common.format_value() == Format::machine) {
      Json out = Json::array();
      for (const VerifyResult& r : results) {
        Json rj = Json::object();
        rj["suite"] = r.suite;
        rj["pass"] = r.pass;
        rj["detail"] = r.detail;
        out.push_back(std::move(rj));
      }
      std::cout << out.dump() << "\n";
    } else {
      for (const VerifyResult& r : results) {
        std::cout << r.suite << ": " << (r.pass ? "pass" : "FAIL");
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
      }
    }
    if (!all_pass(results)) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const logkfl::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return logkfl::is_resource_error(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
