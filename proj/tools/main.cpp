// vgroupoid: construct vector groupoids over prime fields and verify their
// laws by exhaustive enumeration, with witness-bearing deterministic reports.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vg/checks.hpp"
#include "vg/constructions.hpp"
#include "vg/errors.hpp"
#include "vg/io.hpp"
#include "vg/morphism.hpp"
#include "vg/space.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vg::MalformedDocument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

struct SuiteSelection {
  bool ehresmann = true;
  bool vector = true;
  bool derived = true;
  bool subspaces = true;
  bool transitivity = true;
  bool morphism = true;
  bool factorization = true;
};

// `allowed` is the vocabulary of the subcommand; "all" and "none" always work.
SuiteSelection parse_suites(const std::string& csv,
                            const std::vector<std::string>& allowed) {
  SuiteSelection sel;
  if (csv.empty() || csv == "all") return sel;
  sel = SuiteSelection{};
  sel.ehresmann = sel.vector = sel.derived = sel.subspaces = false;
  sel.transitivity = sel.morphism = sel.factorization = false;
  if (csv == "none") return sel;
  for (const std::string& name : split_csv(csv)) {
    bool ok = false;
    for (const std::string& a : allowed)
      if (name == a) {
        ok = true;
        break;
      }
    if (!ok) {
      std::string msg = "unknown suite \"" + name + "\" (expected all, none";
      for (const std::string& a : allowed) msg += ", " + a;
      throw vg::MalformedDocument(msg + ")");
    }
    if (name == "ehresmann") sel.ehresmann = true;
    if (name == "vector") sel.vector = true;
    if (name == "derived") sel.derived = true;
    if (name == "subspaces") sel.subspaces = true;
    if (name == "transitivity") sel.transitivity = true;
    if (name == "morphism") sel.morphism = true;
    if (name == "factorization") sel.factorization = true;
  }
  return sel;
}

const std::vector<std::string> kGroupoidSuites = {
    "ehresmann", "vector", "derived", "subspaces", "transitivity"};
const std::vector<std::string> kMorphismSuites = {"morphism"};
const std::vector<std::string> kFactorizeSuites = {"morphism",
                                                   "factorization"};

void append_report(vg::CheckReport& dst, const vg::CheckReport& src) {
  dst.results.insert(dst.results.end(), src.results.begin(),
                     src.results.end());
}

void append_prefixed(vg::CheckReport& dst, const vg::CheckReport& src,
                     const std::string& prefix) {
  for (vg::CheckResult r : src.results) {
    r.law_id = prefix + r.law_id;
    dst.results.push_back(std::move(r));
  }
}

void print_result(std::ostream& os, const vg::CheckResult& r) {
  os << r.law_id << ": ";
  switch (r.status) {
    case vg::LawStatus::pass: os << "pass"; break;
    case vg::LawStatus::fail: os << "FAIL"; break;
    case vg::LawStatus::skipped: os << "skipped"; break;
  }
  os << " tuples=" << r.tuples_checked;
  if (r.witness) {
    os << " witness=[";
    for (std::size_t i = 0; i < r.witness->elements.size(); ++i)
      os << (i ? "," : "") << r.witness->elements[i];
    os << "]";
    if (r.witness->scalar) os << " scalar=" << *r.witness->scalar;
  }
  if (r.advisory) os << " (advisory)";
  os << "\n";
}

void print_summary(std::ostream& os, const vg::CheckReport& r) {
  os << "summary: pass=" << r.pass_count() << " fail=" << r.fail_count()
     << " skipped=" << r.skipped_count() << "\n";
}

// Runs the selected groupoid suites in catalog order. The derived suite is
// marked advisory when the ehresmann suite ran in the same invocation and
// failed; a broken core makes derived verdicts unreliable either way.
vg::CheckReport run_groupoid_suites(
    const vg::VectorGroupoid& g, const SuiteSelection& sel,
    std::optional<vg::TransitivityResult>& trans_out) {
  vg::CheckReport combined;
  bool ehresmann_passed = true;
  if (sel.ehresmann) {
    vg::CheckReport r = vg::check_ehresmann(g);
    ehresmann_passed = r.no_failures();
    append_report(combined, r);
  }
  if (sel.vector) append_report(combined, vg::check_vector_axioms(g));
  if (sel.derived)
    append_report(combined, vg::check_derived_rules(g, ehresmann_passed));
  if (sel.subspaces) append_report(combined, vg::check_subspaces(g));
  if (sel.transitivity) {
    trans_out = vg::is_transitive(g);
    append_report(combined, trans_out->report);
  }
  return combined;
}

void emit_groupoid_run(const vg::CheckReport& report,
                       const std::optional<vg::TransitivityResult>& trans,
                       const std::string& report_path) {
  for (const vg::CheckResult& r : report.results) print_result(std::cout, r);
  if (trans) {
    if (trans->transitive) {
      std::cout << "transitive: yes\n";
    } else {
      std::cout << "transitive: no";
      if (trans->missing_pair)
        std::cout << " missing=(" << trans->missing_pair->first << ","
                  << trans->missing_pair->second << ")";
      std::cout << "\n";
    }
  }
  print_summary(std::cout, report);
  if (!report_path.empty())
    write_file(report_path, vg::serialize_report(report));
}

vg::Matrix matrix_from_option(const std::string& text, std::size_t rows,
                              std::optional<std::size_t> cols_hint,
                              const vg::FieldSpec& f, const char* name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw vg::MalformedDocument(std::string(name) + " is not valid JSON: " +
                                e.what());
  }
  if (!j.is_array() || j.size() != rows)
    throw vg::MalformedDocument(std::string(name) + " must be an array of " +
                                std::to_string(rows) + " rows");
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array())
      throw vg::MalformedDocument(std::string(name) +
                                  " rows must be arrays of residues");
    cols = j[0].size();
    if (cols_hint && *cols_hint != cols)
      throw vg::MalformedDocument(std::string(name) + " has " +
                                  std::to_string(cols) +
                                  " columns but --x-dim says " +
                                  std::to_string(*cols_hint));
  } else {
    if (!cols_hint)
      throw vg::MalformedDocument(std::string(name) +
                                  " has no rows; pass --x-dim to fix the "
                                  "domain dimension");
    cols = *cols_hint;
  }
  vg::Matrix m(rows, cols, f);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw vg::MalformedDocument("row " + std::to_string(r) + " of " + name +
                                  " must have " + std::to_string(cols) +
                                  " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number_integer())
        throw vg::MalformedDocument(std::string(name) +
                                    " entries must be integers");
      std::int64_t e = row[c].get<std::int64_t>();
      if (e < 0 || e >= f.p())
        throw vg::BadCoordinate(std::string(name) + " entry " +
                                std::to_string(e) + " is not a residue mod " +
                                std::to_string(f.p()));
      m(r, c) = static_cast<vg::Scalar>(e);
    }
  }
  return m;
}

json matrix_rows(const vg::Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct CommonArgs {
  std::string report_path;
  std::string suites = "all";
};

int run_check(const std::string& file, const CommonArgs& common) {
  SuiteSelection sel = parse_suites(common.suites, kGroupoidSuites);
  vg::VectorGroupoid g = vg::parse_groupoid(read_file(file));
  std::optional<vg::TransitivityResult> trans;
  vg::CheckReport report = run_groupoid_suites(g, sel, trans);
  emit_groupoid_run(report, trans, common.report_path);
  return report.no_failures() ? 0 : 1;
}

int run_construct(const std::string& kind, std::uint32_t p,
                  std::optional<std::size_t> dim,
                  const std::string& parent_path, const std::string& h_text,
                  std::optional<std::size_t> x_dim, bool as_table,
                  const std::string& out, const CommonArgs& common) {
  SuiteSelection sel = parse_suites(common.suites, kGroupoidSuites);
  std::optional<vg::VectorGroupoid> g;
  if (kind == "induced") {
    if (parent_path.empty() || h_text.empty())
      throw vg::MalformedDocument(
          "construct induced needs --parent <file> and --h <json rows>");
    if (p != 0 || dim.has_value())
      throw vg::MalformedDocument(
          "construct induced takes its field and base from --parent; drop "
          "--p/--dim");
    vg::VectorGroupoid parent = vg::parse_groupoid(read_file(parent_path));
    vg::Matrix h = matrix_from_option(h_text, parent.base().dim(), x_dim,
                                      parent.field(), "--h");
    vg::SpaceRef x(h.cols(), parent.field());
    g = vg::induced_groupoid(parent, h, x).structure;
  } else {
    if (p == 0 || !dim.has_value() || !parent_path.empty() ||
        !h_text.empty() || x_dim.has_value())
      throw vg::MalformedDocument("construct " + kind +
                                  " needs --p and --dim and nothing else");
    vg::SpaceRef space(*dim, vg::FieldSpec(p));
    if (kind == "null") g = vg::null_groupoid(space);
    else if (kind == "single-unit") g = vg::single_unit_groupoid(space);
    else g = vg::pair_groupoid(space);
  }
  if (as_table) g = vg::with_multiplication(*g, vg::to_table(*g));
  write_file(out, vg::serialize_groupoid(*g));
  std::optional<vg::TransitivityResult> trans;
  vg::CheckReport report = run_groupoid_suites(*g, sel, trans);
  emit_groupoid_run(report, trans, common.report_path);
  return report.no_failures() ? 0 : 1;
}

int run_morphism_check(const std::string& file, const CommonArgs& common) {
  SuiteSelection sel = parse_suites(common.suites, kMorphismSuites);
  vg::GroupoidMorphism m = vg::parse_morphism(read_file(file));
  vg::CheckReport report;
  if (sel.morphism) report = vg::check_morphism(m);
  for (const vg::CheckResult& r : report.results) print_result(std::cout, r);
  print_summary(std::cout, report);
  if (!common.report_path.empty())
    write_file(common.report_path, vg::serialize_report(report));
  return report.no_failures() ? 0 : 1;
}

int run_factorize(const std::string& file, const CommonArgs& common) {
  SuiteSelection sel = parse_suites(common.suites, kFactorizeSuites);
  vg::FactorizationInput in = vg::parse_factorization_input(read_file(file));
  vg::InducedGroupoid ig =
      vg::induced_groupoid(in.parent, in.h, in.source.base());

  // The (u, h) laws always run: a failing input blocks the factorization, so
  // its results are reported even when the morphism suite is deselected.
  vg::GroupoidMorphism input(in.source, in.parent, in.u, in.h);
  vg::CheckReport input_report = vg::check_morphism(input);

  vg::CheckReport report;
  std::optional<vg::Matrix> v;
  if (sel.morphism || !input_report.no_failures())
    append_prefixed(report, input_report, "u.");
  if (input_report.no_failures() && sel.factorization) {
    vg::Factorization f =
        vg::universal_factorization(in.source, in.u, in.h, ig);
    append_report(report, f.theorem_report);
    if (sel.morphism) append_prefixed(report, f.v_report, "v.");
    v = f.v.f;
  }

  for (const vg::CheckResult& r : report.results) print_result(std::cout, r);
  if (v) std::cout << "v: " << matrix_rows(*v).dump() << "\n";
  print_summary(std::cout, report);
  if (!common.report_path.empty()) {
    json doc = vg::report_to_json(report);
    if (v) doc["v"] = matrix_rows(*v);
    write_file(common.report_path, doc.dump(2) + "\n");
  }
  return report.no_failures() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vgroupoid: construct vector groupoids over prime fields GF(p) and "
      "verify their laws by exhaustive enumeration"};
  app.require_subcommand(1);

  std::string check_file;
  CommonArgs check_common;
  CLI::App* check = app.add_subcommand(
      "check", "run the law suites on a groupoid document");
  check->add_option("file", check_file, "groupoid JSON document")->required();
  check->add_option("--report", check_common.report_path,
                    "write the JSON report here");
  check->add_option("--suites", check_common.suites,
                    "comma list: ehresmann,vector,derived,subspaces,"
                    "transitivity (or all, none)");

  std::string construct_kind;
  std::uint32_t construct_p = 0;
  std::size_t construct_dim = 0;
  bool construct_dim_set = false;
  std::string construct_parent, construct_h, construct_out;
  std::size_t construct_x_dim = 0;
  bool construct_x_dim_set = false;
  CommonArgs construct_common;
  CLI::App* construct = app.add_subcommand(
      "construct", "build a groupoid, write its document, and verify it");
  // keep --h free for the pullback map; help stays reachable as --help
  construct->set_help_flag("--help", "print this help message and exit");
  construct
      ->add_option("kind", construct_kind,
                   "one of null, single-unit, pair, induced")
      ->required()
      ->check(CLI::IsMember({"null", "single-unit", "pair", "induced"}));
  construct->add_option("--p", construct_p, "field characteristic (prime)");
  construct->add_option("--dim", construct_dim, "space dimension")
      ->each([&](const std::string&) { construct_dim_set = true; });
  construct->add_option("--parent", construct_parent,
                        "parent groupoid document (induced only)");
  construct->add_option("--h", construct_h,
                        "rows of the map X -> parent base, as JSON "
                        "(induced only)");
  construct->add_option("--x-dim", construct_x_dim,
                        "dim X when --h has no rows (induced only)")
      ->each([&](const std::string&) { construct_x_dim_set = true; });
  bool construct_table = false;
  construct->add_flag("--table", construct_table,
                      "write the multiplication as an explicit table");
  construct->add_option("-o,--out", construct_out, "output document path")
      ->required();
  construct->add_option("--report", construct_common.report_path,
                        "write the JSON report here");
  construct->add_option("--suites", construct_common.suites,
                        "comma list: ehresmann,vector,derived,subspaces,"
                        "transitivity (or all, none)");

  std::string morphism_file;
  CommonArgs morphism_common;
  CLI::App* morphism = app.add_subcommand(
      "morphism-check", "run the morphism laws on a morphism document");
  morphism->add_option("file", morphism_file, "morphism JSON document")
      ->required();
  morphism->add_option("--report", morphism_common.report_path,
                       "write the JSON report here");
  morphism->add_option("--suites", morphism_common.suites,
                       "comma list: morphism (or all, none)");

  std::string factorize_file;
  CommonArgs factorize_common;
  CLI::App* factorize = app.add_subcommand(
      "factorize",
      "factor a morphism (u, h) through the pullback along h and verify "
      "commutation and uniqueness");
  factorize->add_option("file", factorize_file, "factorization JSON document")
      ->required();
  factorize->add_option("--report", factorize_common.report_path,
                        "write the JSON report here");
  factorize->add_option("--suites", factorize_common.suites,
                        "comma list: morphism,factorization (or all, none)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  int exit_code = 2;
  try {
    if (const char* cap = std::getenv("VG_CAP")) {
      std::string text(cap);
      std::size_t used = 0;
      unsigned long long value = 0;
      try {
        value = std::stoull(text, &used);
      } catch (const std::exception&) {
        throw vg::MalformedDocument("VG_CAP must be a positive integer");
      }
      if (used != text.size())
        throw vg::MalformedDocument("VG_CAP must be a positive integer");
      vg::set_space_cap(value);
    }

    if (check->parsed()) {
      exit_code = run_check(check_file, check_common);
    } else if (construct->parsed()) {
      std::optional<std::size_t> dim_opt, x_dim_opt;
      if (construct_dim_set) dim_opt = construct_dim;
      if (construct_x_dim_set) x_dim_opt = construct_x_dim;
      exit_code =
          run_construct(construct_kind, construct_p, dim_opt,
                        construct_parent, construct_h, x_dim_opt,
                        construct_table, construct_out, construct_common);
    } else if (morphism->parsed()) {
      exit_code = run_morphism_check(morphism_file, morphism_common);
    } else {
      exit_code = run_factorize(factorize_file, factorize_common);
    }
  } catch (const vg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "elapsed_ms=" << elapsed.count() << "\n";
  return exit_code;
}
