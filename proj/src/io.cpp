#include "vg/io.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vg {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::vector<std::string>& keys,
                  const char* what) {
  if (!j.is_object())
    throw MalformedDocument(std::string(what) + " must be a JSON object");
  for (const std::string& k : keys)
    if (!j.contains(k))
      throw MalformedDocument(std::string(what) + " is missing key \"" + k +
                              "\"");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    bool known = false;
    for (const std::string& want : keys)
      if (k == want) {
        known = true;
        break;
      }
    if (!known)
      throw MalformedDocument(std::string(what) + " has unknown key \"" + k +
                              "\"");
  }
}

std::size_t get_dim(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned())
    throw MalformedDocument(std::string(key) +
                            " must be a non-negative integer");
  return v.get<std::size_t>();
}

Scalar get_entry(const json& v, const FieldSpec& f, const char* what) {
  if (!v.is_number_integer())
    throw MalformedDocument(std::string(what) + " entries must be integers");
  std::int64_t e = v.get<std::int64_t>();
  if (e < 0 || e >= f.p())
    throw BadCoordinate(std::string(what) + " entry " + std::to_string(e) +
                        " is not a residue mod " + std::to_string(f.p()));
  return static_cast<Scalar>(e);
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                        const FieldSpec& f, const char* name) {
  if (!j.is_array())
    throw MalformedDocument(std::string(name) + " must be an array of rows");
  if (j.size() != rows)
    throw MalformedDocument(std::string(name) + " must have " +
                            std::to_string(rows) + " rows, got " +
                            std::to_string(j.size()));
  Matrix m(rows, cols, f);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols)
      throw MalformedDocument("row " + std::to_string(r) + " of " + name +
                              " must be an array of " + std::to_string(cols) +
                              " entries");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = get_entry(row[c], f, name);
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ElementIndex get_index(const json& v, std::uint64_t size, const char* what) {
  if (!v.is_number_unsigned())
    throw MalformedDocument(std::string(what) +
                            " must be a non-negative integer");
  ElementIndex e = v.get<ElementIndex>();
  if (e >= size)
    throw BadCoordinate(std::string(what) + " " + std::to_string(e) +
                        " is outside the element range of " +
                        std::to_string(size));
  return e;
}

MultiplicationBackend backend_from_json(const json& j, const FieldSpec& f,
                                        const SpaceRef& total,
                                        const SpaceRef& base) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw MalformedDocument(
        "multiplication must be an object with a \"kind\" string");
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "null") {
    require_keys(j, {"kind"}, "null multiplication");
    return NullRule{};
  }
  if (kind == "single_unit") {
    require_keys(j, {"kind"}, "single_unit multiplication");
    return SingleUnitRule{};
  }
  if (kind == "pair") {
    require_keys(j, {"kind"}, "pair multiplication");
    if (total.dim() % 2 != 0)
      throw ShapeMismatch(
          "pair multiplication requires an even total dimension");
    return PairRule{SpaceRef(total.dim() / 2, f)};
  }
  if (kind == "table") {
    require_keys(j, {"kind", "entries"}, "table multiplication");
    const json& entries = j.at("entries");
    if (!entries.is_array())
      throw MalformedDocument("table entries must be an array of triples");
    TableRule rule;
    for (const json& t : entries) {
      if (!t.is_array() || t.size() != 3)
        throw MalformedDocument(
            "each table entry must be a triple [x, y, product]");
      ElementIndex x = get_index(t[0], total.size(), "table x index");
      ElementIndex y = get_index(t[1], total.size(), "table y index");
      ElementIndex xy = get_index(t[2], total.size(), "table product index");
      if (!rule.entries.emplace(std::make_pair(x, y), xy).second)
        throw MalformedDocument("table lists the pair (" + std::to_string(x) +
                                ", " + std::to_string(y) + ") twice");
    }
    return rule;
  }
  if (kind == "induced") {
    require_keys(j, {"kind", "parent", "h", "basis"}, "induced multiplication");
    auto parent =
        std::make_shared<VectorGroupoid>(groupoid_from_json(j.at("parent")));
    if (parent->field() != f)
      throw ShapeMismatch("parent groupoid uses a different field");
    Matrix h = matrix_from_json(j.at("h"), parent->base().dim(), base.dim(), f,
                                "h");
    const std::size_t ambient = 2 * base.dim() + parent->total().dim();
    const json& basis_rows = j.at("basis");
    if (!basis_rows.is_array())
      throw MalformedDocument(
          "basis must be an array of ambient coordinate rows");
    std::vector<Vec> columns;
    for (std::size_t i = 0; i < basis_rows.size(); ++i) {
      const json& row = basis_rows[i];
      if (!row.is_array() || row.size() != ambient)
        throw MalformedDocument("basis row " + std::to_string(i) +
                                " must have " + std::to_string(ambient) +
                                " coordinates");
      Vec v(ambient);
      for (std::size_t c = 0; c < ambient; ++c)
        v[c] = get_entry(row[c], f, "basis");
      columns.push_back(std::move(v));
    }
    Matrix basis = Matrix::from_columns(ambient, columns, f);
    return InducedRule{std::move(parent), std::move(h), std::move(basis)};
  }
  throw MalformedDocument("unknown multiplication kind \"" + kind + "\"");
}

json backend_to_json(const VectorGroupoid& g) {
  json j;
  if (std::holds_alternative<NullRule>(g.multiplication())) {
    j["kind"] = "null";
  } else if (std::holds_alternative<SingleUnitRule>(g.multiplication())) {
    j["kind"] = "single_unit";
  } else if (std::holds_alternative<PairRule>(g.multiplication())) {
    j["kind"] = "pair";
  } else if (const auto* table =
                 std::get_if<TableRule>(&g.multiplication())) {
    j["kind"] = "table";
    json entries = json::array();
    for (const auto& [key, value] : table->entries)
      entries.push_back(json::array({key.first, key.second, value}));
    j["entries"] = std::move(entries);
  } else {
    const auto& rule = std::get<InducedRule>(g.multiplication());
    j["kind"] = "induced";
    j["parent"] = groupoid_to_json(*rule.parent);
    j["h"] = matrix_to_json(rule.h);
    json basis = json::array();
    for (std::size_t col = 0; col < rule.basis.cols(); ++col) {
      json row = json::array();
      for (std::size_t r = 0; r < rule.basis.rows(); ++r)
        row.push_back(rule.basis(r, col));
      basis.push_back(std::move(row));
    }
    j["basis"] = std::move(basis);
  }
  return j;
}

json summary_to_json(const CheckReport& report) {
  // elapsed_ms stays 0 in files so equal reports are byte-identical.
  return json{{"pass_count", report.pass_count()},
              {"fail_count", report.fail_count()},
              {"elapsed_ms", 0}};
}

}  // namespace

VectorGroupoid groupoid_from_json(const json& j) {
  require_keys(j,
               {"field", "base_dim", "total_dim", "alpha", "beta", "epsilon",
                "inversion", "multiplication"},
               "groupoid document");
  const json& field_obj = j.at("field");
  require_keys(field_obj, {"p"}, "field");
  if (!field_obj.at("p").is_number_unsigned())
    throw MalformedDocument("field characteristic must be a positive integer");
  FieldSpec f(field_obj.at("p").get<std::uint32_t>());

  std::size_t base_dim = get_dim(j, "base_dim");
  std::size_t total_dim = get_dim(j, "total_dim");
  SpaceRef base(base_dim, f);
  SpaceRef total(total_dim, f);

  Matrix alpha = matrix_from_json(j.at("alpha"), base_dim, total_dim, f,
                                  "alpha");
  Matrix beta = matrix_from_json(j.at("beta"), base_dim, total_dim, f, "beta");
  Matrix epsilon = matrix_from_json(j.at("epsilon"), total_dim, base_dim, f,
                                    "epsilon");
  Matrix inversion = matrix_from_json(j.at("inversion"), total_dim, total_dim,
                                      f, "inversion");
  MultiplicationBackend mult =
      backend_from_json(j.at("multiplication"), f, total, base);
  return VectorGroupoid(total, base, std::move(alpha), std::move(beta),
                        std::move(epsilon), std::move(inversion),
                        std::move(mult));
}

json groupoid_to_json(const VectorGroupoid& g) {
  json j;
  j["field"] = json{{"p", g.field().p()}};
  j["base_dim"] = g.base().dim();
  j["total_dim"] = g.total().dim();
  j["alpha"] = matrix_to_json(g.alpha());
  j["beta"] = matrix_to_json(g.beta());
  j["epsilon"] = matrix_to_json(g.epsilon());
  j["inversion"] = matrix_to_json(g.inversion());
  j["multiplication"] = backend_to_json(g);
  return j;
}

VectorGroupoid parse_groupoid(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(std::string("not valid JSON: ") + e.what());
  }
  return groupoid_from_json(j);
}

std::string serialize_groupoid(const VectorGroupoid& g) {
  return groupoid_to_json(g).dump(2) + "\n";
}

GroupoidMorphism morphism_from_json(const json& j) {
  require_keys(j, {"source", "target", "f", "f0"}, "morphism document");
  VectorGroupoid source = groupoid_from_json(j.at("source"));
  VectorGroupoid target = groupoid_from_json(j.at("target"));
  if (source.field() != target.field())
    throw ShapeMismatch("morphism endpoints use different fields");
  Matrix f = matrix_from_json(j.at("f"), target.total().dim(),
                              source.total().dim(), source.field(), "f");
  Matrix f0 = matrix_from_json(j.at("f0"), target.base().dim(),
                               source.base().dim(), source.field(), "f0");
  return GroupoidMorphism(std::move(source), std::move(target), std::move(f),
                          std::move(f0));
}

json morphism_to_json(const GroupoidMorphism& m) {
  json j;
  j["source"] = groupoid_to_json(m.source);
  j["target"] = groupoid_to_json(m.target);
  j["f"] = matrix_to_json(m.f);
  j["f0"] = matrix_to_json(m.f0);
  return j;
}

GroupoidMorphism parse_morphism(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(std::string("not valid JSON: ") + e.what());
  }
  return morphism_from_json(j);
}

std::string serialize_morphism(const GroupoidMorphism& m) {
  return morphism_to_json(m).dump(2) + "\n";
}

FactorizationInput parse_factorization_input(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(std::string("not valid JSON: ") + e.what());
  }
  require_keys(j, {"source", "parent", "u", "h"}, "factorization document");
  VectorGroupoid source = groupoid_from_json(j.at("source"));
  VectorGroupoid parent = groupoid_from_json(j.at("parent"));
  if (source.field() != parent.field())
    throw ShapeMismatch("factorization inputs use different fields");
  Matrix u = matrix_from_json(j.at("u"), parent.total().dim(),
                              source.total().dim(), source.field(), "u");
  Matrix h = matrix_from_json(j.at("h"), parent.base().dim(),
                              source.base().dim(), source.field(), "h");
  return FactorizationInput{std::move(source), std::move(parent), std::move(u),
                            std::move(h)};
}

std::string serialize_factorization_input(const FactorizationInput& in) {
  json j;
  j["source"] = groupoid_to_json(in.source);
  j["parent"] = groupoid_to_json(in.parent);
  j["u"] = matrix_to_json(in.u);
  j["h"] = matrix_to_json(in.h);
  return j.dump(2) + "\n";
}

json report_to_json(const CheckReport& report) {
  json results = json::array();
  for (const CheckResult& r : report.results) {
    json item;
    item["law_id"] = r.law_id;
    switch (r.status) {
      case LawStatus::pass: item["status"] = "pass"; break;
      case LawStatus::fail: item["status"] = "fail"; break;
      case LawStatus::skipped: item["status"] = "skipped"; break;
    }
    item["tuples_checked"] = r.tuples_checked;
    if (r.witness) {
      json w;
      w["elements"] = r.witness->elements;
      if (r.witness->scalar) w["scalar"] = *r.witness->scalar;
      item["witness"] = std::move(w);
    }
    if (r.advisory) item["advisory"] = true;
    results.push_back(std::move(item));
  }
  return json{{"results", std::move(results)},
              {"summary", summary_to_json(report)}};
}

std::string serialize_report(const CheckReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace vg
