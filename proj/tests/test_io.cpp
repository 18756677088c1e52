#include <doctest.h>

#include <json.hpp>
#include <string>

#include "vg/checks.hpp"
#include "vg/constructions.hpp"
#include "vg/errors.hpp"
#include "vg/io.hpp"

using nlohmann::json;
using vg::FieldSpec;
using vg::SpaceRef;
using vg::VectorGroupoid;

namespace {

const char* kPairDoc = R"({
  "field": {"p": 2},
  "base_dim": 1,
  "total_dim": 2,
  "alpha": [[1,0]],
  "beta": [[0,1]],
  "epsilon": [[1],[1]],
  "inversion": [[0,1],[1,0]],
  "multiplication": {"kind": "pair"}
})";

json pair_doc() { return json::parse(kPairDoc); }

}  // namespace

TEST_CASE("the pair document loads to the constructed pair groupoid") {
  VectorGroupoid g = vg::parse_groupoid(kPairDoc);
  CHECK(g == vg::pair_groupoid(SpaceRef(1, FieldSpec(2))));
}

TEST_CASE("serialize then parse is the identity on models") {
  std::vector<VectorGroupoid> gs;
  gs.push_back(vg::pair_groupoid(SpaceRef(1, FieldSpec(2))));
  gs.push_back(vg::null_groupoid(SpaceRef(2, FieldSpec(3))));
  gs.push_back(vg::single_unit_groupoid(SpaceRef(1, FieldSpec(5))));
  VectorGroupoid p3 = vg::pair_groupoid(SpaceRef(1, FieldSpec(3)));
  gs.push_back(vg::with_multiplication(p3, vg::to_table(p3)));
  vg::Matrix h(1, 2, FieldSpec(2), {1, 1});
  gs.push_back(
      vg::induced_groupoid(gs[0], h, SpaceRef(2, FieldSpec(2))).structure);

  for (const VectorGroupoid& g : gs) {
    std::string text = vg::serialize_groupoid(g);
    CHECK(vg::parse_groupoid(text) == g);
    // serialization is stable: a second round emits the same bytes
    CHECK(vg::serialize_groupoid(vg::parse_groupoid(text)) == text);
  }
}

TEST_CASE("document validation failures name the problem") {
  SUBCASE("composite characteristic") {
    json d = pair_doc();
    d["field"]["p"] = 6;
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::NotPrime);
  }
  SUBCASE("truncated text") {
    std::string text(kPairDoc);
    CHECK_THROWS_AS(vg::parse_groupoid(text.substr(0, 60)),
                    vg::MalformedDocument);
  }
  SUBCASE("unknown key") {
    json d = pair_doc();
    d["extra"] = 1;
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::MalformedDocument);
  }
  SUBCASE("missing key") {
    json d = pair_doc();
    d.erase("epsilon");
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::MalformedDocument);
  }
  SUBCASE("entry outside the field") {
    json d = pair_doc();
    d["alpha"][0][0] = 2;
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::BadCoordinate);
  }
  SUBCASE("negative entry") {
    json d = pair_doc();
    d["alpha"][0][0] = -1;
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::BadCoordinate);
  }
  SUBCASE("fractional entry") {
    json d = pair_doc();
    d["alpha"][0][0] = 0.5;
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::MalformedDocument);
  }
  SUBCASE("wrong row count") {
    json d = pair_doc();
    d["alpha"] = json::array({json::array({1, 0}), json::array({0, 1})});
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::MalformedDocument);
  }
  SUBCASE("unknown multiplication kind") {
    json d = pair_doc();
    d["multiplication"]["kind"] = "mystery";
    CHECK_THROWS_AS(vg::parse_groupoid(d.dump()), vg::MalformedDocument);
  }
}

TEST_CASE("table documents are checked for exact coverage") {
  VectorGroupoid g = vg::pair_groupoid(SpaceRef(1, FieldSpec(2)));
  json d = vg::groupoid_to_json(vg::with_multiplication(g, vg::to_table(g)));
  REQUIRE(d["multiplication"]["entries"].size() == 8);

  SUBCASE("a missing composable pair is named") {
    json broken = d;
    json& entries = broken["multiplication"]["entries"];
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i][0] == 1 && entries[i][1] == 2) {
        entries.erase(i);
        break;
      }
    try {
      vg::parse_groupoid(broken.dump());
      FAIL("incomplete table must be rejected");
    } catch (const vg::TableIncomplete& e) {
      CHECK(e.missing_pair().first == 1);
      CHECK(e.missing_pair().second == 2);
    }
  }
  SUBCASE("an entry for a non-composable pair is named") {
    json broken = d;
    broken["multiplication"]["entries"].push_back(json::array({1, 3, 0}));
    try {
      vg::parse_groupoid(broken.dump());
      FAIL("extraneous entry must be rejected");
    } catch (const vg::TableExtraneous& e) {
      CHECK(e.extra_pair().first == 1);
      CHECK(e.extra_pair().second == 3);
    }
  }
  SUBCASE("a duplicated pair is rejected") {
    json broken = d;
    broken["multiplication"]["entries"].push_back(
        broken["multiplication"]["entries"][0]);
    CHECK_THROWS_AS(vg::parse_groupoid(broken.dump()), vg::MalformedDocument);
  }
  SUBCASE("an index outside the space is rejected") {
    json broken = d;
    broken["multiplication"]["entries"][0][2] = 4;
    CHECK_THROWS_AS(vg::parse_groupoid(broken.dump()), vg::BadCoordinate);
  }
}

TEST_CASE("morphism documents round-trip") {
  vg::GroupoidMorphism anchor =
      vg::anchor_morphism(vg::null_groupoid(SpaceRef(1, FieldSpec(2))));
  std::string text = vg::serialize_morphism(anchor);
  CHECK(vg::parse_morphism(text) == anchor);
  json d = json::parse(text);
  d.erase("f0");
  CHECK_THROWS_AS(vg::parse_morphism(d.dump()), vg::MalformedDocument);
  json d2 = json::parse(text);
  d2["source"]["field"]["p"] = 3;
  CHECK_THROWS_AS(vg::parse_morphism(d2.dump()), vg::Error);
}

TEST_CASE("factorization documents round-trip") {
  VectorGroupoid parent = vg::pair_groupoid(SpaceRef(1, FieldSpec(2)));
  vg::FactorizationInput in{parent, parent,
                            vg::Matrix::identity(2, FieldSpec(2)),
                            vg::Matrix::identity(1, FieldSpec(2))};
  std::string text = vg::serialize_factorization_input(in);
  CHECK(vg::parse_factorization_input(text) == in);
}

TEST_CASE("reports serialize deterministically with elapsed_ms pinned") {
  VectorGroupoid g = vg::pair_groupoid(SpaceRef(1, FieldSpec(2)));
  vg::CheckReport report = vg::check_ehresmann(g);
  std::string a = vg::serialize_report(report);
  std::string b = vg::serialize_report(vg::check_ehresmann(g));
  CHECK(a == b);

  json d = json::parse(a);
  REQUIRE(d.contains("results"));
  REQUIRE(d.contains("summary"));
  CHECK(d["summary"]["pass_count"] == report.pass_count());
  CHECK(d["summary"]["fail_count"] == 0);
  CHECK(d["summary"]["elapsed_ms"] == 0);
  for (const json& r : d["results"]) {
    CHECK(r.contains("law_id"));
    CHECK(r["status"] == "pass");
    CHECK(r.contains("tuples_checked"));
    CHECK_FALSE(r.contains("witness"));
    CHECK_FALSE(r.contains("advisory"));
  }
}

TEST_CASE("failing and advisory results carry witness and mark") {
  FieldSpec f(2);
  // pair groupoid with inversion pinned to the identity; fails P2.2.i-a
  VectorGroupoid g = vg::pair_groupoid(SpaceRef(1, f));
  VectorGroupoid broken(g.total(), g.base(), g.alpha(), g.beta(), g.epsilon(),
                        vg::Matrix::identity(2, f), g.multiplication());
  vg::CheckReport report = vg::check_derived_rules(broken, false);
  json d = json::parse(vg::serialize_report(report));
  bool saw_fail = false;
  for (const json& r : d["results"]) {
    CHECK(r["advisory"] == true);
    if (r["status"] == "fail") {
      saw_fail = true;
      REQUIRE(r.contains("witness"));
      CHECK(r["witness"].contains("elements"));
    }
  }
  CHECK(saw_fail);
}

TEST_CASE("scalar witnesses serialize alongside their elements") {
  FieldSpec f(3);
  vg::CheckReport report;
  vg::CheckResult r;
  r.law_id = "3.1.4.2";
  r.status = vg::LawStatus::fail;
  r.tuples_checked = 7;
  r.witness = vg::Witness{{2, 1}, vg::Scalar{2}};
  report.results.push_back(r);
  json d = json::parse(vg::serialize_report(report));
  CHECK(d["results"][0]["witness"]["elements"] == json::array({2, 1}));
  CHECK(d["results"][0]["witness"]["scalar"] == 2);
  CHECK(d["summary"]["fail_count"] == 1);
}
