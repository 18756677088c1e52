#include <doctest.h>

#include <string>
#include <vector>

#include "vg/checks.hpp"
#include "vg/constructions.hpp"
#include "vg/errors.hpp"

using vg::CheckReport;
using vg::CheckResult;
using vg::ElementIndex;
using vg::FieldSpec;
using vg::LawStatus;
using vg::SpaceRef;
using vg::VectorGroupoid;
using vg::Witness;

namespace {

VectorGroupoid pair2() { return vg::pair_groupoid(SpaceRef(1, FieldSpec(2))); }

CheckReport run_all(const VectorGroupoid& g) {
  CheckReport all = vg::check_ehresmann(g);
  auto absorb = [&all](const CheckReport& r) {
    all.results.insert(all.results.end(), r.results.begin(), r.results.end());
  };
  absorb(vg::check_vector_axioms(g));
  absorb(vg::check_derived_rules(g));
  absorb(vg::check_subspaces(g));
  return all;
}

const CheckResult& find(const CheckReport& r, const std::string& id) {
  for (const CheckResult& res : r.results)
    if (res.law_id == id) return res;
  FAIL(("law not in report: " + id).c_str());
  static CheckResult unreachable;
  return unreachable;
}

// single-unit groupoid over GF(3) whose inversion wrongly fixes every
// element; x + i(x) = 2x != 0, so the inverse laws break at x = 1
VectorGroupoid broken_inversion() {
  FieldSpec f(3);
  return VectorGroupoid(SpaceRef(1, f), SpaceRef(0, f), vg::Matrix(0, 1, f),
                        vg::Matrix(0, 1, f), vg::Matrix(1, 0, f),
                        vg::Matrix(1, 1, f, {1}), vg::SingleUnitRule{});
}

}  // namespace

TEST_CASE("well-formed constructions pass every suite") {
  std::vector<VectorGroupoid> gs;
  gs.push_back(pair2());
  gs.push_back(vg::pair_groupoid(SpaceRef(1, FieldSpec(3))));
  gs.push_back(vg::null_groupoid(SpaceRef(2, FieldSpec(2))));
  gs.push_back(vg::single_unit_groupoid(SpaceRef(1, FieldSpec(5))));
  gs.push_back(vg::with_multiplication(pair2(), vg::to_table(pair2())));
  vg::Matrix h(1, 1, FieldSpec(3), {2});
  gs.push_back(
      vg::induced_groupoid(vg::pair_groupoid(SpaceRef(1, FieldSpec(3))), h,
                           SpaceRef(1, FieldSpec(3)))
          .structure);

  for (const VectorGroupoid& g : gs) {
    CheckReport report = run_all(g);
    CHECK(report.fail_count() == 0);
    CHECK(report.skipped_count() == 0);
    for (const CheckResult& r : report.results) {
      CHECK(r.status == LawStatus::pass);
      CHECK_FALSE(r.witness.has_value());
      CHECK_FALSE(r.advisory);
    }
  }
}

TEST_CASE("suite results follow the law catalog order") {
  CheckReport report = run_all(pair2());
  const auto& ids = vg::groupoid_law_ids();
  // the four suites cover the catalog up to the two transitivity laws
  REQUIRE(report.results.size() == ids.size() - 2);
  for (std::size_t i = 0; i < report.results.size(); ++i)
    CHECK(report.results[i].law_id == ids[i]);
}

TEST_CASE("tuple counts for the pair groupoid over GF(2) are frozen") {
  CheckReport report = run_all(pair2());
  CHECK(find(report, "G1").tuples_checked == 48);
  CHECK(find(report, "G2").tuples_checked == 4);
  CHECK(find(report, "G3").tuples_checked == 4);
  CHECK(find(report, "3.1.3.1").tuples_checked == 4);
  CHECK(find(report, "3.1.4.2").tuples_checked == 16);  // 8 pairs x 2 scalars
  CHECK(find(report, "P2.1.i").tuples_checked == 8);
  CHECK(find(report, "isotropy-zero-group").tuples_checked == 4);
}

TEST_CASE("derived laws hold whenever the axioms hold") {
  // cross-oracle: independently enumerated consequences may not disagree
  // with the axiom suites on any well-formed construction
  std::vector<VectorGroupoid> gs;
  for (std::uint32_t p : {2u, 3u}) {
    gs.push_back(vg::pair_groupoid(SpaceRef(1, FieldSpec(p))));
    gs.push_back(vg::null_groupoid(SpaceRef(1, FieldSpec(p))));
    gs.push_back(vg::single_unit_groupoid(SpaceRef(2, FieldSpec(p))));
  }
  for (const VectorGroupoid& g : gs) {
    bool axioms = vg::check_ehresmann(g).fail_count() == 0 &&
                  vg::check_vector_axioms(g).fail_count() == 0;
    REQUIRE(axioms);
    CHECK(vg::check_derived_rules(g).fail_count() == 0);
    CHECK(vg::check_subspaces(g).fail_count() == 0);
  }
}

TEST_CASE("broken inversion is caught with a replayable witness") {
  VectorGroupoid g = broken_inversion();

  CheckReport ehr = vg::check_ehresmann(g);
  CHECK(ehr.fail_count() > 0);
  CHECK(find(ehr, "G3").status == LawStatus::fail);

  CheckReport vec = vg::check_vector_axioms(g);
  const CheckResult& sum_law = find(vec, "3.1.3.1");
  REQUIRE(sum_law.status == LawStatus::fail);
  REQUIRE(sum_law.witness.has_value());
  CHECK(sum_law.witness->elements == std::vector<ElementIndex>{1});
  CHECK_FALSE(vg::law_holds_at(g, "3.1.3.1", *sum_law.witness));
  CHECK(vg::law_holds_at(g, "3.1.3.1", Witness{{0}, {}}));

  // every failing result in any suite must replay
  for (const CheckReport& rep :
       {ehr, vec, vg::check_derived_rules(g, false), vg::check_subspaces(g)}) {
    for (const CheckResult& r : rep.results) {
      if (r.status != LawStatus::fail) continue;
      REQUIRE(r.witness.has_value());
      CHECK_FALSE(vg::law_holds_at(g, r.law_id, *r.witness));
    }
  }
}

TEST_CASE("derived results carry the advisory mark when the core failed") {
  VectorGroupoid g = broken_inversion();
  CheckReport derived = vg::check_derived_rules(g, false);
  for (const CheckResult& r : derived.results) CHECK(r.advisory);
  CheckReport clean = vg::check_derived_rules(pair2());
  for (const CheckResult& r : clean.results) CHECK_FALSE(r.advisory);
}

TEST_CASE("matrix-decided laws extract the least pointwise witness") {
  // pair groupoid with the identity as inversion: source_of(i(x)) is then
  // alpha, not beta, first differing at x = 1
  VectorGroupoid g = pair2();
  VectorGroupoid broken(
      g.total(), g.base(), g.alpha(), g.beta(), g.epsilon(),
      vg::Matrix::identity(2, FieldSpec(2)), g.multiplication());
  CheckReport derived = vg::check_derived_rules(broken, false);
  const CheckResult& r = find(derived, "P2.2.i-a");
  REQUIRE(r.status == LawStatus::fail);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->elements == std::vector<ElementIndex>{1});
  CHECK_FALSE(vg::law_holds_at(broken, "P2.2.i-a", *r.witness));
  CHECK(vg::law_holds_at(broken, "P2.2.i-a", Witness{{0}, {}}));
}

TEST_CASE("law_holds_at rejects unknown ids and malformed witnesses") {
  VectorGroupoid g = pair2();
  CHECK_THROWS_AS(vg::law_holds_at(g, "no-such-law", Witness{{0}, {}}),
                  vg::Error);
  CHECK_THROWS_AS(vg::law_holds_at(g, "G1", Witness{{0}, {}}), vg::Error);
  CHECK_THROWS_AS(vg::law_holds_at(g, "G2", Witness{{99}, {}}), vg::Error);
  CHECK_THROWS_AS(vg::law_holds_at(g, "3.1.4.2", Witness{{0, 0}, {}}),
                  vg::Error);  // scalar-quantified law needs its scalar
}

TEST_CASE("first_failing_law finds the earliest failure") {
  CheckReport report = vg::check_vector_axioms(broken_inversion());
  const CheckResult& bad = vg::first_failing_law(report);
  CHECK(bad.law_id == "3.1.3.1");
  CheckReport clean = vg::check_vector_axioms(pair2());
  CHECK_THROWS_AS(vg::first_failing_law(clean), vg::Error);
}

TEST_CASE("structural laws report pass with no enumeration") {
  CheckReport report = run_all(pair2());
  CHECK(find(report, "3.1.2-structural").tuples_checked == 0);
  CHECK(find(report, "alpha-surjective").tuples_checked == 0);
  CHECK(find(report, "inversion-automorphism").tuples_checked == 0);
}

TEST_CASE("surjectivity failures carry an unreached base point") {
  // alpha = beta = 0 never reaches base point 1; epsilon = 0 collides at 0
  FieldSpec f(2);
  VectorGroupoid g(SpaceRef(1, f), SpaceRef(1, f), vg::Matrix(1, 1, f),
                   vg::Matrix(1, 1, f), vg::Matrix(1, 1, f),
                   vg::Matrix::identity(1, f), vg::NullRule{});
  CheckReport ehr = vg::check_ehresmann(g);
  const CheckResult& alpha = find(ehr, "alpha-surjective");
  REQUIRE(alpha.status == LawStatus::fail);
  REQUIRE(alpha.witness.has_value());
  CHECK(alpha.witness->elements == std::vector<ElementIndex>{1});
  CHECK_FALSE(vg::law_holds_at(g, "alpha-surjective", *alpha.witness));

  const CheckResult& eps = find(ehr, "epsilon-injective");
  REQUIRE(eps.status == LawStatus::fail);
  REQUIRE(eps.witness.has_value());
  CHECK_FALSE(vg::law_holds_at(g, "epsilon-injective", *eps.witness));
}
