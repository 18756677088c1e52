#include <doctest.h>

#include <map>
#include <utility>
#include <vector>

#include "vg/constructions.hpp"
#include "vg/errors.hpp"
#include "vg/groupoid.hpp"

using vg::ElementIndex;
using vg::FieldSpec;
using vg::SpaceRef;
using vg::VectorGroupoid;

namespace {

VectorGroupoid pair2() { return vg::pair_groupoid(SpaceRef(1, FieldSpec(2))); }

}  // namespace

TEST_CASE("pair groupoid over GF(2): structure map values") {
  VectorGroupoid g = pair2();
  // element k encodes (k mod 2, k div 2)
  CHECK(g.total().size() == 4);
  CHECK(g.source_of(1) == 1);
  CHECK(g.target_of(1) == 0);
  CHECK(g.unit_of(1) == 3);   // (1,1)
  CHECK(g.inverse_of(1) == 2);  // swap of (1,0)
  CHECK(g.apply_structure(vg::StructureMap::source, 1) == 1);
  CHECK(g.apply_structure(vg::StructureMap::target, 1) == 0);
  CHECK(g.apply_structure(vg::StructureMap::unit, 1) == 3);
  CHECK(g.apply_structure(vg::StructureMap::inversion, 1) == 2);

  CHECK(g.composable(1, 2));
  CHECK(g.compose(1, 2) == 3);  // (1,0)*(0,1) = (1,1)
  CHECK_FALSE(g.composable(1, 3));
  try {
    g.compose(1, 3);
    FAIL("compose(1,3) must throw");
  } catch (const vg::NotComposable& e) {
    CHECK(e.target_of_x() == 0);
    CHECK(e.source_of_y() == 1);
  }
  CHECK_THROWS_AS(g.compose(0, 4), vg::IndexOutOfRange);
}

TEST_CASE("composable pair counting matches the fibre formula") {
  for (std::uint32_t p : {2u, 3u}) {
    VectorGroupoid g = vg::pair_groupoid(SpaceRef(1, FieldSpec(p)));
    auto pairs = g.composable_pairs();

    // sum over base points of |beta fibre| * |alpha fibre|
    std::uint64_t expected = 0;
    for (ElementIndex u = 0; u < g.base().size(); ++u) {
      std::uint64_t into = 0, outof = 0;
      for (ElementIndex x = 0; x < g.total().size(); ++x) {
        if (g.target_of(x) == u) ++into;
        if (g.source_of(x) == u) ++outof;
      }
      expected += into * outof;
    }
    CHECK(pairs.size() == expected);
    CHECK(expected == static_cast<std::uint64_t>(p) * p * p);

    // lexicographic order and agreement with composable()
    std::size_t at = 0;
    for (ElementIndex x = 0; x < g.total().size(); ++x)
      for (ElementIndex y = 0; y < g.total().size(); ++y)
        if (g.composable(x, y)) {
          REQUIRE(at < pairs.size());
          CHECK(pairs[at] == vg::ComposablePair{x, y});
          ++at;
        }
    CHECK(at == pairs.size());
  }
}

TEST_CASE("table backend reproduces the backend it was exported from") {
  VectorGroupoid g = pair2();
  VectorGroupoid t = vg::with_multiplication(g, vg::to_table(g));
  CHECK(t.composable_pairs() == g.composable_pairs());
  for (const auto& [x, y] : g.composable_pairs())
    CHECK(t.compose(x, y) == g.compose(x, y));
}

TEST_CASE("table coverage is validated at construction") {
  VectorGroupoid g = pair2();
  vg::TableRule full = vg::to_table(g);
  CHECK(full.entries.size() == 8);

  vg::TableRule missing = full;
  missing.entries.erase({1, 2});
  try {
    vg::with_multiplication(g, missing);
    FAIL("incomplete table must throw");
  } catch (const vg::TableIncomplete& e) {
    CHECK(e.missing_pair() == std::pair<ElementIndex, ElementIndex>{1, 2});
  }

  vg::TableRule extra = full;
  extra.entries[{1, 3}] = 0;  // (1,0) and (1,1) do not compose
  try {
    vg::with_multiplication(g, extra);
    FAIL("extraneous entry must throw");
  } catch (const vg::TableExtraneous& e) {
    CHECK(e.extra_pair() == std::pair<ElementIndex, ElementIndex>{1, 3});
  }

  vg::TableRule off = full;
  off.entries[{1, 2}] = 4;
  CHECK_THROWS_AS(vg::with_multiplication(g, off), vg::BadCoordinate);
}

TEST_CASE("single-unit groupoid composes by vector addition") {
  VectorGroupoid g = vg::single_unit_groupoid(SpaceRef(1, FieldSpec(3)));
  CHECK(g.base().size() == 1);
  for (ElementIndex x = 0; x < 3; ++x) {
    for (ElementIndex y = 0; y < 3; ++y) {
      CHECK(g.composable(x, y));
      CHECK(g.compose(x, y) == (x + y) % 3);
    }
    CHECK(g.inverse_of(x) == (3 - x) % 3);
  }
}

TEST_CASE("null groupoid composes only equals") {
  VectorGroupoid g = vg::null_groupoid(SpaceRef(1, FieldSpec(3)));
  for (ElementIndex x = 0; x < 3; ++x) {
    CHECK(g.compose(x, x) == x);
    CHECK(g.inverse_of(x) == x);
    for (ElementIndex y = 0; y < 3; ++y)
      CHECK(g.composable(x, y) == (x == y));
  }
}

TEST_CASE("induced backend composes through the parent") {
  VectorGroupoid parent = pair2();
  vg::Matrix h(1, 2, FieldSpec(2), {1, 0});
  vg::InducedGroupoid ig =
      vg::induced_groupoid(parent, h, SpaceRef(2, FieldSpec(2)));
  const VectorGroupoid& g = ig.structure;
  vg::GroupoidMorphism proj = vg::canonical_projection(ig);

  // the projection is a functor: it maps products to products
  for (const auto& [x, y] : g.composable_pairs()) {
    ElementIndex xy = g.compose(x, y);
    vg::Vec px = proj.f.apply(g.total().vector_of(x));
    vg::Vec py = proj.f.apply(g.total().vector_of(y));
    vg::Vec pxy = proj.f.apply(g.total().vector_of(xy));
    ElementIndex a = parent.total().index_of(px);
    ElementIndex b = parent.total().index_of(py);
    CHECK(parent.compose(a, b) == parent.total().index_of(pxy));
  }
}

TEST_CASE("evaluation cache agrees with direct methods on every backend") {
  std::vector<VectorGroupoid> gs;
  gs.push_back(pair2());
  gs.push_back(vg::with_multiplication(pair2(), vg::to_table(pair2())));
  gs.push_back(vg::single_unit_groupoid(SpaceRef(2, FieldSpec(3))));
  gs.push_back(vg::null_groupoid(SpaceRef(1, FieldSpec(5))));
  vg::Matrix h(1, 1, FieldSpec(2), {1});
  gs.push_back(
      vg::induced_groupoid(pair2(), h, SpaceRef(1, FieldSpec(2))).structure);

  for (const VectorGroupoid& g : gs) {
    vg::GroupoidEval ev(g);
    CHECK(ev.total_size() == g.total().size());
    CHECK(ev.base_size() == g.base().size());
    for (ElementIndex x = 0; x < g.total().size(); ++x) {
      CHECK(ev.source_of(x) == g.source_of(x));
      CHECK(ev.target_of(x) == g.target_of(x));
      CHECK(ev.inverse_of(x) == g.inverse_of(x));
    }
    for (ElementIndex u = 0; u < g.base().size(); ++u)
      CHECK(ev.unit_of(u) == g.unit_of(u));
    for (ElementIndex x = 0; x < g.total().size(); ++x)
      for (ElementIndex y = 0; y < g.total().size(); ++y) {
        CHECK(ev.composable(x, y) == g.composable(x, y));
        if (g.composable(x, y)) CHECK(ev.compose(x, y) == g.compose(x, y));
      }
  }
}

TEST_CASE("isotropy group of the single-unit groupoid is the whole space") {
  VectorGroupoid g = vg::single_unit_groupoid(SpaceRef(1, FieldSpec(3)));
  vg::IsotropyGroup iso = g.isotropy_group(0);
  CHECK(iso.base_point == 0);
  CHECK(iso.unit_element == 0);
  CHECK(iso.elements == std::vector<ElementIndex>{0, 1, 2});
  // addition table mod 3
  CHECK(iso.table == std::vector<ElementIndex>{0, 1, 2, 1, 2, 0, 2, 0, 1});
}

TEST_CASE("isotropy groups of the pair groupoid are trivial") {
  VectorGroupoid g = pair2();
  for (ElementIndex u = 0; u < g.base().size(); ++u) {
    vg::IsotropyGroup iso = g.isotropy_group(u);
    CHECK(iso.elements == std::vector<ElementIndex>{g.unit_of(u)});
    CHECK(iso.table == std::vector<ElementIndex>{g.unit_of(u)});
  }
}

TEST_CASE("conjugation between isotropy groups maps unit to unit") {
  VectorGroupoid g = pair2();
  // arrow 1 = (1,0) runs from base 1 to base 0
  vg::ConjugationIso iso = g.isotropy_conjugation(1);
  CHECK(iso.via == 1);
  CHECK(iso.domain.base_point == 1);
  CHECK(iso.codomain.base_point == 0);
  CHECK(iso.image == std::vector<ElementIndex>{g.unit_of(0)});
}

TEST_CASE("broken product surfaces as NotAGroup with a witness") {
  VectorGroupoid g = vg::single_unit_groupoid(SpaceRef(1, FieldSpec(2)));
  vg::TableRule bad = vg::to_table(g);
  bad.entries[{1, 1}] = 1;  // 1 + 1 should be 0
  VectorGroupoid broken = vg::with_multiplication(g, bad);
  try {
    broken.isotropy_group(0);
    FAIL("broken inverse law must throw");
  } catch (const vg::NotAGroup& e) {
    CHECK_FALSE(e.witness().empty());
  }
}

TEST_CASE("construction validates matrix shapes") {
  FieldSpec f(2);
  SpaceRef total(2, f), base(1, f);
  vg::Matrix alpha(1, 2, f, {1, 0});
  vg::Matrix beta(1, 2, f, {0, 1});
  vg::Matrix eps(2, 1, f, {1, 1});
  vg::Matrix inv(2, 2, f, {0, 1, 1, 0});
  CHECK_NOTHROW(VectorGroupoid(total, base, alpha, beta, eps, inv,
                               vg::PairRule{base}));
  // alpha with the wrong shape
  CHECK_THROWS_AS(VectorGroupoid(total, base, eps, beta, eps, inv,
                                 vg::PairRule{base}),
                  vg::ShapeMismatch);
  // pair rule with a block that does not halve the total space
  CHECK_THROWS_AS(VectorGroupoid(total, base, alpha, beta, eps, inv,
                                 vg::PairRule{total}),
                  vg::ShapeMismatch);
}

TEST_CASE("with_multiplication swaps only the backend") {
  VectorGroupoid g = pair2();
  VectorGroupoid t = vg::with_multiplication(g, vg::to_table(g));
  CHECK(t.alpha() == g.alpha());
  CHECK(t.beta() == g.beta());
  CHECK(t.epsilon() == g.epsilon());
  CHECK(t.inversion() == g.inversion());
  CHECK_FALSE(t == g);  // different backend
  CHECK(t == vg::with_multiplication(g, vg::to_table(g)));
}
