#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "vg/checks.hpp"
#include "vg/groupoid.hpp"

namespace vg {

struct InducedGroupoid;

/// A pair of linear maps (f on arrows, f0 on base points) between two
/// groupoids. Shapes and field are validated at construction; whether the
/// maps actually respect the structure is the job of check_morphism.
struct GroupoidMorphism {
  GroupoidMorphism(VectorGroupoid source, VectorGroupoid target, Matrix f,
                   Matrix f0);

  VectorGroupoid source;
  VectorGroupoid target;
  Matrix f;   // dim(target total) x dim(source total)
  Matrix f0;  // dim(target base) x dim(source base)

  bool operator==(const GroupoidMorphism&) const = default;
};

/// Morphism laws: the source/target intertwining identities D2.2.1-alpha and
/// D2.2.1-beta, the product law D2.2.2 over all composable pairs of the
/// source, the derived unit/inversion intertwinings P2.3-eps and P2.3-inv
/// (these must pass whenever the D2.2 laws do, making them a cross-oracle),
/// and 3.2-structural for linearity, which the matrix representation
/// guarantees.
CheckReport check_morphism(const GroupoidMorphism& m);

/// Re-evaluate one morphism law at a witness tuple; mirrors law_holds_at.
bool morphism_law_holds_at(const GroupoidMorphism& m, std::string_view law_id,
                           const Witness& w);

const std::vector<std::string>& morphism_law_ids();

/// Output of the universal-property factorization: the unique mediating
/// morphism v together with the reports backing its construction.
struct Factorization {
  GroupoidMorphism v;          // source -> induced structure, f0 = identity
  CheckReport input_report;    // laws of the given (u, h)
  CheckReport v_report;        // laws of v itself
  CheckReport theorem_report;  // commutation and uniqueness laws
};

/// Factor u through the pullback: given a morphism (u, h) from `source` into
/// ig's parent, produce the unique v with projection . v = u. Verifies the
/// commutation identities T4.1.alpha-commute, T4.1.beta-commute,
/// T4.1.projection-commute and pointwise uniqueness T4.1.unique.
/// Throws NotAMorphism when (u, h) fails its morphism laws,
/// std::invalid_argument when ig was built from a different h, and
/// EncodingFailure when the pointwise formula leaves the pullback span
/// (impossible for a genuine morphism).
Factorization universal_factorization(const VectorGroupoid& source,
                                      const Matrix& u, const Matrix& h,
                                      const InducedGroupoid& ig);

struct TransitivityResult {
  /// Ground truth by enumeration: every base pair (u, v) is hit by an arrow.
  bool transitive;
  bool rank_surjective;
  bool enum_surjective;
  /// Least base pair missed by the anchor, when not transitive.
  std::optional<std::pair<ElementIndex, ElementIndex>> missing_pair;
  /// Laws anchor-rank-enum-agree and P2.1.viii (the latter skipped when not
  /// transitive).
  CheckReport report;
};

/// Decide transitivity by anchor rank, cross-validated by enumerating the
/// anchor image; when transitive, additionally verify that conjugation gives
/// an isomorphism between the isotropy groups of every base pair.
TransitivityResult is_transitive(const VectorGroupoid& g);

}  // namespace vg
