#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "vg/matrix.hpp"
#include "vg/space.hpp"

namespace vg {

class VectorGroupoid;
class GroupoidEval;

/// Multiplication backends. Each one is total on the composable domain
/// { (x, y) : target_of(x) == source_of(y) } determined by the alpha/beta
/// matrices of the owning groupoid.

/// x * x = x; only equal elements compose.
struct NullRule {
  bool operator==(const NullRule&) const = default;
};

/// Every pair composes; the product is the vector sum.
struct SingleUnitRule {
  bool operator==(const SingleUnitRule&) const = default;
};

/// V splits as base x base; (x, y) * (y, z) = (x, z).
struct PairRule {
  SpaceRef base;
  bool operator==(const PairRule&) const = default;
};

/// Explicit product table. Keys must cover exactly the composable pairs.
struct TableRule {
  std::map<std::pair<ElementIndex, ElementIndex>, ElementIndex> entries;
  bool operator==(const TableRule&) const = default;
};

/// Pullback of a parent groupoid along a linear map h : X -> parent base.
/// Elements are coordinates in the span of `basis`, whose columns are
/// ambient vectors (x, y, a) with h(x) = source_of(a), h(y) = target_of(a).
struct InducedRule {
  std::shared_ptr<const VectorGroupoid> parent;
  Matrix h;      // parent base dim x dim(X)
  Matrix basis;  // ambient dim x k, columns independent

  bool operator==(const InducedRule& o) const;
};

using MultiplicationBackend =
    std::variant<NullRule, SingleUnitRule, PairRule, TableRule, InducedRule>;

struct ComposablePair {
  ElementIndex x;
  ElementIndex y;
  bool operator==(const ComposablePair&) const = default;
};

/// A finite set of arrows closed under a verified group structure: the
/// arrows fixing one base point, with their full product table.
struct IsotropyGroup {
  ElementIndex base_point;             // index in the base space
  ElementIndex unit_element;           // index in the total space
  std::vector<ElementIndex> elements;  // ascending
  /// table[i * elements.size() + j] = elements[i] * elements[j].
  std::vector<ElementIndex> table;
  std::uint64_t tuples_checked;
};

/// Conjugation z -> inverse_of(x) * z * x between two isotropy groups,
/// verified to be a bijective homomorphism.
struct ConjugationIso {
  ElementIndex via;  // the arrow x doing the conjugating
  IsotropyGroup domain;
  IsotropyGroup codomain;
  std::vector<ElementIndex> image;  // image[i] = conjugate of domain.elements[i]
};

enum class StructureMap { source, target, unit, inversion };

/// A finite vector groupoid presentation: total space V, base space V0, the
/// four structure matrices, and a multiplication backend. Construction
/// validates shapes and backend invariants only; the axioms themselves are
/// the job of the check suites, so deliberately broken presentations can be
/// represented and examined.
class VectorGroupoid {
 public:
  VectorGroupoid(SpaceRef total, SpaceRef base, Matrix alpha, Matrix beta,
                 Matrix epsilon, Matrix inversion,
                 MultiplicationBackend multiplication);

  const FieldSpec& field() const { return total_.field(); }
  const SpaceRef& total() const { return total_; }
  const SpaceRef& base() const { return base_; }
  const Matrix& alpha() const { return alpha_; }
  const Matrix& beta() const { return beta_; }
  const Matrix& epsilon() const { return epsilon_; }
  const Matrix& inversion() const { return inversion_; }
  const MultiplicationBackend& multiplication() const { return mult_; }

  ElementIndex source_of(ElementIndex x) const;
  ElementIndex target_of(ElementIndex x) const;
  ElementIndex unit_of(ElementIndex u) const;
  ElementIndex inverse_of(ElementIndex x) const;
  ElementIndex apply_structure(StructureMap map, ElementIndex e) const;

  bool composable(ElementIndex x, ElementIndex y) const;

  /// Product via the active backend. Throws NotComposable when
  /// target_of(x) != source_of(y); backend-specific failures surface as
  /// TableIncomplete, AmbientEscape, or EncodingFailure.
  ElementIndex compose(ElementIndex x, ElementIndex y) const;

  /// All composable pairs in lexicographic (x, y) order.
  std::vector<ComposablePair> composable_pairs() const;

  /// Arrows with source_of == target_of == u, verified to form a group
  /// under compose. Throws NotAGroup with a witness otherwise.
  IsotropyGroup isotropy_group(ElementIndex u) const;

  /// Conjugation by x from the isotropy group at source_of(x) to the one at
  /// target_of(x). Throws NotAnIsomorphism with a witness when the map
  /// fails to be a bijective homomorphism.
  ConjugationIso isotropy_conjugation(ElementIndex x) const;

  /// Variants reusing an existing evaluation cache, for callers running
  /// many queries against the same groupoid.
  IsotropyGroup isotropy_group_with(const GroupoidEval& ev,
                                    ElementIndex u) const;
  ConjugationIso isotropy_conjugation_with(const GroupoidEval& ev,
                                           ElementIndex x) const;

  bool operator==(const VectorGroupoid&) const;

 private:
  void validate_table(const TableRule& table) const;
  void validate_induced(const InducedRule& rule) const;

  SpaceRef total_;
  SpaceRef base_;
  Matrix alpha_;
  Matrix beta_;
  Matrix epsilon_;
  Matrix inversion_;
  MultiplicationBackend mult_;
};

/// Export the active multiplication as an explicit table.
TableRule to_table(const VectorGroupoid& g);

/// Same presentation with the multiplication backend swapped out.
VectorGroupoid with_multiplication(const VectorGroupoid& g,
                                   MultiplicationBackend multiplication);

/// Precomputed evaluation caches for one groupoid: decoded coordinates and
/// structure-map images for every element, fibre lists for every base point,
/// and a fast product path per backend. Build once per enumeration-heavy
/// task; read-only afterwards.
class GroupoidEval {
 public:
  explicit GroupoidEval(const VectorGroupoid& g);

  const VectorGroupoid& groupoid() const { return *g_; }
  std::uint64_t total_size() const { return g_->total().size(); }
  std::uint64_t base_size() const { return g_->base().size(); }

  ElementIndex source_of(ElementIndex x) const { return source_[x]; }
  ElementIndex target_of(ElementIndex x) const { return target_[x]; }
  ElementIndex unit_of(ElementIndex u) const { return unit_[u]; }
  ElementIndex inverse_of(ElementIndex x) const { return inverse_[x]; }

  const Vec& vector_of(ElementIndex x) const { return vectors_[x]; }
  const Vec& base_vector_of(ElementIndex u) const { return base_vectors_[u]; }

  /// Elements x with source_of(x) == u, ascending.
  const std::vector<ElementIndex>& source_fibre(ElementIndex u) const {
    return source_fibres_[u];
  }
  /// Elements x with target_of(x) == u, ascending.
  const std::vector<ElementIndex>& target_fibre(ElementIndex u) const {
    return target_fibres_[u];
  }

  bool composable(ElementIndex x, ElementIndex y) const {
    return target_[x] == source_[y];
  }

  ElementIndex compose(ElementIndex x, ElementIndex y) const;

 private:
  const VectorGroupoid* g_;
  std::vector<ElementIndex> source_;
  std::vector<ElementIndex> target_;
  std::vector<ElementIndex> unit_;
  std::vector<ElementIndex> inverse_;
  std::vector<Vec> vectors_;
  std::vector<Vec> base_vectors_;
  std::vector<std::vector<ElementIndex>> source_fibres_;
  std::vector<std::vector<ElementIndex>> target_fibres_;

  // Backend accelerators.
  std::unordered_map<std::uint64_t, ElementIndex> table_lookup_;  // table only
  std::unique_ptr<GroupoidEval> parent_;        // induced only
  std::vector<Vec> ambient_;                    // induced only
  std::vector<ElementIndex> parent_arrow_;      // induced only
  std::optional<Matrix> basis_left_inverse_;    // induced only
};

}  // namespace vg
