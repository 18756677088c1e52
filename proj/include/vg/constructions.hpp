#pragma once

#include <memory>

#include "vg/groupoid.hpp"
#include "vg/morphism.hpp"

namespace vg {

/// Groupoid on V with V0 = V, every structure map the identity, and x * x = x
/// as the only products.
VectorGroupoid null_groupoid(const SpaceRef& v);

/// Groupoid on V over the zero space: every pair composes, the product is
/// addition, inversion is negation.
VectorGroupoid single_unit_groupoid(const SpaceRef& v);

/// Groupoid on X x X over X with (x, y) * (y, z) = (x, z), units on the
/// diagonal, inversion the coordinate swap.
VectorGroupoid pair_groupoid(const SpaceRef& x);

/// A pullback groupoid kept together with the data it was built from. The
/// `structure` field is the working groupoid (over coordinates in the span
/// of `pullback_basis`); the other fields expose the construction inputs.
struct InducedGroupoid {
  std::shared_ptr<const VectorGroupoid> parent;
  Matrix h;        // parent base dim x dim(X)
  SpaceRef base;   // X
  Matrix pullback_basis;  // ambient (2 dim X + parent total dim) x k
  VectorGroupoid structure;
};

/// Pull `parent` back along h : X -> parent base. Elements of the result are
/// coordinates of ambient triples (x, y, a) with h(x) = source_of(a) and
/// h(y) = target_of(a); products compose the third block in the parent.
/// The basis is the kernel basis of the pullback constraint, so
/// dim(result) = 2 dim X + dim parent - rank(constraint).
InducedGroupoid induced_groupoid(const VectorGroupoid& parent, const Matrix& h,
                                 const SpaceRef& x);

/// The morphism (alpha stacked over beta, identity) from g into the pair
/// groupoid of its base. Checked before return; g is transitive exactly when
/// this map is surjective on arrows.
GroupoidMorphism anchor_morphism(const VectorGroupoid& g);

/// The morphism (third-block projection, h) from ig.structure onto its
/// parent. Checked before return.
GroupoidMorphism canonical_projection(const InducedGroupoid& ig);

}  // namespace vg
