#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vg/field.hpp"
#include "vg/matrix.hpp"

namespace vg {

/// Largest admitted p^dim when constructing a space. The CLI overrides this
/// from the VG_CAP environment variable. Values above 2^31 are rejected so
/// quadratic loop bounds stay inside 64 bits.
std::uint64_t space_cap();
void set_space_cap(std::uint64_t cap);

inline constexpr std::uint64_t kDefaultSpaceCap = std::uint64_t{1} << 16;

/// Work bound for pair/triple enumeration loops.
inline constexpr std::uint64_t kTupleCap = std::uint64_t{1} << 27;

/// The coordinate space GF(p)^dim with its element enumeration. Element k
/// decodes to the little-endian digit vector of k in base p: coordinate j is
/// the p^j digit. This encoding is shared with the on-disk table format.
class SpaceRef {
 public:
  SpaceRef(std::size_t dim, FieldSpec field);

  std::size_t dim() const { return dim_; }
  const FieldSpec& field() const { return field_; }

  /// Number of elements, p^dim. A 0-dimensional space has the single
  /// element 0.
  std::uint64_t size() const { return size_; }

  Vec vector_of(ElementIndex index) const;
  ElementIndex index_of(std::span<const Scalar> v) const;

  bool operator==(const SpaceRef&) const = default;

 private:
  std::size_t dim_;
  FieldSpec field_;
  std::uint64_t size_;
};

/// All indices of the subspace spanned by `basis`, ascending. Vectors must
/// live in `space`. Grows the span incrementally, so cost is linear in the
/// subspace size times dim.
std::vector<ElementIndex> enumerate_span(const std::vector<Vec>& basis,
                                         const SpaceRef& space);

/// Guard a |V|^2-shaped loop over `space`; throws CapExceeded beyond the
/// tuple cap.
void require_pair_enumeration(const SpaceRef& space);

/// Guard a |V|^3-shaped loop over `space`.
void require_triple_enumeration(const SpaceRef& space);

}  // namespace vg
