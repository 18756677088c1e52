#include "vg/space.hpp"

#include <atomic>
#include <set>
#include <string>

namespace vg {

namespace {

std::atomic<std::uint64_t> g_space_cap{kDefaultSpaceCap};

}  // namespace

std::uint64_t space_cap() { return g_space_cap.load(); }

void set_space_cap(std::uint64_t cap) {
  if (cap == 0 || cap > (std::uint64_t{1} << 31))
    throw CapExceeded("space cap must be in [1, 2^31], got " +
                      std::to_string(cap));
  g_space_cap.store(cap);
}

SpaceRef::SpaceRef(std::size_t dim, FieldSpec field)
    : dim_(dim), field_(field), size_(1) {
  const std::uint64_t cap = space_cap();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (size_ > cap / field_.p())
      throw CapExceeded("space " + std::to_string(field_.p()) + "^" +
                        std::to_string(dim_) + " exceeds the cap of " +
                        std::to_string(cap) + " elements");
    size_ *= field_.p();
  }
  if (size_ > cap)
    throw CapExceeded("space " + std::to_string(field_.p()) + "^" +
                      std::to_string(dim_) + " exceeds the cap of " +
                      std::to_string(cap) + " elements");
}

Vec SpaceRef::vector_of(ElementIndex index) const {
  if (index >= size_)
    throw IndexOutOfRange("element index " + std::to_string(index) +
                          " in a space of " + std::to_string(size_) +
                          " elements");
  Vec v(dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    v[j] = static_cast<Scalar>(index % field_.p());
    index /= field_.p();
  }
  return v;
}

ElementIndex SpaceRef::index_of(std::span<const Scalar> v) const {
  if (v.size() != dim_)
    throw ShapeMismatch("coordinate vector of length " +
                        std::to_string(v.size()) + " in a space of dimension " +
                        std::to_string(dim_));
  ElementIndex index = 0;
  std::uint64_t weight = 1;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (v[j] >= field_.p())
      throw BadCoordinate("coordinate " + std::to_string(v[j]) +
                          " is not a residue mod " +
                          std::to_string(field_.p()));
    index += weight * v[j];
    weight *= field_.p();
  }
  return index;
}

std::vector<ElementIndex> enumerate_span(const std::vector<Vec>& basis,
                                         const SpaceRef& space) {
  std::set<ElementIndex> members{0};
  for (const Vec& b : basis) {
    ElementIndex bi = space.index_of(b);  // validates length and residues
    (void)bi;
    std::set<ElementIndex> grown;
    for (ElementIndex m : members) {
      Vec mv = space.vector_of(m);
      Vec step = mv;
      for (Scalar k = 0; k < space.field().p(); ++k) {
        grown.insert(space.index_of(step));
        step = vec_add(step, b, space.field());
      }
    }
    members.swap(grown);
  }
  return {members.begin(), members.end()};
}

void require_pair_enumeration(const SpaceRef& space) {
  unsigned __int128 work =
      static_cast<unsigned __int128>(space.size()) * space.size();
  if (work > kTupleCap)
    throw CapExceeded("pair enumeration over " + std::to_string(space.size()) +
                      " elements exceeds the work bound");
}

void require_triple_enumeration(const SpaceRef& space) {
  unsigned __int128 work =
      static_cast<unsigned __int128>(space.size()) * space.size();
  work *= space.size();
  if (work > kTupleCap)
    throw CapExceeded("triple enumeration over " +
                      std::to_string(space.size()) +
                      " elements exceeds the work bound");
}

}  // namespace vg
