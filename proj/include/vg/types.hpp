#pragma once

#include <cstdint>

namespace vg {

/// Canonical residue in [0, p). p <= 251, so products fit in 32 bits.
using Scalar = std::uint16_t;

/// Position of an element inside an enumerated space, via the little-endian
/// base-p digit encoding (see SpaceRef).
using ElementIndex = std::uint64_t;

}  // namespace vg
