#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vg/types.hpp"

namespace vg {

/// Root of the library's exception hierarchy. Everything the library throws
/// on bad inputs or violated contracts derives from this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

/// Multiplicative inverse of 0 requested.
class ZeroInverse : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A coordinate outside [0, p), or an element index outside its space.
class BadCoordinate : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured work bound.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// compose(x, y) requested where target_of(x) != source_of(y). Carries both
/// base indices so callers can report the mismatch.
class NotComposable : public Error {
 public:
  NotComposable(const std::string& msg, ElementIndex target_of_x,
                ElementIndex source_of_y)
      : Error(msg), target_of_x_(target_of_x), source_of_y_(source_of_y) {}

  ElementIndex target_of_x() const { return target_of_x_; }
  ElementIndex source_of_y() const { return source_of_y_; }

 private:
  ElementIndex target_of_x_;
  ElementIndex source_of_y_;
};

/// Table backend is missing an entry for a composable pair.
class TableIncomplete : public Error {
 public:
  TableIncomplete(const std::string& msg, ElementIndex x, ElementIndex y)
      : Error(msg), pair_(x, y) {}

  const std::pair<ElementIndex, ElementIndex>& missing_pair() const {
    return pair_;
  }

 private:
  std::pair<ElementIndex, ElementIndex> pair_;
};

/// Table backend has an entry for a non-composable pair.
class TableExtraneous : public Error {
 public:
  TableExtraneous(const std::string& msg, ElementIndex x, ElementIndex y)
      : Error(msg), pair_(x, y) {}

  const std::pair<ElementIndex, ElementIndex>& extra_pair() const {
    return pair_;
  }

 private:
  std::pair<ElementIndex, ElementIndex> pair_;
};

/// A pullback-backed product left the span of the stored basis. Indicates a
/// corrupt basis or parent, never a well-formed construction.
class AmbientEscape : public Error {
 public:
  using Error::Error;
};

/// A vector that should lie in a stored basis span has no coordinates in it.
class EncodingFailure : public Error {
 public:
  using Error::Error;
};

/// Candidate isotropy set failed a group law. Witness holds the offending
/// element indices (1 to 3 of them, matching the violated law's arity).
class NotAGroup : public Error {
 public:
  NotAGroup(const std::string& msg, std::vector<ElementIndex> witness)
      : Error(msg), witness_(std::move(witness)) {}

  const std::vector<ElementIndex>& witness() const { return witness_; }

 private:
  std::vector<ElementIndex> witness_;
};

/// Conjugation map failed to be a bijective homomorphism.
class NotAnIsomorphism : public Error {
 public:
  NotAnIsomorphism(const std::string& msg, std::vector<ElementIndex> witness)
      : Error(msg), witness_(std::move(witness)) {}

  const std::vector<ElementIndex>& witness() const { return witness_; }

 private:
  std::vector<ElementIndex> witness_;
};

/// A linear-map pair offered as a morphism violates a morphism law. Carries
/// the first failing law id and the witness tuple that violates it.
class NotAMorphism : public Error {
 public:
  NotAMorphism(const std::string& msg, std::string law_id,
               std::vector<ElementIndex> witness_elements,
               std::optional<Scalar> witness_scalar = std::nullopt)
      : Error(msg),
        law_id_(std::move(law_id)),
        witness_elements_(std::move(witness_elements)),
        witness_scalar_(witness_scalar) {}

  const std::string& law_id() const { return law_id_; }
  const std::vector<ElementIndex>& witness_elements() const {
    return witness_elements_;
  }
  std::optional<Scalar> witness_scalar() const { return witness_scalar_; }

 private:
  std::string law_id_;
  std::vector<ElementIndex> witness_elements_;
  std::optional<Scalar> witness_scalar_;
};

/// Input document is not valid JSON or not a valid document of its kind.
class MalformedDocument : public Error {
 public:
  using Error::Error;
};

}  // namespace vg
