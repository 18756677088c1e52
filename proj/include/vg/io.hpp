#pragma once

#include <string>

#include <json.hpp>

#include "vg/checks.hpp"
#include "vg/groupoid.hpp"
#include "vg/morphism.hpp"

namespace vg {

/// Document formats. All top-level key sets are frozen and validated
/// strictly: unknown keys are rejected so typos fail fast. Matrices are
/// row-major arrays of residues; element indices use the little-endian
/// base-p encoding of SpaceRef.

VectorGroupoid groupoid_from_json(const nlohmann::json& j);
nlohmann::json groupoid_to_json(const VectorGroupoid& g);

/// Parse a groupoid document. Throws MalformedDocument (syntax or
/// structure), NotPrime, ShapeMismatch, BadCoordinate, TableIncomplete,
/// TableExtraneous, or CapExceeded.
VectorGroupoid parse_groupoid(const std::string& text);
std::string serialize_groupoid(const VectorGroupoid& g);

GroupoidMorphism morphism_from_json(const nlohmann::json& j);
nlohmann::json morphism_to_json(const GroupoidMorphism& m);
GroupoidMorphism parse_morphism(const std::string& text);
std::string serialize_morphism(const GroupoidMorphism& m);

/// Inputs of the universal-property factorization: a source groupoid over
/// X, the parent being pulled back, and the pair of maps (u, h) to factor.
struct FactorizationInput {
  VectorGroupoid source;
  VectorGroupoid parent;
  Matrix u;
  Matrix h;

  bool operator==(const FactorizationInput&) const = default;
};

FactorizationInput parse_factorization_input(const std::string& text);
std::string serialize_factorization_input(const FactorizationInput& in);

/// Reports serialize with sorted keys and a fixed layout, so equal reports
/// produce byte-identical files. elapsed_ms is always written as 0 to keep
/// that guarantee; wall time goes to stderr instead.
nlohmann::json report_to_json(const CheckReport& report);
std::string serialize_report(const CheckReport& report);

}  // namespace vg
