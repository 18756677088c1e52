#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vg/groupoid.hpp"

namespace vg {

enum class LawStatus { pass, fail, skipped };

/// Element tuple violating a law, plus the scalar for the laws quantified
/// over GF(p). Layouts per law are documented in the README.
struct Witness {
  std::vector<ElementIndex> elements;
  std::optional<Scalar> scalar;
  bool operator==(const Witness&) const = default;
};

struct CheckResult {
  std::string law_id;
  LawStatus status = LawStatus::pass;
  std::uint64_t tuples_checked = 0;
  std::optional<Witness> witness;
  /// Set when the law was evaluated on a groupoid that already failed the
  /// core axioms, so its verdict rests on broken operations.
  bool advisory = false;
  bool operator==(const CheckResult&) const = default;
};

struct CheckReport {
  std::vector<CheckResult> results;

  std::uint64_t pass_count() const;
  std::uint64_t fail_count() const;
  std::uint64_t skipped_count() const;
  bool no_failures() const { return fail_count() == 0; }
  bool all_passed() const {
    return fail_count() == 0 && skipped_count() == 0;
  }
  bool operator==(const CheckReport&) const = default;
};

/// Core groupoid axioms: surjectivity of the source and target maps,
/// injectivity of the unit map, associativity with bidirectional
/// definedness, unit laws, inverse laws.
/// Laws: alpha-surjective, beta-surjective, epsilon-injective, G1, G2, G3.
CheckReport check_ehresmann(const VectorGroupoid& g);

/// Vector-space compatibility axioms: linearity of the structure maps
/// (guaranteed by the matrix representation, recorded as 3.1.2-structural),
/// the sum-with-inverse law 3.1.3.1, and the four quasi-linearity laws
/// 3.1.4.1 through 3.1.4.4 over their fibre-matched domains.
CheckReport check_vector_axioms(const VectorGroupoid& g);

/// Consequences of the axioms, re-verified independently as a cross-oracle:
/// P2.1.i through P2.1.v, the six structure-matrix identities P2.2.i-a
/// through P2.2.ii-b, and the two absorption laws eps0-absorb-left/right.
/// When `ehresmann_passed` is false every result is marked advisory.
CheckReport check_derived_rules(const VectorGroupoid& g,
                                bool ehresmann_passed = true);

/// Subspace structure: the zero fibres of alpha and beta and their
/// intersection are subspaces (alpha-fibre-subspace, beta-fibre-subspace,
/// isotropy-zero-subspace), inversion is a linear automorphism
/// (inversion-automorphism), and the zero isotropy set is a group under the
/// product (isotropy-zero-group).
CheckReport check_subspaces(const VectorGroupoid& g);

/// Re-evaluate one law at a witness tuple. Returns true when the law holds
/// there, false when the witness exhibits a violation. Supports every law id
/// produced by the four suites above plus the transitivity laws
/// anchor-rank-enum-agree and P2.1.viii. Throws Error for unknown ids or
/// malformed witnesses.
bool law_holds_at(const VectorGroupoid& g, std::string_view law_id,
                  const Witness& w);

/// The fixed catalog of groupoid law ids, in report order.
const std::vector<std::string>& groupoid_law_ids();

/// First result with status fail. Throws Error when the report has none.
const CheckResult& first_failing_law(const CheckReport& report);

}  // namespace vg
