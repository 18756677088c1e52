#include "vg/checks.hpp"

#include <algorithm>
#include <utility>

namespace vg {

namespace {

// ---------------------------------------------------------------------------
// Pointwise law evaluators. Each returns true when the law holds at the given
// tuple (vacuously when the tuple is outside the law's quantifier domain).
// The enumeration loops and the witness replay path both call these, so a
// reported witness always reproduces its violation.

bool alpha_surjective_at(const GroupoidEval& ev, ElementIndex u) {
  return !ev.source_fibre(u).empty();
}

bool beta_surjective_at(const GroupoidEval& ev, ElementIndex u) {
  return !ev.target_fibre(u).empty();
}

bool epsilon_injective_at(const GroupoidEval& ev, ElementIndex u) {
  // A linear unit map is injective iff its kernel is 0; element 0 always
  // maps to element 0.
  return u == 0 || ev.unit_of(u) != 0;
}

bool g1_with_left_product(const GroupoidEval& ev, ElementIndex x,
                          ElementIndex y, ElementIndex xy, ElementIndex z) {
  bool left_def = ev.composable(xy, z);
  if (ev.composable(y, z)) {
    ElementIndex yz = ev.compose(y, z);
    bool right_def = ev.composable(x, yz);
    if (left_def != right_def) return false;
    if (!left_def) return true;
    return ev.compose(xy, z) == ev.compose(x, yz);
  }
  return !left_def;
}

bool g1_at(const GroupoidEval& ev, ElementIndex x, ElementIndex y,
           ElementIndex z) {
  if (ev.composable(x, y))
    return g1_with_left_product(ev, x, y, ev.compose(x, y), z);
  if (ev.composable(y, z))
    return !ev.composable(x, ev.compose(y, z));
  return true;
}

bool g2_at(const GroupoidEval& ev, ElementIndex x) {
  ElementIndex ea = ev.unit_of(ev.source_of(x));
  ElementIndex eb = ev.unit_of(ev.target_of(x));
  return ev.composable(ea, x) && ev.compose(ea, x) == x &&
         ev.composable(x, eb) && ev.compose(x, eb) == x;
}

bool g3_at(const GroupoidEval& ev, ElementIndex x) {
  ElementIndex xi = ev.inverse_of(x);
  if (!ev.composable(xi, x) || !ev.composable(x, xi)) return false;
  return ev.compose(xi, x) == ev.unit_of(ev.target_of(x)) &&
         ev.compose(x, xi) == ev.unit_of(ev.source_of(x));
}

bool sum_with_inverse_at(const GroupoidEval& ev, ElementIndex x) {
  const FieldSpec& f = ev.groupoid().field();
  Vec lhs = vec_add(ev.vector_of(x), ev.vector_of(ev.inverse_of(x)), f);
  Vec rhs = vec_add(ev.vector_of(ev.unit_of(ev.source_of(x))),
                    ev.vector_of(ev.unit_of(ev.target_of(x))), f);
  return lhs == rhs;
}

bool left_sum_law_at(const GroupoidEval& ev, ElementIndex x, ElementIndex y,
                     ElementIndex z) {
  if (ev.source_of(y) != ev.target_of(x) || ev.source_of(z) != ev.target_of(x))
    return true;
  const FieldSpec& f = ev.groupoid().field();
  const Vec& eb = ev.vector_of(ev.unit_of(ev.target_of(x)));
  Vec w = vec_sub(vec_add(ev.vector_of(y), ev.vector_of(z), f), eb, f);
  ElementIndex wi = ev.groupoid().total().index_of(w);
  if (!ev.composable(x, wi)) return false;
  const Vec& lhs = ev.vector_of(ev.compose(x, wi));
  Vec rhs = vec_sub(vec_add(ev.vector_of(ev.compose(x, y)),
                            ev.vector_of(ev.compose(x, z)), f),
                    ev.vector_of(x), f);
  return lhs == rhs;
}

bool left_scalar_law_at(const GroupoidEval& ev, ElementIndex x, ElementIndex y,
                        Scalar k) {
  if (!ev.composable(x, y)) return true;
  const FieldSpec& f = ev.groupoid().field();
  Scalar k1 = f.sub(1 % f.p(), k);
  const Vec& eb = ev.vector_of(ev.unit_of(ev.target_of(x)));
  Vec w = vec_add(vec_scale(k, ev.vector_of(y), f), vec_scale(k1, eb, f), f);
  ElementIndex wi = ev.groupoid().total().index_of(w);
  if (!ev.composable(x, wi)) return false;
  const Vec& lhs = ev.vector_of(ev.compose(x, wi));
  Vec rhs = vec_add(vec_scale(k, ev.vector_of(ev.compose(x, y)), f),
                    vec_scale(k1, ev.vector_of(x), f), f);
  return lhs == rhs;
}

bool right_sum_law_at(const GroupoidEval& ev, ElementIndex x, ElementIndex y,
                      ElementIndex z) {
  if (ev.target_of(y) != ev.source_of(x) || ev.target_of(z) != ev.source_of(x))
    return true;
  const FieldSpec& f = ev.groupoid().field();
  const Vec& ea = ev.vector_of(ev.unit_of(ev.source_of(x)));
  Vec w = vec_sub(vec_add(ev.vector_of(y), ev.vector_of(z), f), ea, f);
  ElementIndex wi = ev.groupoid().total().index_of(w);
  if (!ev.composable(wi, x)) return false;
  const Vec& lhs = ev.vector_of(ev.compose(wi, x));
  Vec rhs = vec_sub(vec_add(ev.vector_of(ev.compose(y, x)),
                            ev.vector_of(ev.compose(z, x)), f),
                    ev.vector_of(x), f);
  return lhs == rhs;
}

bool right_scalar_law_at(const GroupoidEval& ev, ElementIndex x,
                         ElementIndex y, Scalar k) {
  if (!ev.composable(y, x)) return true;
  const FieldSpec& f = ev.groupoid().field();
  Scalar k1 = f.sub(1 % f.p(), k);
  const Vec& ea = ev.vector_of(ev.unit_of(ev.source_of(x)));
  Vec w = vec_add(vec_scale(k, ev.vector_of(y), f), vec_scale(k1, ea, f), f);
  ElementIndex wi = ev.groupoid().total().index_of(w);
  if (!ev.composable(wi, x)) return false;
  const Vec& lhs = ev.vector_of(ev.compose(wi, x));
  Vec rhs = vec_add(vec_scale(k, ev.vector_of(ev.compose(y, x)), f),
                    vec_scale(k1, ev.vector_of(x), f), f);
  return lhs == rhs;
}

bool product_source_target_at(const GroupoidEval& ev, ElementIndex x,
                              ElementIndex y) {
  if (!ev.composable(x, y)) return true;
  ElementIndex xy = ev.compose(x, y);
  return ev.source_of(xy) == ev.source_of(x) &&
         ev.target_of(xy) == ev.target_of(y);
}

bool inverse_swaps_ends_at(const GroupoidEval& ev, ElementIndex x) {
  ElementIndex xi = ev.inverse_of(x);
  return ev.source_of(xi) == ev.target_of(x) &&
         ev.target_of(xi) == ev.source_of(x);
}

bool unit_ends_at(const GroupoidEval& ev, ElementIndex u) {
  ElementIndex e = ev.unit_of(u);
  return ev.source_of(e) == u && ev.target_of(e) == u;
}

bool unit_idempotent_at(const GroupoidEval& ev, ElementIndex u) {
  ElementIndex e = ev.unit_of(u);
  if (!ev.composable(e, e)) return false;
  return ev.compose(e, e) == e && ev.inverse_of(e) == e;
}

bool antihomomorphism_at(const GroupoidEval& ev, ElementIndex x,
                         ElementIndex y) {
  if (!ev.composable(x, y)) return true;
  ElementIndex yi = ev.inverse_of(y);
  ElementIndex xi = ev.inverse_of(x);
  if (!ev.composable(yi, xi)) return false;
  return ev.inverse_of(ev.compose(x, y)) == ev.compose(yi, xi);
}

bool source_of_inverse_at(const GroupoidEval& ev, ElementIndex x) {
  return ev.source_of(ev.inverse_of(x)) == ev.target_of(x);
}

bool target_of_inverse_at(const GroupoidEval& ev, ElementIndex x) {
  return ev.target_of(ev.inverse_of(x)) == ev.source_of(x);
}

bool inverse_fixes_units_at(const GroupoidEval& ev, ElementIndex u) {
  return ev.inverse_of(ev.unit_of(u)) == ev.unit_of(u);
}

bool inverse_involutive_at(const GroupoidEval& ev, ElementIndex x) {
  return ev.inverse_of(ev.inverse_of(x)) == x;
}

bool source_section_at(const GroupoidEval& ev, ElementIndex u) {
  return ev.source_of(ev.unit_of(u)) == u;
}

bool target_section_at(const GroupoidEval& ev, ElementIndex u) {
  return ev.target_of(ev.unit_of(u)) == u;
}

bool zero_unit_left_at(const GroupoidEval& ev, ElementIndex x) {
  if (ev.source_of(x) != 0) return true;
  ElementIndex e0 = ev.unit_of(0);
  return ev.composable(e0, x) && ev.compose(e0, x) == x;
}

bool zero_unit_right_at(const GroupoidEval& ev, ElementIndex x) {
  if (ev.target_of(x) != 0) return true;
  ElementIndex e0 = ev.unit_of(0);
  return ev.composable(x, e0) && ev.compose(x, e0) == x;
}

bool in_span(const Matrix& basis_columns, const Vec& v) {
  return solve(basis_columns, v).has_value();
}

Matrix columns_matrix(const std::vector<Vec>& columns, std::size_t rows,
                      const FieldSpec& f) {
  return Matrix::from_columns(rows, columns, f);
}

bool alpha_fibre_subspace_at(const GroupoidEval& ev, ElementIndex x) {
  const VectorGroupoid& g = ev.groupoid();
  Matrix b = columns_matrix(kernel_basis(g.alpha()), g.total().dim(),
                            g.field());
  return (ev.source_of(x) == 0) == in_span(b, ev.vector_of(x));
}

bool beta_fibre_subspace_at(const GroupoidEval& ev, ElementIndex x) {
  const VectorGroupoid& g = ev.groupoid();
  Matrix b = columns_matrix(kernel_basis(g.beta()), g.total().dim(),
                            g.field());
  return (ev.target_of(x) == 0) == in_span(b, ev.vector_of(x));
}

bool isotropy_zero_subspace_at(const GroupoidEval& ev, ElementIndex x) {
  const VectorGroupoid& g = ev.groupoid();
  Matrix b = columns_matrix(kernel_basis(vstack(g.alpha(), g.beta())),
                            g.total().dim(), g.field());
  bool in_set = ev.source_of(x) == 0 && ev.target_of(x) == 0;
  return in_set == in_span(b, ev.vector_of(x));
}

bool inversion_automorphism_at(const GroupoidEval& ev, ElementIndex x) {
  return x == 0 || ev.inverse_of(x) != 0;
}

/// Conjunction of all group obligations of the witness's arity over the zero
/// isotropy set; see isotropy_group for the obligations themselves.
bool isotropy_zero_group_at(const GroupoidEval& ev,
                            const std::vector<ElementIndex>& w) {
  std::vector<ElementIndex> elements;
  for (ElementIndex x : ev.source_fibre(0))
    if (ev.target_of(x) == 0) elements.push_back(x);
  auto member = [&](ElementIndex x) {
    return std::binary_search(elements.begin(), elements.end(), x);
  };
  ElementIndex e = ev.unit_of(0);
  auto safe_compose = [&](ElementIndex a, ElementIndex b,
                          ElementIndex& out) {
    if (!ev.composable(a, b)) return false;
    out = ev.compose(a, b);
    return true;
  };
  if (w.size() == 1) {
    ElementIndex x = w[0];
    if (!member(e)) return false;
    if (!member(x)) return true;  // outside the set, nothing to check
    ElementIndex lhs, rhs;
    if (!safe_compose(e, x, lhs) || lhs != x) return false;
    if (!safe_compose(x, e, rhs) || rhs != x) return false;
    ElementIndex xi = ev.inverse_of(x);
    if (!member(xi)) return false;
    if (!safe_compose(x, xi, lhs) || lhs != e) return false;
    if (!safe_compose(xi, x, rhs) || rhs != e) return false;
    return true;
  }
  if (w.size() == 2) {
    if (!member(w[0]) || !member(w[1])) return true;
    ElementIndex p;
    return safe_compose(w[0], w[1], p) && member(p);
  }
  if (w.size() == 3) {
    if (!member(w[0]) || !member(w[1]) || !member(w[2])) return true;
    ElementIndex ab, bc, l, r;
    if (!safe_compose(w[0], w[1], ab) || !safe_compose(w[1], w[2], bc))
      return false;
    if (!safe_compose(ab, w[2], l) || !safe_compose(w[0], bc, r)) return false;
    return l == r;
  }
  throw Error("isotropy-zero-group witness must have 1 to 3 elements");
}

bool conjugation_iso_at(const GroupoidEval& ev, ElementIndex x) {
  try {
    ev.groupoid().isotropy_conjugation_with(ev, x);
    return true;
  } catch (const NotAnIsomorphism&) {
    return false;
  } catch (const NotAGroup&) {
    return false;
  }
}

bool anchor_agree_at(const GroupoidEval& ev, ElementIndex u, ElementIndex v) {
  const VectorGroupoid& g = ev.groupoid();
  bool rank_full =
      rank(vstack(g.alpha(), g.beta())) == 2 * g.base().dim();
  bool pair_hit = false;
  for (ElementIndex x : ev.source_fibre(u))
    if (ev.target_of(x) == v) {
      pair_hit = true;
      break;
    }
  // Violated when the rank oracle claims surjectivity but (u, v) is missing
  // from the enumerated anchor image.
  return !(rank_full && !pair_hit);
}

// ---------------------------------------------------------------------------
// Enumeration helpers.

struct LawScan {
  std::string id;
  std::uint64_t tuples = 0;
  std::optional<Witness> witness = std::nullopt;

  bool failed() const { return witness.has_value(); }

  void record(Witness w) {
    if (!witness) witness = std::move(w);
  }

  CheckResult finish() const {
    return CheckResult{id, failed() ? LawStatus::fail : LawStatus::pass,
                       tuples, witness, false};
  }
};

/// Scan every element of the total space.
template <typename Eval>
CheckResult scan_elements(const GroupoidEval& ev, std::string id,
                          Eval&& holds) {
  LawScan scan{std::move(id)};
  for (ElementIndex x = 0; x < ev.total_size(); ++x) {
    ++scan.tuples;
    if (!holds(ev, x)) {
      scan.record(Witness{{x}, std::nullopt});
      break;
    }
  }
  return scan.finish();
}

/// Scan every element of the base space.
template <typename Eval>
CheckResult scan_base(const GroupoidEval& ev, std::string id, Eval&& holds) {
  LawScan scan{std::move(id)};
  for (ElementIndex u = 0; u < ev.base_size(); ++u) {
    ++scan.tuples;
    if (!holds(ev, u)) {
      scan.record(Witness{{u}, std::nullopt});
      break;
    }
  }
  return scan.finish();
}

/// Scan every composable pair in lexicographic order.
template <typename Eval>
CheckResult scan_composable_pairs(const GroupoidEval& ev, std::string id,
                                  Eval&& holds) {
  require_pair_enumeration(ev.groupoid().total());
  LawScan scan{std::move(id)};
  for (ElementIndex x = 0; x < ev.total_size() && !scan.failed(); ++x)
    for (ElementIndex y : ev.source_fibre(ev.target_of(x))) {
      ++scan.tuples;
      if (!holds(ev, x, y)) {
        scan.record(Witness{{x, y}, std::nullopt});
        break;
      }
    }
  return scan.finish();
}

/// A matrix-identity law: decided by exact matrix equality, with the least
/// pointwise counterexample extracted for the witness on failure.
template <typename Eval>
CheckResult matrix_law(const GroupoidEval& ev, std::string id,
                       const Matrix& lhs, const Matrix& rhs, bool over_base,
                       Eval&& holds) {
  LawScan scan{std::move(id)};
  if (lhs != rhs) {
    std::uint64_t n = over_base ? ev.base_size() : ev.total_size();
    for (ElementIndex e = 0; e < n; ++e)
      if (!holds(ev, e)) {
        scan.record(Witness{{e}, std::nullopt});
        break;
      }
    if (!scan.failed())
      throw Error("internal: matrix identity " + scan.id +
                  " fails but no element witnesses it");
  }
  return scan.finish();
}

/// Membership sets for the subspace laws: the enumerated zero fibre against
/// the enumerated span of the corresponding kernel basis.
CheckResult set_equality_law(const GroupoidEval& ev, std::string id,
                             const std::vector<ElementIndex>& actual,
                             const Matrix& kernel_map,
                             bool (*holds)(const GroupoidEval&, ElementIndex)) {
  const VectorGroupoid& g = ev.groupoid();
  std::vector<ElementIndex> span =
      enumerate_span(kernel_basis(kernel_map), g.total());
  LawScan scan{std::move(id)};
  scan.tuples = actual.size();
  if (actual != span) {
    // Least element on which set membership and span membership disagree.
    std::vector<ElementIndex> diff;
    std::set_symmetric_difference(actual.begin(), actual.end(), span.begin(),
                                  span.end(), std::back_inserter(diff));
    if (diff.empty())
      throw Error("internal: set mismatch for " + scan.id +
                  " with empty symmetric difference");
    if (holds(ev, diff.front()))
      throw Error("internal: witness for " + scan.id +
                  " does not reproduce the violation");
    scan.record(Witness{{diff.front()}, std::nullopt});
  }
  return scan.finish();
}

void self_check(const VectorGroupoid& g, const CheckReport& report) {
  for (const CheckResult& r : report.results) {
    if (r.status != LawStatus::fail) continue;
    if (!r.witness)
      throw Error("internal: failing law " + r.law_id + " carries no witness");
    if (law_holds_at(g, r.law_id, *r.witness))
      throw Error("internal: witness for " + r.law_id +
                  " does not reproduce the violation");
  }
}

}  // namespace

std::uint64_t CheckReport::pass_count() const {
  std::uint64_t n = 0;
  for (const CheckResult& r : results)
    if (r.status == LawStatus::pass) ++n;
  return n;
}

std::uint64_t CheckReport::fail_count() const {
  std::uint64_t n = 0;
  for (const CheckResult& r : results)
    if (r.status == LawStatus::fail) ++n;
  return n;
}

std::uint64_t CheckReport::skipped_count() const {
  std::uint64_t n = 0;
  for (const CheckResult& r : results)
    if (r.status == LawStatus::skipped) ++n;
  return n;
}

CheckReport check_ehresmann(const VectorGroupoid& g) {
  GroupoidEval ev(g);
  CheckReport report;

  // Surjectivity and injectivity are rank facts about the linear maps; the
  // enumerated base supplies witnesses when they fail.
  auto rank_law = [&](std::string id, const Matrix& map,
                      bool (*holds)(const GroupoidEval&, ElementIndex)) {
    LawScan scan{std::move(id)};
    if (rank(map) != g.base().dim()) {
      for (ElementIndex u = 0; u < ev.base_size(); ++u)
        if (!holds(ev, u)) {
          scan.record(Witness{{u}, std::nullopt});
          break;
        }
      if (!scan.failed())
        throw Error("internal: rank criterion for " + scan.id +
                    " fails but no base point witnesses it");
    }
    return scan.finish();
  };
  report.results.push_back(
      rank_law("alpha-surjective", g.alpha(), alpha_surjective_at));
  report.results.push_back(
      rank_law("beta-surjective", g.beta(), beta_surjective_at));
  report.results.push_back(
      rank_law("epsilon-injective", g.epsilon(), epsilon_injective_at));

  {
    // Associativity with the bidirectional definedness clause. For a
    // composable (x, y) every z can matter; otherwise only z making (y, z)
    // composable can create a one-sided product.
    require_triple_enumeration(g.total());
    LawScan scan{"G1"};
    for (ElementIndex x = 0; x < ev.total_size() && !scan.failed(); ++x)
      for (ElementIndex y = 0; y < ev.total_size() && !scan.failed(); ++y) {
        if (ev.composable(x, y)) {
          ElementIndex xy = ev.compose(x, y);
          for (ElementIndex z = 0; z < ev.total_size(); ++z) {
            ++scan.tuples;
            if (!g1_with_left_product(ev, x, y, xy, z)) {
              scan.record(Witness{{x, y, z}, std::nullopt});
              break;
            }
          }
        } else {
          for (ElementIndex z : ev.source_fibre(ev.target_of(y))) {
            ++scan.tuples;
            if (!g1_at(ev, x, y, z)) {
              scan.record(Witness{{x, y, z}, std::nullopt});
              break;
            }
          }
        }
      }
    report.results.push_back(scan.finish());
  }

  report.results.push_back(scan_elements(ev, "G2", g2_at));
  report.results.push_back(scan_elements(ev, "G3", g3_at));

  self_check(g, report);
  return report;
}

CheckReport check_vector_axioms(const VectorGroupoid& g) {
  GroupoidEval ev(g);
  CheckReport report;

  // Linearity of the four structure maps is built into the matrix
  // representation, so there is nothing to enumerate.
  report.results.push_back(
      CheckResult{"3.1.2-structural", LawStatus::pass, 0, std::nullopt, false});

  report.results.push_back(scan_elements(ev, "3.1.3.1", sum_with_inverse_at));

  require_triple_enumeration(g.total());
  {
    LawScan scan{"3.1.4.1"};
    for (ElementIndex x = 0; x < ev.total_size() && !scan.failed(); ++x) {
      const std::vector<ElementIndex>& fibre =
          ev.source_fibre(ev.target_of(x));
      for (ElementIndex y : fibre) {
        for (ElementIndex z : fibre) {
          ++scan.tuples;
          if (!left_sum_law_at(ev, x, y, z)) {
            scan.record(Witness{{x, y, z}, std::nullopt});
            break;
          }
        }
        if (scan.failed()) break;
      }
    }
    report.results.push_back(scan.finish());
  }
  {
    LawScan scan{"3.1.4.2"};
    const Scalar p = g.field().p();
    for (ElementIndex x = 0; x < ev.total_size() && !scan.failed(); ++x)
      for (ElementIndex y : ev.source_fibre(ev.target_of(x))) {
        for (Scalar k = 0; k < p; ++k) {
          ++scan.tuples;
          if (!left_scalar_law_at(ev, x, y, k)) {
            scan.record(Witness{{x, y}, k});
            break;
          }
        }
        if (scan.failed()) break;
      }
    report.results.push_back(scan.finish());
  }
  {
    LawScan scan{"3.1.4.3"};
    for (ElementIndex x = 0; x < ev.total_size() && !scan.failed(); ++x) {
      const std::vector<ElementIndex>& fibre =
          ev.target_fibre(ev.source_of(x));
      for (ElementIndex y : fibre) {
        for (ElementIndex z : fibre) {
          ++scan.tuples;
          if (!right_sum_law_at(ev, x, y, z)) {
            scan.record(Witness{{x, y, z}, std::nullopt});
            break;
          }
        }
        if (scan.failed()) break;
      }
    }
    report.results.push_back(scan.finish());
  }
  {
    LawScan scan{"3.1.4.4"};
    const Scalar p = g.field().p();
    for (ElementIndex x = 0; x < ev.total_size() && !scan.failed(); ++x)
      for (ElementIndex y : ev.target_fibre(ev.source_of(x))) {
        for (Scalar k = 0; k < p; ++k) {
          ++scan.tuples;
          if (!right_scalar_law_at(ev, x, y, k)) {
            scan.record(Witness{{x, y}, k});
            break;
          }
        }
        if (scan.failed()) break;
      }
    report.results.push_back(scan.finish());
  }

  self_check(g, report);
  return report;
}

CheckReport check_derived_rules(const VectorGroupoid& g,
                                bool ehresmann_passed) {
  GroupoidEval ev(g);
  CheckReport report;

  report.results.push_back(
      scan_composable_pairs(ev, "P2.1.i", product_source_target_at));
  report.results.push_back(scan_elements(ev, "P2.1.ii", inverse_swaps_ends_at));
  report.results.push_back(scan_base(ev, "P2.1.iii", unit_ends_at));
  report.results.push_back(scan_base(ev, "P2.1.iv", unit_idempotent_at));
  report.results.push_back(
      scan_composable_pairs(ev, "P2.1.v", antihomomorphism_at));

  const Matrix id_total = Matrix::identity(g.total().dim(), g.field());
  const Matrix id_base = Matrix::identity(g.base().dim(), g.field());
  report.results.push_back(matrix_law(ev, "P2.2.i-a", g.alpha() * g.inversion(),
                                      g.beta(), false, source_of_inverse_at));
  report.results.push_back(matrix_law(ev, "P2.2.i-b", g.beta() * g.inversion(),
                                      g.alpha(), false, target_of_inverse_at));
  report.results.push_back(matrix_law(ev, "P2.2.i-c",
                                      g.inversion() * g.epsilon(), g.epsilon(),
                                      true, inverse_fixes_units_at));
  report.results.push_back(matrix_law(ev, "P2.2.i-d",
                                      g.inversion() * g.inversion(), id_total,
                                      false, inverse_involutive_at));
  report.results.push_back(matrix_law(ev, "P2.2.ii-a",
                                      g.alpha() * g.epsilon(), id_base, true,
                                      source_section_at));
  report.results.push_back(matrix_law(ev, "P2.2.ii-b",
                                      g.beta() * g.epsilon(), id_base, true,
                                      target_section_at));

  {
    LawScan scan{"eps0-absorb-left"};
    for (ElementIndex x : ev.source_fibre(0)) {
      ++scan.tuples;
      if (!zero_unit_left_at(ev, x)) {
        scan.record(Witness{{x}, std::nullopt});
        break;
      }
    }
    report.results.push_back(scan.finish());
  }
  {
    LawScan scan{"eps0-absorb-right"};
    for (ElementIndex x : ev.target_fibre(0)) {
      ++scan.tuples;
      if (!zero_unit_right_at(ev, x)) {
        scan.record(Witness{{x}, std::nullopt});
        break;
      }
    }
    report.results.push_back(scan.finish());
  }

  if (!ehresmann_passed)
    for (CheckResult& r : report.results) r.advisory = true;

  self_check(g, report);
  return report;
}

CheckReport check_subspaces(const VectorGroupoid& g) {
  GroupoidEval ev(g);
  CheckReport report;

  std::vector<ElementIndex> alpha_zero = ev.source_fibre(0);
  report.results.push_back(set_equality_law(
      ev, "alpha-fibre-subspace", alpha_zero, g.alpha(),
      alpha_fibre_subspace_at));

  std::vector<ElementIndex> beta_zero = ev.target_fibre(0);
  report.results.push_back(set_equality_law(
      ev, "beta-fibre-subspace", beta_zero, g.beta(), beta_fibre_subspace_at));

  std::vector<ElementIndex> both;
  for (ElementIndex x : alpha_zero)
    if (ev.target_of(x) == 0) both.push_back(x);
  report.results.push_back(set_equality_law(ev, "isotropy-zero-subspace", both,
                                            vstack(g.alpha(), g.beta()),
                                            isotropy_zero_subspace_at));

  {
    LawScan scan{"inversion-automorphism"};
    if (rank(g.inversion()) != g.total().dim()) {
      for (ElementIndex x = 0; x < ev.total_size(); ++x)
        if (!inversion_automorphism_at(ev, x)) {
          scan.record(Witness{{x}, std::nullopt});
          break;
        }
      if (!scan.failed())
        throw Error(
            "internal: singular inversion with no vanishing element");
    }
    report.results.push_back(scan.finish());
  }

  {
    LawScan scan{"isotropy-zero-group"};
    try {
      IsotropyGroup group = g.isotropy_group_with(ev, 0);
      scan.tuples = group.tuples_checked;
    } catch (const NotAGroup& e) {
      scan.record(Witness{e.witness(), std::nullopt});
    }
    report.results.push_back(scan.finish());
  }

  self_check(g, report);
  return report;
}

bool law_holds_at(const VectorGroupoid& g, std::string_view law_id,
                  const Witness& w) {
  GroupoidEval ev(g);
  const std::vector<ElementIndex>& e = w.elements;

  auto need = [&](std::size_t arity) {
    if (e.size() != arity)
      throw Error("law " + std::string(law_id) + " expects a witness of " +
                  std::to_string(arity) + " elements, got " +
                  std::to_string(e.size()));
  };
  auto need_base = [&](ElementIndex u) {
    if (u >= ev.base_size())
      throw IndexOutOfRange("witness base point " + std::to_string(u) +
                            " outside the base space");
  };
  auto need_total = [&](ElementIndex x) {
    if (x >= ev.total_size())
      throw IndexOutOfRange("witness element " + std::to_string(x) +
                            " outside the total space");
  };

  if (law_id == "alpha-surjective") {
    need(1); need_base(e[0]);
    return alpha_surjective_at(ev, e[0]);
  }
  if (law_id == "beta-surjective") {
    need(1); need_base(e[0]);
    return beta_surjective_at(ev, e[0]);
  }
  if (law_id == "epsilon-injective") {
    need(1); need_base(e[0]);
    return epsilon_injective_at(ev, e[0]);
  }
  if (law_id == "G1") {
    need(3); need_total(e[0]); need_total(e[1]); need_total(e[2]);
    return g1_at(ev, e[0], e[1], e[2]);
  }
  if (law_id == "G2") {
    need(1); need_total(e[0]);
    return g2_at(ev, e[0]);
  }
  if (law_id == "G3") {
    need(1); need_total(e[0]);
    return g3_at(ev, e[0]);
  }
  if (law_id == "3.1.2-structural") return true;
  if (law_id == "3.1.3.1") {
    need(1); need_total(e[0]);
    return sum_with_inverse_at(ev, e[0]);
  }
  if (law_id == "3.1.4.1") {
    need(3); need_total(e[0]); need_total(e[1]); need_total(e[2]);
    return left_sum_law_at(ev, e[0], e[1], e[2]);
  }
  if (law_id == "3.1.4.2") {
    need(2); need_total(e[0]); need_total(e[1]);
    if (!w.scalar) throw Error("law 3.1.4.2 needs a scalar in the witness");
    return left_scalar_law_at(ev, e[0], e[1], *w.scalar);
  }
  if (law_id == "3.1.4.3") {
    need(3); need_total(e[0]); need_total(e[1]); need_total(e[2]);
    return right_sum_law_at(ev, e[0], e[1], e[2]);
  }
  if (law_id == "3.1.4.4") {
    need(2); need_total(e[0]); need_total(e[1]);
    if (!w.scalar) throw Error("law 3.1.4.4 needs a scalar in the witness");
    return right_scalar_law_at(ev, e[0], e[1], *w.scalar);
  }
  if (law_id == "P2.1.i") {
    need(2); need_total(e[0]); need_total(e[1]);
    return product_source_target_at(ev, e[0], e[1]);
  }
  if (law_id == "P2.1.ii") {
    need(1); need_total(e[0]);
    return inverse_swaps_ends_at(ev, e[0]);
  }
  if (law_id == "P2.1.iii") {
    need(1); need_base(e[0]);
    return unit_ends_at(ev, e[0]);
  }
  if (law_id == "P2.1.iv") {
    need(1); need_base(e[0]);
    return unit_idempotent_at(ev, e[0]);
  }
  if (law_id == "P2.1.v") {
    need(2); need_total(e[0]); need_total(e[1]);
    return antihomomorphism_at(ev, e[0], e[1]);
  }
  if (law_id == "P2.2.i-a") {
    need(1); need_total(e[0]);
    return source_of_inverse_at(ev, e[0]);
  }
  if (law_id == "P2.2.i-b") {
    need(1); need_total(e[0]);
    return target_of_inverse_at(ev, e[0]);
  }
  if (law_id == "P2.2.i-c") {
    need(1); need_base(e[0]);
    return inverse_fixes_units_at(ev, e[0]);
  }
  if (law_id == "P2.2.i-d") {
    need(1); need_total(e[0]);
    return inverse_involutive_at(ev, e[0]);
  }
  if (law_id == "P2.2.ii-a") {
    need(1); need_base(e[0]);
    return source_section_at(ev, e[0]);
  }
  if (law_id == "P2.2.ii-b") {
    need(1); need_base(e[0]);
    return target_section_at(ev, e[0]);
  }
  if (law_id == "eps0-absorb-left") {
    need(1); need_total(e[0]);
    return zero_unit_left_at(ev, e[0]);
  }
  if (law_id == "eps0-absorb-right") {
    need(1); need_total(e[0]);
    return zero_unit_right_at(ev, e[0]);
  }
  if (law_id == "alpha-fibre-subspace") {
    need(1); need_total(e[0]);
    return alpha_fibre_subspace_at(ev, e[0]);
  }
  if (law_id == "beta-fibre-subspace") {
    need(1); need_total(e[0]);
    return beta_fibre_subspace_at(ev, e[0]);
  }
  if (law_id == "isotropy-zero-subspace") {
    need(1); need_total(e[0]);
    return isotropy_zero_subspace_at(ev, e[0]);
  }
  if (law_id == "inversion-automorphism") {
    need(1); need_total(e[0]);
    return inversion_automorphism_at(ev, e[0]);
  }
  if (law_id == "isotropy-zero-group") {
    for (ElementIndex x : e) need_total(x);
    return isotropy_zero_group_at(ev, e);
  }
  if (law_id == "anchor-rank-enum-agree") {
    need(2); need_base(e[0]); need_base(e[1]);
    return anchor_agree_at(ev, e[0], e[1]);
  }
  if (law_id == "P2.1.viii") {
    need(1); need_total(e[0]);
    return conjugation_iso_at(ev, e[0]);
  }
  throw Error("unknown law id: " + std::string(law_id));
}

const CheckResult& first_failing_law(const CheckReport& report) {
  for (const CheckResult& r : report.results)
    if (r.status == LawStatus::fail) return r;
  throw Error("report has no failing law");
}

const std::vector<std::string>& groupoid_law_ids() {
  static const std::vector<std::string> ids = {
      "alpha-surjective", "beta-surjective", "epsilon-injective",
      "G1", "G2", "G3",
      "3.1.2-structural", "3.1.3.1",
      "3.1.4.1", "3.1.4.2", "3.1.4.3", "3.1.4.4",
      "P2.1.i", "P2.1.ii", "P2.1.iii", "P2.1.iv", "P2.1.v",
      "P2.2.i-a", "P2.2.i-b", "P2.2.i-c", "P2.2.i-d",
      "P2.2.ii-a", "P2.2.ii-b",
      "eps0-absorb-left", "eps0-absorb-right",
      "alpha-fibre-subspace", "beta-fibre-subspace", "isotropy-zero-subspace",
      "inversion-automorphism", "isotropy-zero-group",
      "anchor-rank-enum-agree", "P2.1.viii",
  };
  return ids;
}

}  // namespace vg
