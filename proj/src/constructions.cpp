#include "vg/constructions.hpp"

#include <string>
#include <utility>

namespace vg {

namespace {

/// [ I_n  0 ] and [ 0  I_n ] picking the halves of a doubled space.
Matrix left_half(std::size_t n, const FieldSpec& f) {
  Matrix m(n, 2 * n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix right_half(std::size_t n, const FieldSpec& f) {
  Matrix m(n, 2 * n, f);
  for (std::size_t i = 0; i < n; ++i) m(i, n + i) = 1;
  return m;
}

Matrix block_projection(std::size_t rows, std::size_t total_cols,
                        std::size_t offset, const FieldSpec& f) {
  Matrix m(rows, total_cols, f);
  for (std::size_t i = 0; i < rows; ++i) m(i, offset + i) = 1;
  return m;
}

}  // namespace

VectorGroupoid null_groupoid(const SpaceRef& v) {
  Matrix id = Matrix::identity(v.dim(), v.field());
  return VectorGroupoid(v, v, id, id, id, id, NullRule{});
}

VectorGroupoid single_unit_groupoid(const SpaceRef& v) {
  SpaceRef zero(0, v.field());
  Matrix to_zero(0, v.dim(), v.field());
  Matrix from_zero(v.dim(), 0, v.field());
  Matrix negation = scale(v.field().neg(1), Matrix::identity(v.dim(), v.field()));
  return VectorGroupoid(v, zero, to_zero, to_zero, from_zero, negation,
                        SingleUnitRule{});
}

VectorGroupoid pair_groupoid(const SpaceRef& x) {
  const FieldSpec& f = x.field();
  const std::size_t n = x.dim();
  SpaceRef total(2 * n, f);
  Matrix alpha = left_half(n, f);
  Matrix beta = right_half(n, f);
  Matrix epsilon = vstack(Matrix::identity(n, f), Matrix::identity(n, f));
  Matrix inversion = vstack(right_half(n, f), left_half(n, f));
  return VectorGroupoid(total, x, alpha, beta, epsilon, inversion,
                        PairRule{x});
}

InducedGroupoid induced_groupoid(const VectorGroupoid& parent, const Matrix& h,
                                 const SpaceRef& x) {
  const FieldSpec& f = parent.field();
  if (x.field() != f || h.field() != f)
    throw ShapeMismatch("pullback inputs mix different fields");
  if (h.rows() != parent.base().dim() || h.cols() != x.dim())
    throw ShapeMismatch("h must be " + std::to_string(parent.base().dim()) +
                        "x" + std::to_string(x.dim()) + ", got " +
                        std::to_string(h.rows()) + "x" +
                        std::to_string(h.cols()));

  const std::size_t dx = x.dim();
  const std::size_t dv = parent.total().dim();
  const std::size_t ambient = 2 * dx + dv;

  // Constraint rows encode h(x) = alpha(a) and h(y) = beta(a).
  Matrix zero(parent.base().dim(), dx, f);
  Matrix top = hstack(hstack(h, zero), scale(f.neg(1), parent.alpha()));
  Matrix bottom = hstack(hstack(zero, h), scale(f.neg(1), parent.beta()));
  Matrix constraint = vstack(top, bottom);

  Matrix basis = Matrix::from_columns(ambient, kernel_basis(constraint), f);
  const std::size_t k = basis.cols();

  SpaceRef total(k, f);  // may throw CapExceeded

  Matrix px = block_projection(dx, ambient, 0, f);
  Matrix py = block_projection(dx, ambient, dx, f);
  Matrix pa = block_projection(dv, ambient, 2 * dx, f);

  Matrix alpha = px * basis;
  Matrix beta = py * basis;

  // Unit of u: ambient triple (u, u, parent unit of h(u)), re-encoded into
  // basis coordinates. Inversion swaps the point blocks and inverts the
  // arrow block. Both stay in the pullback span, so the solves succeed.
  Matrix id_x = Matrix::identity(dx, f);
  Matrix unit_ambient =
      vstack(vstack(id_x, id_x), parent.epsilon() * h);  // ambient x dx
  Matrix inv_ambient = vstack(vstack(py, px), parent.inversion() * pa);

  auto encode_columns = [&](const Matrix& ambient_map, std::size_t cols,
                            const char* what) {
    Matrix out(k, cols, f);
    for (std::size_t j = 0; j < cols; ++j) {
      std::optional<Vec> c = solve(basis, ambient_map.column(j));
      if (!c)
        throw EncodingFailure(std::string(what) +
                              " leaves the pullback span; the parent "
                              "structure maps are inconsistent");
      for (std::size_t i = 0; i < k; ++i) out(i, j) = (*c)[i];
    }
    return out;
  };

  Matrix epsilon = encode_columns(unit_ambient, dx, "unit embedding");
  Matrix inversion = encode_columns(inv_ambient * basis, k, "inversion");

  InducedRule rule{std::make_shared<VectorGroupoid>(parent), h, basis};
  VectorGroupoid structure(total, x, std::move(alpha), std::move(beta),
                           std::move(epsilon), std::move(inversion),
                           std::move(rule));
  return InducedGroupoid{std::get<InducedRule>(structure.multiplication()).parent,
                         h, x, basis, std::move(structure)};
}

GroupoidMorphism anchor_morphism(const VectorGroupoid& g) {
  VectorGroupoid target = pair_groupoid(g.base());
  Matrix f = vstack(g.alpha(), g.beta());
  Matrix f0 = Matrix::identity(g.base().dim(), g.field());
  GroupoidMorphism m(g, std::move(target), std::move(f), std::move(f0));
  CheckReport report = check_morphism(m);
  if (!report.no_failures()) {
    const CheckResult& bad = first_failing_law(report);
    throw NotAMorphism("anchor maps of this groupoid do not form a morphism",
                       bad.law_id, bad.witness->elements, bad.witness->scalar);
  }
  return m;
}

GroupoidMorphism canonical_projection(const InducedGroupoid& ig) {
  const FieldSpec& f = ig.structure.field();
  const std::size_t dx = ig.base.dim();
  const std::size_t dv = ig.parent->total().dim();
  Matrix pa = block_projection(dv, 2 * dx + dv, 2 * dx, f);
  GroupoidMorphism m(ig.structure, *ig.parent, pa * ig.pullback_basis, ig.h);
  CheckReport report = check_morphism(m);
  if (!report.no_failures()) {
    const CheckResult& bad = first_failing_law(report);
    throw NotAMorphism(
        "projection of this pullback onto its parent is not a morphism",
        bad.law_id, bad.witness->elements, bad.witness->scalar);
  }
  return m;
}

}  // namespace vg
