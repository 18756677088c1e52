#include "vg/groupoid.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace vg {

namespace {

/// Projection matrices for the ambient splitting (X, X, parent V).
Matrix first_block_projection(std::size_t dx, std::size_t dv,
                              const FieldSpec& f) {
  Matrix p(dx, 2 * dx + dv, f);
  for (std::size_t i = 0; i < dx; ++i) p(i, i) = 1;
  return p;
}

Matrix second_block_projection(std::size_t dx, std::size_t dv,
                               const FieldSpec& f) {
  Matrix p(dx, 2 * dx + dv, f);
  for (std::size_t i = 0; i < dx; ++i) p(i, dx + i) = 1;
  return p;
}

/// The pullback constraint [ h 0 -alpha ; 0 h -beta ] for the parent's
/// structure maps. Its kernel is the set of valid (x, y, a) triples.
Matrix pullback_constraint(const VectorGroupoid& parent, const Matrix& h) {
  const FieldSpec& f = parent.field();
  const std::size_t dx = h.cols();
  const std::size_t pb = parent.base().dim();
  Matrix zero(pb, dx, f);
  Matrix top = hstack(hstack(h, zero), scale(f.neg(1), parent.alpha()));
  Matrix bottom = hstack(hstack(zero, h), scale(f.neg(1), parent.beta()));
  return vstack(top, bottom);
}

Vec slice(const Vec& v, std::size_t from, std::size_t len) {
  return Vec(v.begin() + from, v.begin() + from + len);
}

}  // namespace

bool InducedRule::operator==(const InducedRule& o) const {
  if (h != o.h || basis != o.basis) return false;
  if (parent == o.parent) return true;
  if (!parent || !o.parent) return false;
  return *parent == *o.parent;
}

VectorGroupoid::VectorGroupoid(SpaceRef total, SpaceRef base, Matrix alpha,
                               Matrix beta, Matrix epsilon, Matrix inversion,
                               MultiplicationBackend multiplication)
    : total_(total),
      base_(base),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      epsilon_(std::move(epsilon)),
      inversion_(std::move(inversion)),
      mult_(std::move(multiplication)) {
  if (base_.field() != total_.field())
    throw ShapeMismatch("base and total spaces use different fields");
  auto expect = [&](const Matrix& m, std::size_t r, std::size_t c,
                    const char* name) {
    if (m.field() != total_.field())
      throw ShapeMismatch(std::string(name) +
                          " uses a different field than the spaces");
    if (m.rows() != r || m.cols() != c)
      throw ShapeMismatch(std::string(name) + " must be " + std::to_string(r) +
                          "x" + std::to_string(c) + ", got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  };
  expect(alpha_, base_.dim(), total_.dim(), "alpha");
  expect(beta_, base_.dim(), total_.dim(), "beta");
  expect(epsilon_, total_.dim(), base_.dim(), "epsilon");
  expect(inversion_, total_.dim(), total_.dim(), "inversion");

  if (const auto* rule = std::get_if<NullRule>(&mult_)) {
    (void)rule;
    if (base_.dim() != total_.dim())
      throw ShapeMismatch(
          "null multiplication requires base and total spaces of equal "
          "dimension");
  } else if (std::holds_alternative<SingleUnitRule>(mult_)) {
    if (base_.dim() != 0)
      throw ShapeMismatch(
          "single-unit multiplication requires a 0-dimensional base");
  } else if (const auto* pair_rule = std::get_if<PairRule>(&mult_)) {
    if (pair_rule->base.field() != total_.field())
      throw ShapeMismatch("pair block space uses a different field");
    if (2 * pair_rule->base.dim() != total_.dim())
      throw ShapeMismatch(
          "pair multiplication requires dim(total) = 2 * dim(block)");
  } else if (const auto* table = std::get_if<TableRule>(&mult_)) {
    validate_table(*table);
  } else if (const auto* ind = std::get_if<InducedRule>(&mult_)) {
    validate_induced(*ind);
  }
}

void VectorGroupoid::validate_table(const TableRule& table) const {
  const std::uint64_t n = total_.size();
  for (const auto& [key, value] : table.entries) {
    if (key.first >= n || key.second >= n || value >= n)
      throw BadCoordinate("table entry (" + std::to_string(key.first) + ", " +
                          std::to_string(key.second) + ") -> " +
                          std::to_string(value) +
                          " is outside the element range");
  }
  require_pair_enumeration(total_);
  std::vector<ElementIndex> src(n), tgt(n);
  for (ElementIndex x = 0; x < n; ++x) {
    Vec v = total_.vector_of(x);
    src[x] = base_.index_of(alpha_.apply(v));
    tgt[x] = base_.index_of(beta_.apply(v));
  }
  auto it = table.entries.begin();
  for (ElementIndex x = 0; x < n; ++x)
    for (ElementIndex y = 0; y < n; ++y) {
      bool comp = tgt[x] == src[y];
      bool listed =
          it != table.entries.end() && it->first == std::make_pair(x, y);
      if (comp && !listed)
        throw TableIncomplete("table has no entry for the composable pair (" +
                                  std::to_string(x) + ", " +
                                  std::to_string(y) + ")",
                              x, y);
      if (!comp && listed)
        throw TableExtraneous("table lists the non-composable pair (" +
                                  std::to_string(x) + ", " +
                                  std::to_string(y) + ")",
                              x, y);
      if (listed) ++it;
    }
}

void VectorGroupoid::validate_induced(const InducedRule& rule) const {
  if (!rule.parent)
    throw ShapeMismatch("induced multiplication requires a parent groupoid");
  const VectorGroupoid& parent = *rule.parent;
  if (parent.field() != total_.field() || rule.h.field() != total_.field() ||
      rule.basis.field() != total_.field())
    throw ShapeMismatch("induced multiplication mixes different fields");
  const std::size_t dx = base_.dim();
  const std::size_t dv = parent.total().dim();
  if (rule.h.rows() != parent.base().dim() || rule.h.cols() != dx)
    throw ShapeMismatch("h must map the base space into the parent base");
  const std::size_t ambient = 2 * dx + dv;
  if (rule.basis.rows() != ambient)
    throw ShapeMismatch("pullback basis vectors must have " +
                        std::to_string(ambient) + " coordinates, got " +
                        std::to_string(rule.basis.rows()));
  if (rule.basis.cols() != total_.dim())
    throw ShapeMismatch("pullback basis size " +
                        std::to_string(rule.basis.cols()) +
                        " does not match the total dimension " +
                        std::to_string(total_.dim()));
  if (rank(rule.basis) != rule.basis.cols())
    throw MalformedDocument("pullback basis vectors are not independent");
  Matrix constraint = pullback_constraint(parent, rule.h);
  if (!(constraint * rule.basis).is_zero())
    throw MalformedDocument(
        "a pullback basis vector violates the pullback constraint");
  if (rule.basis.cols() != constraint.cols() - rank(constraint))
    throw MalformedDocument(
        "pullback basis does not span the full constraint kernel");
  Matrix px = first_block_projection(dx, dv, total_.field());
  Matrix py = second_block_projection(dx, dv, total_.field());
  if (alpha_ != px * rule.basis)
    throw MalformedDocument(
        "alpha is not the first-block projection of the pullback basis");
  if (beta_ != py * rule.basis)
    throw MalformedDocument(
        "beta is not the second-block projection of the pullback basis");
}

ElementIndex VectorGroupoid::source_of(ElementIndex x) const {
  return base_.index_of(alpha_.apply(total_.vector_of(x)));
}

ElementIndex VectorGroupoid::target_of(ElementIndex x) const {
  return base_.index_of(beta_.apply(total_.vector_of(x)));
}

ElementIndex VectorGroupoid::unit_of(ElementIndex u) const {
  return total_.index_of(epsilon_.apply(base_.vector_of(u)));
}

ElementIndex VectorGroupoid::inverse_of(ElementIndex x) const {
  return total_.index_of(inversion_.apply(total_.vector_of(x)));
}

ElementIndex VectorGroupoid::apply_structure(StructureMap map,
                                             ElementIndex e) const {
  switch (map) {
    case StructureMap::source: return source_of(e);
    case StructureMap::target: return target_of(e);
    case StructureMap::unit: return unit_of(e);
    case StructureMap::inversion: return inverse_of(e);
  }
  throw IndexOutOfRange("unknown structure map");
}

bool VectorGroupoid::composable(ElementIndex x, ElementIndex y) const {
  return target_of(x) == source_of(y);
}

ElementIndex VectorGroupoid::compose(ElementIndex x, ElementIndex y) const {
  ElementIndex tx = target_of(x);
  ElementIndex sy = source_of(y);
  if (tx != sy)
    throw NotComposable("cannot compose " + std::to_string(x) + " and " +
                            std::to_string(y) + ": target base point " +
                            std::to_string(tx) + " differs from source base "
                            "point " + std::to_string(sy),
                        tx, sy);

  if (std::holds_alternative<NullRule>(mult_)) return x;

  if (std::holds_alternative<SingleUnitRule>(mult_)) {
    Vec sum = vec_add(total_.vector_of(x), total_.vector_of(y), field());
    return total_.index_of(sum);
  }

  if (const auto* pair_rule = std::get_if<PairRule>(&mult_)) {
    const std::uint64_t block = pair_rule->base.size();
    return (x % block) + (y / block) * block;
  }

  if (const auto* table = std::get_if<TableRule>(&mult_)) {
    auto it = table->entries.find({x, y});
    if (it == table->entries.end())
      throw TableIncomplete("table has no entry for the composable pair (" +
                                std::to_string(x) + ", " + std::to_string(y) +
                                ")",
                            x, y);
    return it->second;
  }

  const auto& rule = std::get<InducedRule>(mult_);
  const std::size_t dx = base_.dim();
  const std::size_t dv = rule.parent->total().dim();
  Vec wx = rule.basis.apply(total_.vector_of(x));
  Vec wy = rule.basis.apply(total_.vector_of(y));
  ElementIndex pa = rule.parent->total().index_of(slice(wx, 2 * dx, dv));
  ElementIndex pb = rule.parent->total().index_of(slice(wy, 2 * dx, dv));
  ElementIndex pc = rule.parent->compose(pa, pb);
  Vec w = slice(wx, 0, dx);
  Vec mid = slice(wy, dx, dx);
  Vec arrow = rule.parent->total().vector_of(pc);
  w.insert(w.end(), mid.begin(), mid.end());
  w.insert(w.end(), arrow.begin(), arrow.end());
  std::optional<Vec> coords = solve(rule.basis, w);
  if (!coords)
    throw AmbientEscape("product of pullback elements " + std::to_string(x) +
                        " and " + std::to_string(y) +
                        " leaves the span of the pullback basis");
  return total_.index_of(*coords);
}

std::vector<ComposablePair> VectorGroupoid::composable_pairs() const {
  GroupoidEval ev(*this);
  require_pair_enumeration(total_);
  std::vector<ComposablePair> out;
  for (ElementIndex x = 0; x < ev.total_size(); ++x)
    for (ElementIndex y : ev.source_fibre(ev.target_of(x)))
      out.push_back({x, y});
  return out;
}

IsotropyGroup VectorGroupoid::isotropy_group(ElementIndex u) const {
  GroupoidEval ev(*this);
  return isotropy_group_with(ev, u);
}

IsotropyGroup VectorGroupoid::isotropy_group_with(const GroupoidEval& ev,
                                                  ElementIndex u) const {
  if (u >= base_.size())
    throw IndexOutOfRange("base point " + std::to_string(u) +
                          " in a base of " + std::to_string(base_.size()) +
                          " elements");
  std::vector<ElementIndex> elements;
  for (ElementIndex x : ev.source_fibre(u))
    if (ev.target_of(x) == u) elements.push_back(x);

  const std::size_t k = elements.size();
  unsigned __int128 work = static_cast<unsigned __int128>(k) * k * k;
  if (work > kTupleCap)
    throw CapExceeded("isotropy group at base point " + std::to_string(u) +
                      " has " + std::to_string(k) +
                      " elements; its verification exceeds the work bound");

  auto member = [&](ElementIndex x) {
    return std::binary_search(elements.begin(), elements.end(), x);
  };
  auto position = [&](ElementIndex x) {
    return static_cast<std::size_t>(
        std::lower_bound(elements.begin(), elements.end(), x) -
        elements.begin());
  };

  ElementIndex e = ev.unit_of(u);
  if (!member(e))
    throw NotAGroup("unit at base point " + std::to_string(u) +
                        " is not an arrow fixing it",
                    {e});

  std::uint64_t tuples = 0;
  std::vector<ElementIndex> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      ++tuples;
      ElementIndex prod = ev.compose(elements[i], elements[j]);
      if (!member(prod))
        throw NotAGroup("product leaves the isotropy set at base point " +
                            std::to_string(u),
                        {elements[i], elements[j]});
      table[i * k + j] = prod;
    }

  std::size_t epos = position(e);
  for (std::size_t i = 0; i < k; ++i) {
    ++tuples;
    if (table[epos * k + i] != elements[i] || table[i * k + epos] != elements[i])
      throw NotAGroup("unit law fails in the isotropy set at base point " +
                          std::to_string(u),
                      {elements[i]});
  }

  for (std::size_t i = 0; i < k; ++i) {
    ++tuples;
    ElementIndex inv = ev.inverse_of(elements[i]);
    if (!member(inv) || table[i * k + position(inv)] != e ||
        table[position(inv) * k + i] != e)
      throw NotAGroup("inverse law fails in the isotropy set at base point " +
                          std::to_string(u),
                      {elements[i]});
  }

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t ij = position(table[i * k + j]);
      for (std::size_t l = 0; l < k; ++l) {
        ++tuples;
        std::size_t jl = position(table[j * k + l]);
        if (table[ij * k + l] != table[i * k + jl])
          throw NotAGroup("associativity fails in the isotropy set at base "
                          "point " + std::to_string(u),
                          {elements[i], elements[j], elements[l]});
      }
    }

  return IsotropyGroup{u, e, std::move(elements), std::move(table), tuples};
}

ConjugationIso VectorGroupoid::isotropy_conjugation(ElementIndex x) const {
  GroupoidEval ev(*this);
  return isotropy_conjugation_with(ev, x);
}

ConjugationIso VectorGroupoid::isotropy_conjugation_with(
    const GroupoidEval& ev, ElementIndex x) const {
  ElementIndex u = ev.source_of(x);
  ElementIndex v = ev.target_of(x);
  IsotropyGroup domain = isotropy_group_with(ev, u);
  IsotropyGroup codomain = isotropy_group_with(ev, v);
  ElementIndex xi = ev.inverse_of(x);

  const std::size_t k = domain.elements.size();
  std::vector<ElementIndex> image(k);
  for (std::size_t i = 0; i < k; ++i) {
    ElementIndex z = domain.elements[i];
    ElementIndex img;
    try {
      img = ev.compose(ev.compose(xi, z), x);
    } catch (const NotComposable&) {
      throw NotAnIsomorphism("conjugation by " + std::to_string(x) +
                                 " is undefined on arrow " + std::to_string(z),
                             {z});
    }
    if (!std::binary_search(codomain.elements.begin(),
                            codomain.elements.end(), img))
      throw NotAnIsomorphism("conjugation by " + std::to_string(x) +
                                 " maps arrow " + std::to_string(z) +
                                 " outside the target isotropy group",
                             {z});
    image[i] = img;
  }

  auto position = [&](ElementIndex z) {
    return static_cast<std::size_t>(
        std::lower_bound(domain.elements.begin(), domain.elements.end(), z) -
        domain.elements.begin());
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      ElementIndex prod = domain.table[i * k + j];
      ElementIndex lhs = image[position(prod)];
      ElementIndex rhs = ev.compose(image[i], image[j]);
      if (lhs != rhs)
        throw NotAnIsomorphism("conjugation by " + std::to_string(x) +
                                   " is not a homomorphism",
                               {domain.elements[i], domain.elements[j]});
    }

  std::vector<ElementIndex> sorted_image = image;
  std::sort(sorted_image.begin(), sorted_image.end());
  if (std::adjacent_find(sorted_image.begin(), sorted_image.end()) !=
      sorted_image.end())
    throw NotAnIsomorphism("conjugation by " + std::to_string(x) +
                               " is not injective",
                           {x});
  if (sorted_image != codomain.elements)
    throw NotAnIsomorphism("conjugation by " + std::to_string(x) +
                               " is not surjective",
                           {x});

  return ConjugationIso{x, std::move(domain), std::move(codomain),
                        std::move(image)};
}

bool VectorGroupoid::operator==(const VectorGroupoid& o) const {
  return total_ == o.total_ && base_ == o.base_ && alpha_ == o.alpha_ &&
         beta_ == o.beta_ && epsilon_ == o.epsilon_ &&
         inversion_ == o.inversion_ && mult_ == o.mult_;
}

TableRule to_table(const VectorGroupoid& g) {
  GroupoidEval ev(g);
  TableRule rule;
  for (const ComposablePair& p : g.composable_pairs())
    rule.entries[{p.x, p.y}] = ev.compose(p.x, p.y);
  return rule;
}

VectorGroupoid with_multiplication(const VectorGroupoid& g,
                                   MultiplicationBackend multiplication) {
  return VectorGroupoid(g.total(), g.base(), g.alpha(), g.beta(), g.epsilon(),
                        g.inversion(), std::move(multiplication));
}

GroupoidEval::GroupoidEval(const VectorGroupoid& g) : g_(&g) {
  const std::uint64_t n = g.total().size();
  const std::uint64_t m = g.base().size();
  vectors_.reserve(n);
  source_.resize(n);
  target_.resize(n);
  inverse_.resize(n);
  for (ElementIndex x = 0; x < n; ++x) {
    vectors_.push_back(g.total().vector_of(x));
    const Vec& v = vectors_.back();
    source_[x] = g.base().index_of(g.alpha().apply(v));
    target_[x] = g.base().index_of(g.beta().apply(v));
    inverse_[x] = g.total().index_of(g.inversion().apply(v));
  }
  base_vectors_.reserve(m);
  unit_.resize(m);
  source_fibres_.resize(m);
  target_fibres_.resize(m);
  for (ElementIndex u = 0; u < m; ++u) {
    base_vectors_.push_back(g.base().vector_of(u));
    unit_[u] = g.total().index_of(g.epsilon().apply(base_vectors_.back()));
  }
  for (ElementIndex x = 0; x < n; ++x) {
    source_fibres_[source_[x]].push_back(x);
    target_fibres_[target_[x]].push_back(x);
  }

  if (const auto* table = std::get_if<TableRule>(&g.multiplication())) {
    table_lookup_.reserve(table->entries.size());
    for (const auto& [key, value] : table->entries)
      table_lookup_.emplace(key.first * n + key.second, value);
  } else if (const auto* rule = std::get_if<InducedRule>(&g.multiplication())) {
    parent_ = std::make_unique<GroupoidEval>(*rule->parent);
    const std::size_t dx = g.base().dim();
    const std::size_t dv = rule->parent->total().dim();
    ambient_.reserve(n);
    parent_arrow_.resize(n);
    for (ElementIndex x = 0; x < n; ++x) {
      ambient_.push_back(rule->basis.apply(vectors_[x]));
      Vec arrow(ambient_.back().begin() + 2 * dx,
                ambient_.back().begin() + 2 * dx + dv);
      parent_arrow_[x] = rule->parent->total().index_of(arrow);
    }
    // Left inverse of the basis: row j solves basis^T row = e_j. Existence
    // is guaranteed by the basis independence checked at construction.
    const std::size_t k = rule->basis.cols();
    const std::size_t ambient_dim = rule->basis.rows();
    Matrix bt(k, ambient_dim, g.field());
    for (std::size_t r = 0; r < ambient_dim; ++r)
      for (std::size_t c = 0; c < k; ++c) bt(c, r) = rule->basis(r, c);
    Matrix left(k, ambient_dim, g.field());
    for (std::size_t j = 0; j < k; ++j) {
      Vec e(k, 0);
      e[j] = 1;
      Vec row = solve(bt, e).value();
      for (std::size_t c = 0; c < ambient_dim; ++c) left(j, c) = row[c];
    }
    basis_left_inverse_ = std::move(left);
  }
}

ElementIndex GroupoidEval::compose(ElementIndex x, ElementIndex y) const {
  if (target_[x] != source_[y])
    throw NotComposable("cannot compose " + std::to_string(x) + " and " +
                            std::to_string(y) + ": target base point " +
                            std::to_string(target_[x]) + " differs from "
                            "source base point " + std::to_string(source_[y]),
                        target_[x], source_[y]);
  const MultiplicationBackend& mult = g_->multiplication();

  if (std::holds_alternative<NullRule>(mult)) return x;

  if (std::holds_alternative<SingleUnitRule>(mult))
    return g_->total().index_of(
        vec_add(vectors_[x], vectors_[y], g_->field()));

  if (const auto* pair_rule = std::get_if<PairRule>(&mult)) {
    const std::uint64_t block = pair_rule->base.size();
    return (x % block) + (y / block) * block;
  }

  if (std::holds_alternative<TableRule>(mult)) {
    auto it = table_lookup_.find(x * g_->total().size() + y);
    if (it == table_lookup_.end())
      throw TableIncomplete("table has no entry for the composable pair (" +
                                std::to_string(x) + ", " + std::to_string(y) +
                                ")",
                            x, y);
    return it->second;
  }

  const auto& rule = std::get<InducedRule>(mult);
  const std::size_t dx = g_->base().dim();
  ElementIndex pc = parent_->compose(parent_arrow_[x], parent_arrow_[y]);
  Vec w(ambient_[x].begin(), ambient_[x].begin() + dx);
  w.insert(w.end(), ambient_[y].begin() + dx, ambient_[y].begin() + 2 * dx);
  const Vec& arrow = parent_->vector_of(pc);
  w.insert(w.end(), arrow.begin(), arrow.end());
  Vec coords = basis_left_inverse_->apply(w);
  if (rule.basis.apply(coords) != w)
    throw AmbientEscape("product of pullback elements " + std::to_string(x) +
                        " and " + std::to_string(y) +
                        " leaves the span of the pullback basis");
  return g_->total().index_of(coords);
}

}  // namespace vg
