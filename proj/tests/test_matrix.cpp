#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "vg/errors.hpp"
#include "vg/matrix.hpp"

using vg::FieldSpec;
using vg::Matrix;
using vg::Scalar;
using vg::Vec;

namespace {

std::uint64_t pow_u64(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// n-th vector of GF(p)^len in little-endian digit order
Vec nth_vec(std::uint64_t n, std::size_t len, std::uint32_t p) {
  Vec v(len);
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = static_cast<Scalar>(n % p);
    n /= p;
  }
  return v;
}

Matrix nth_matrix(std::uint64_t n, std::size_t rows, std::size_t cols,
                  const FieldSpec& f) {
  std::vector<Scalar> entries(rows * cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    entries[i] = static_cast<Scalar>(n % f.p());
    n /= f.p();
  }
  return Matrix(rows, cols, f, std::move(entries));
}

// Independent rank oracle: grow the column span one generator at a time and
// read the rank off the span size.
std::set<Vec> column_span(const Matrix& m) {
  std::set<Vec> span{Vec(m.rows(), 0)};
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Vec col = m.column(c);
    std::set<Vec> next;
    for (const Vec& s : span)
      for (std::uint32_t k = 0; k < m.field().p(); ++k)
        next.insert(vg::vec_add(s, vg::vec_scale(static_cast<Scalar>(k), col,
                                                 m.field()),
                                m.field()));
    span = std::move(next);
  }
  return span;
}

std::size_t rank_oracle(const Matrix& m) {
  std::size_t span_size = column_span(m).size();
  std::size_t r = 0;
  std::uint64_t power = 1;
  while (power < span_size) {
    power *= m.field().p();
    ++r;
  }
  REQUIRE(power == span_size);  // span of a linear map has p-power size
  return r;
}

std::vector<Vec> kernel_oracle(const Matrix& m) {
  std::vector<Vec> solutions;
  std::uint64_t domain = pow_u64(m.field().p(), m.cols());
  for (std::uint64_t n = 0; n < domain; ++n) {
    Vec x = nth_vec(n, m.cols(), m.field().p());
    Vec y = m.apply(x);
    bool zero = true;
    for (Scalar e : y) zero &= (e == 0);
    if (zero) solutions.push_back(std::move(x));
  }
  return solutions;
}

}  // namespace

TEST_CASE("construction validates size and residues") {
  FieldSpec f2(2);
  CHECK_THROWS_AS(Matrix(2, 2, f2, {0, 1, 1}), vg::ShapeMismatch);
  CHECK_THROWS_AS(Matrix(2, 2, f2, {0, 1, 1, 2}), vg::BadCoordinate);
  CHECK_NOTHROW(Matrix(0, 3, f2));
  CHECK_NOTHROW(Matrix(3, 0, f2));
}

TEST_CASE("apply and product match hand computations over GF(3)") {
  FieldSpec f(3);
  Matrix a(2, 2, f, {1, 2, 0, 1});
  Vec x{1, 1};
  CHECK(a.apply(x) == Vec{0, 1});  // (1+2, 0+1) mod 3

  Matrix b(2, 2, f, {2, 0, 1, 1});
  Matrix ab = a * b;
  // [[1,2],[0,1]] * [[2,0],[1,1]] = [[4,2],[1,1]] = [[1,2],[1,1]] mod 3
  CHECK(ab == Matrix(2, 2, f, {1, 2, 1, 1}));
  CHECK(a + b == Matrix(2, 2, f, {0, 2, 1, 2}));
  CHECK(a - b == Matrix(2, 2, f, {2, 2, 2, 0}));
  CHECK(vg::scale(2, a) == Matrix(2, 2, f, {2, 1, 0, 2}));
  CHECK_FALSE(a.is_zero());
  CHECK(Matrix(2, 2, f).is_zero());
}

TEST_CASE("identity, stacking, from_columns") {
  FieldSpec f(5);
  Matrix id = Matrix::identity(3, f);
  Matrix a(1, 3, f, {1, 2, 3});
  CHECK(a * id == a);
  Matrix v = vg::vstack(a, Matrix(1, 3, f, {4, 0, 1}));
  CHECK(v == Matrix(2, 3, f, {1, 2, 3, 4, 0, 1}));
  Matrix h = vg::hstack(Matrix(2, 1, f, {1, 2}), Matrix(2, 2, f, {3, 4, 0, 1}));
  CHECK(h == Matrix(2, 3, f, {1, 3, 4, 2, 0, 1}));
  Matrix cols = Matrix::from_columns(2, {Vec{1, 2}, Vec{3, 4}}, f);
  CHECK(cols == Matrix(2, 2, f, {1, 3, 2, 4}));
  CHECK(cols.column(1) == Vec{3, 4});
  CHECK_THROWS_AS(vg::vstack(a, Matrix(1, 2, f)), vg::ShapeMismatch);
  CHECK_THROWS_AS(vg::hstack(a, Matrix(2, 1, f)), vg::ShapeMismatch);
}

TEST_CASE("rank, kernel, and solve agree with brute-force oracles") {
  for (std::uint32_t p : {2u, 3u}) {
    FieldSpec f(p);
    for (std::size_t rows = 0; rows <= 3; ++rows) {
      for (std::size_t cols = 0; cols <= 3; ++cols) {
        std::uint64_t count = pow_u64(p, rows * cols);
        for (std::uint64_t n = 0; n < count; ++n) {
          Matrix m = nth_matrix(n, rows, cols, f);
          CAPTURE(p);
          CAPTURE(rows);
          CAPTURE(cols);
          CAPTURE(n);

          std::size_t r = vg::rank(m);
          REQUIRE(r == rank_oracle(m));

          std::vector<Vec> basis = vg::kernel_basis(m);
          std::vector<Vec> all = kernel_oracle(m);
          REQUIRE(basis.size() == cols - r);
          REQUIRE(all.size() == pow_u64(p, cols - r));
          for (const Vec& b : basis) {
            Vec y = m.apply(b);
            for (Scalar e : y) REQUIRE(e == 0);
          }
          // basis vectors independent and spanning: closure size matches
          Matrix bm = Matrix::from_columns(cols, basis, f);
          REQUIRE(vg::rank(bm) == basis.size());
          REQUIRE(column_span(bm).size() == all.size());

          std::uint64_t images = pow_u64(p, rows);
          for (std::uint64_t bi = 0; bi < images; ++bi) {
            Vec b = nth_vec(bi, rows, p);
            bool solvable = false;
            std::uint64_t domain = pow_u64(p, cols);
            for (std::uint64_t xi = 0; xi < domain && !solvable; ++xi)
              solvable = (m.apply(nth_vec(xi, cols, p)) == b);
            auto x = vg::solve(m, b);
            REQUIRE(x.has_value() == solvable);
            if (x) REQUIRE(m.apply(*x) == b);
          }
        }
      }
    }
  }
}

TEST_CASE("rank and kernel on sampled 4x4 matrices over GF(5)") {
  FieldSpec f(5);
  // deterministic sample: n = j * 7919 mod 5^16 walks the matrix space
  for (std::uint64_t j = 0; j < 60; ++j) {
    std::uint64_t n = (j * 7919 + 12345) % pow_u64(5, 16);
    Matrix m = nth_matrix(n, 4, 4, f);
    CAPTURE(n);
    std::size_t r = vg::rank(m);
    REQUIRE(r == rank_oracle(m));
    std::vector<Vec> basis = vg::kernel_basis(m);
    REQUIRE(basis.size() == 4 - r);
    for (const Vec& b : basis) {
      Vec y = m.apply(b);
      for (Scalar e : y) REQUIRE(e == 0);
    }
  }
}

TEST_CASE("solve leaves free variables at zero") {
  FieldSpec f(3);
  // x0 + x1 = 1 has solutions (1,0) and (0,1) and (2,2); pivot form picks
  // x1 free -> (1, 0)
  Matrix m(1, 2, f, {1, 1});
  auto x = vg::solve(m, Vec{1});
  REQUIRE(x.has_value());
  CHECK(*x == Vec{1, 0});
}

TEST_CASE("solve validates the right-hand side") {
  FieldSpec f(3);
  Matrix m(1, 2, f, {1, 1});
  CHECK_THROWS_AS(vg::solve(m, Vec{4}), vg::BadCoordinate);
  CHECK_THROWS_AS(vg::solve(m, Vec{1, 1}), vg::ShapeMismatch);
}

TEST_CASE("degenerate shapes") {
  FieldSpec f(3);
  Matrix zero_rows(0, 2, f);
  CHECK(vg::rank(zero_rows) == 0);
  CHECK(vg::kernel_basis(zero_rows).size() == 2);  // kernel is everything
  auto x = vg::solve(zero_rows, Vec{});
  REQUIRE(x.has_value());
  CHECK(*x == Vec{0, 0});

  Matrix zero_cols(2, 0, f);
  CHECK(vg::rank(zero_cols) == 0);
  CHECK(vg::kernel_basis(zero_cols).empty());
  CHECK(vg::solve(zero_cols, Vec{0, 0}).has_value());
  CHECK_FALSE(vg::solve(zero_cols, Vec{1, 0}).has_value());
}
