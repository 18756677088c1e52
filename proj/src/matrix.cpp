#include "vg/matrix.hpp"

#include <string>
#include <utility>

namespace vg {

namespace {

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

/// Row-reduce `m` in place to reduced row echelon form. Returns the pivot
/// column of each pivot row, in row order.
std::vector<std::size_t> rref(Matrix& m) {
  const FieldSpec& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m(sel, c), m(row, c));
    Scalar piv_inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c)
      m(row, c) = f.mul(piv_inv, m(row, c));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Vec vec_add(std::span<const Scalar> a, std::span<const Scalar> b,
            const FieldSpec& field) {
  if (a.size() != b.size())
    throw ShapeMismatch("vector lengths differ: " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.add(a[i], b[i]);
  return out;
}

Vec vec_sub(std::span<const Scalar> a, std::span<const Scalar> b,
            const FieldSpec& field) {
  if (a.size() != b.size())
    throw ShapeMismatch("vector lengths differ: " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = field.sub(a[i], b[i]);
  return out;
}

Vec vec_scale(Scalar k, std::span<const Scalar> v, const FieldSpec& field) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = field.mul(k, v[i]);
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, FieldSpec field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, FieldSpec field,
               std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), field_(field), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw ShapeMismatch("expected " + std::to_string(rows_ * cols_) +
                        " entries for a " + dims(rows_, cols_) +
                        " matrix, got " + std::to_string(data_.size()));
  for (Scalar e : data_)
    if (e >= field_.p())
      throw BadCoordinate("matrix entry " + std::to_string(e) +
                          " is not a residue mod " + std::to_string(field_.p()));
}

Matrix Matrix::identity(std::size_t n, FieldSpec field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& columns,
                            FieldSpec field) {
  Matrix m(rows, columns.size(), field);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows)
      throw ShapeMismatch("column " + std::to_string(j) + " has " +
                          std::to_string(columns[j].size()) +
                          " entries, expected " + std::to_string(rows));
    for (std::size_t i = 0; i < rows; ++i) {
      if (columns[j][i] >= field.p())
        throw BadCoordinate("column entry " + std::to_string(columns[j][i]) +
                            " is not a residue mod " +
                            std::to_string(field.p()));
      m(i, j) = columns[j][i];
    }
  }
  return m;
}

Vec Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_)
    throw ShapeMismatch("applying " + dims(rows_, cols_) +
                        " matrix to a vector of length " +
                        std::to_string(v.size()));
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint32_t acc = 0;
    const Scalar* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += std::uint32_t{row[c]} * v[c];
      // p <= 251 keeps row[c]*v[c] < 2^16; reduce before acc can overflow.
      if (acc >= 0x40000000u) acc %= field_.p();
    }
    out[r] = static_cast<Scalar>(acc % field_.p());
  }
  return out;
}

Vec Matrix::column(std::size_t c) const {
  if (c >= cols_)
    throw IndexOutOfRange("column " + std::to_string(c) + " of a " +
                          dims(rows_, cols_) + " matrix");
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

bool Matrix::is_zero() const {
  for (Scalar e : data_)
    if (e != 0) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw ShapeMismatch("cannot multiply " + dims(a.rows_, a.cols_) + " by " +
                        dims(b.rows_, b.cols_));
  if (a.field_ != b.field_)
    throw ShapeMismatch("matrix product across different fields");
  Matrix out(a.rows_, b.cols_, a.field_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) {
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        acc += std::uint32_t{a(r, k)} * b(k, c);
        if (acc >= 0x40000000u) acc %= a.field_.p();
      }
      out(r, c) = static_cast<Scalar>(acc % a.field_.p());
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_)
    throw ShapeMismatch("cannot add " + dims(a.rows_, a.cols_) + " and " +
                        dims(b.rows_, b.cols_));
  Matrix out(a.rows_, a.cols_, a.field_);
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.field_ != b.field_)
    throw ShapeMismatch("cannot subtract " + dims(b.rows_, b.cols_) +
                        " from " + dims(a.rows_, a.cols_));
  Matrix out(a.rows_, a.cols_, a.field_);
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return out;
}

Matrix scale(Scalar k, const Matrix& m) {
  Matrix out(m.rows(), m.cols(), m.field());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(r, c) = m.field().mul(k, m(r, c));
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols() || a.field() != b.field())
    throw ShapeMismatch("cannot stack " + dims(a.rows(), a.cols()) +
                        " on top of " + dims(b.rows(), b.cols()));
  Matrix out(a.rows() + b.rows(), a.cols(), a.field());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, c) = b(r, c);
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.field() != b.field())
    throw ShapeMismatch("cannot place " + dims(a.rows(), a.cols()) +
                        " beside " + dims(b.rows(), b.cols()));
  Matrix out(a.rows(), a.cols() + b.cols(), a.field());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return rref(work).size();
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  Matrix work = m;
  std::vector<std::size_t> pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    // Pivot row r has a 1 in column pivots[r]; solve for that coordinate.
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = m.field().neg(work(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b) {
  if (b.size() != m.rows())
    throw ShapeMismatch("right-hand side has length " +
                        std::to_string(b.size()) + ", expected " +
                        std::to_string(m.rows()));
  Matrix aug(m.rows(), m.cols() + 1, m.field());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    if (b[r] >= m.field().p())
      throw BadCoordinate("right-hand side entry " + std::to_string(b[r]) +
                          " is not a residue mod " +
                          std::to_string(m.field().p()));
    aug(r, m.cols()) = b[r];
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x[pivots[r]] = aug(r, m.cols());
  return x;
}

}  // namespace vg
