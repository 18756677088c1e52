#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vg/field.hpp"

namespace vg {

/// Coordinate vector over GF(p), entries already reduced mod p.
using Vec = std::vector<Scalar>;

Vec vec_add(std::span<const Scalar> a, std::span<const Scalar> b,
            const FieldSpec& field);
Vec vec_sub(std::span<const Scalar> a, std::span<const Scalar> b,
            const FieldSpec& field);
Vec vec_scale(Scalar k, std::span<const Scalar> v, const FieldSpec& field);

/// Dense row-major matrix over GF(p). A linear map GF(p)^n -> GF(p)^m is
/// stored as an m x n matrix acting on column vectors. Rows or columns may
/// be zero; a 0 x n matrix is the unique map onto the zero space.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, FieldSpec field);
  Matrix(std::size_t rows, std::size_t cols, FieldSpec field,
         std::vector<Scalar> entries);

  static Matrix identity(std::size_t n, FieldSpec field);

  /// Column j equals `columns[j]`. All columns must share `rows` entries.
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& columns,
                             FieldSpec field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Scalar& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

  const std::vector<Scalar>& entries() const { return data_; }

  /// Matrix-vector product. v.size() must equal cols().
  Vec apply(std::span<const Scalar> v) const;

  Vec column(std::size_t c) const;

  bool is_zero() const;

  bool operator==(const Matrix&) const = default;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  FieldSpec field_;
  std::vector<Scalar> data_;
};

Matrix scale(Scalar k, const Matrix& m);

/// Stack a on top of b (equal column counts).
Matrix vstack(const Matrix& a, const Matrix& b);

/// Place a left of b (equal row counts).
Matrix hstack(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);

/// Basis of { v : m v = 0 }, one vector per free column of the reduced
/// echelon form, ordered by ascending free-column position. Empty when the
/// kernel is trivial.
std::vector<Vec> kernel_basis(const Matrix& m);

/// One solution of m x = b, free variables set to 0; nullopt when the
/// system is inconsistent.
std::optional<Vec> solve(const Matrix& m, std::span<const Scalar> b);

}  // namespace vg
