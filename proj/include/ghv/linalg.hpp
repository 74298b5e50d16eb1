#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ghv/scalar.hpp"

namespace ghv {

using Vector = std::vector<Scalar>;

Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y);
Vector operator+(const Vector& x, const Vector& y);
Vector operator-(const Vector& x, const Vector& y);
Vector operator*(const Scalar& c, const Vector& x);
Vector operator-(const Vector& x);
bool is_zero(std::span<const Scalar> x);
Vector unit_vector(std::size_t dim, std::size_t index);

/// Dense row-major matrix over Scalar.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const;
  Vector column(std::size_t j) const;

  Matrix transposed() const;
  Vector operator*(const Vector& x) const;
  Matrix operator*(const Matrix& other) const;
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RowEchelon {
  Matrix reduced;            // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination with first-nonzero pivoting in column order.
RowEchelon row_echelon(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of {x : Mx = 0}, one vector per free column (in column order), each
/// with a 1 in its free column.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Some x with Mx = b, or nullopt if the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// (k-1) x k matrix whose kernel is span(line). The line is completed to a basis
/// with unit vectors taken in index order; the rows are the dual coordinates of
/// the completing vectors.
Matrix quotient_projection(const Vector& line, std::size_t ambient_dim);

/// Coordinates of each target vector in the (linearly independent) basis;
/// returns a basis.size() x targets.size() matrix. Throws if a target is not in
/// the span.
Matrix coordinates_in_basis(const std::vector<Vector>& basis, const std::vector<Vector>& targets);

/// Incrementally maintained reduced echelon basis of a row space.
class RowSpace {
 public:
  explicit RowSpace(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds v; returns true if it was independent of the current span.
  bool add(Vector v);
  bool contains(Vector v) const;
  /// Reduces v against the current basis.
  Vector reduce(Vector v) const;
  const std::vector<Vector>& rows() const { return rows_; }

 private:
  std::size_t dim_;
  std::vector<Vector> rows_;        // pivot entry normalized to 1
  std::vector<std::size_t> pivots_;
};

}  // namespace ghv
