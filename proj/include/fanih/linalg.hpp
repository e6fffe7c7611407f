#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fanih/rational.hpp"

namespace fanih {

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;

  Vec operator*(const Vec& v) const;
  Matrix operator*(const Matrix& other) const;
  Matrix transposed() const;

  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form with the pivot columns (leftmost pivot rule).
struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Fraction-free (Bareiss) forward elimination on the integer-scaled rows,
/// followed by back substitution to the unique reduced echelon form.
Echelon echelon(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of the right kernel, one vector per free column, read off the RREF.
std::vector<Vec> kernel_basis(const Matrix& m);

/// Particular solution of m x = b with all free variables set to zero, or
/// nullopt if the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

Rational determinant(const Matrix& m);

/// Canonical basis (RREF rows) of the span of the given vectors.
std::vector<Vec> span_basis(const std::vector<Vec>& vectors, std::size_t dim);

/// Incrementally maintained span; reduces candidate vectors against the
/// vectors accepted so far.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

  /// Adds v if it is independent of the current span; returns whether it was added.
  bool add(const Vec& v);
  bool contains(const Vec& v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

 private:
  Vec reduce(const Vec& v) const;

  std::size_t dim_;
  std::vector<Vec> rows_;  // each row normalized with leading 1 at pivots_[i]
  std::vector<std::size_t> pivots_;
};

}  // namespace fanih
