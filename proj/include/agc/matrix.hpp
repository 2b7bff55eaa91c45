#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "agc/errors.hpp"

namespace agc {

using Vec = std::vector<double>;

/// Dense real matrix, row-major. All stored entries are finite; constructors
/// and builders reject NaN and infinity.
class Matrix {
 public:
  Matrix() = default;

  /// rows x cols, zero-filled.
  Matrix(std::size_t rows, std::size_t cols);

  /// rows x cols from row-major entries; entries.size() must equal rows*cols.
  Matrix(std::size_t rows, std::size_t cols, Vec entries);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  /// Appends one row. On a default-constructed matrix the first append fixes
  /// the column count.
  void append_row(const Vec& row);

  const Vec& entries() const { return data_; }

  /// Copy of row i as a vector.
  Vec row(std::size_t i) const;

  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

Matrix matmul(const Matrix& lhs, const Matrix& rhs);
inline Matrix operator*(const Matrix& lhs, const Matrix& rhs) { return matmul(lhs, rhs); }

Matrix transpose(const Matrix& m);

/// [a b] side by side; row counts must match (or one operand may be empty
/// with matching rows).
Matrix hstack(const Matrix& a, const Matrix& b);

/// a on top of b; column counts must match.
Matrix vstack(const Matrix& a, const Matrix& b);

/// m * x for a vector x of length m.cols().
Vec apply(const Matrix& m, const Vec& x);

/// Number of pivots with magnitude > tol after Gaussian elimination with
/// partial pivoting. tol must be >= 0.
std::size_t rank(const Matrix& m, double tol);

/// rank() with the default tolerance max(rows, cols) * eps * (largest
/// absolute entry seen during elimination).
std::size_t rank(const Matrix& m);

Vec concat(const Vec& a, const Vec& b);
double dot(const Vec& a, const Vec& b);

}  // namespace agc
