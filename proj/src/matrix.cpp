#include "agc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace agc {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

void require_finite(const Vec& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      std::ostringstream os;
      os << what << ": entry is not finite";
      throw NumericError(os.str());
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vec entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    std::ostringstream os;
    os << "matrix: " << data_.size() << " entries do not fill shape " << shape_str(rows_, cols_);
    throw DimensionError(os.str());
  }
  require_finite(data_, "matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m;
  for (const auto& r : rows) m.append_row(Vec(r));
  return m;
}

void Matrix::append_row(const Vec& row) {
  if (rows_ == 0 && data_.empty()) {
    cols_ = row.size();
  } else if (row.size() != cols_) {
    std::ostringstream os;
    os << "append_row: row of length " << row.size() << " onto " << shape_str(rows_, cols_)
       << " matrix";
    throw DimensionError(os.str());
  }
  require_finite(row, "append_row");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Matrix matmul(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    std::ostringstream os;
    os << "matmul: cannot multiply " << shape_str(lhs.rows(), lhs.cols()) << " by "
       << shape_str(rhs.rows(), rhs.cols());
    throw DimensionError(os.str());
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        out(i, j) += a * rhs(k, j);
      }
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 && a.cols() == 0) return b;
  if (b.rows() == 0 && b.cols() == 0) return a;
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << "hstack: row mismatch " << shape_str(a.rows(), a.cols()) << " vs "
       << shape_str(b.rows(), b.cols());
    throw DimensionError(os.str());
  }
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 && a.cols() == 0) return b;
  if (b.rows() == 0 && b.cols() == 0) return a;
  if (a.cols() != b.cols()) {
    std::ostringstream os;
    os << "vstack: column mismatch " << shape_str(a.rows(), a.cols()) << " vs "
       << shape_str(b.rows(), b.cols());
    throw DimensionError(os.str());
  }
  Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

Vec apply(const Matrix& m, const Vec& x) {
  if (x.size() != m.cols()) {
    std::ostringstream os;
    os << "apply: vector of length " << x.size() << " against " << shape_str(m.rows(), m.cols());
    throw DimensionError(os.str());
  }
  Vec out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

namespace {

// Elimination with partial pivoting. Returns pivot magnitudes and the largest
// absolute entry seen at any stage (used for the default tolerance).
void eliminate(Matrix work, Vec& pivots, double& max_seen) {
  const std::size_t r = work.rows();
  const std::size_t c = work.cols();
  pivots.clear();
  max_seen = work.max_abs();
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < r; ++i)
      if (std::abs(work(i, col)) > std::abs(work(best, col))) best = i;
    const double p = work(best, col);
    if (p == 0.0) continue;
    if (best != row)
      for (std::size_t j = 0; j < c; ++j) std::swap(work(best, j), work(row, j));
    for (std::size_t i = row + 1; i < r; ++i) {
      const double f = work(i, col) / p;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < c; ++j) {
        work(i, j) -= f * work(row, j);
        max_seen = std::max(max_seen, std::abs(work(i, j)));
      }
      work(i, col) = 0.0;
    }
    pivots.push_back(std::abs(p));
    ++row;
  }
}

}  // namespace

std::size_t rank(const Matrix& m, double tol) {
  if (tol < 0.0) throw NumericError("rank: negative tolerance");
  if (m.empty()) return 0;
  Vec pivots;
  double max_seen = 0.0;
  eliminate(m, pivots, max_seen);
  std::size_t r = 0;
  for (double p : pivots)
    if (p > tol) ++r;
  return r;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  Vec pivots;
  double max_seen = 0.0;
  eliminate(m, pivots, max_seen);
  const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                     std::numeric_limits<double>::epsilon() * max_seen;
  std::size_t r = 0;
  for (double p : pivots)
    if (p > tol) ++r;
  return r;
}

Vec concat(const Vec& a, const Vec& b) {
  Vec out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << "dot: length mismatch " << a.size() << " vs " << b.size();
    throw DimensionError(os.str());
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace agc
