#include "agc/compose.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "agc/lp.hpp"

namespace agc {

System cascade_systems(const System& first, const System& second) {
  if (first.output_dim != second.input_dim) {
    std::ostringstream os;
    os << "cascade: first system outputs " << first.output_dim << " signals, second expects "
       << second.input_dim;
    throw DimensionError(os.str());
  }
  const std::size_t nx1 = first.state_dim;
  const std::size_t nx2 = second.state_dim;

  const Matrix b2c1 = matmul(second.B, first.C);
  const Matrix a = vstack(hstack(first.A, Matrix(nx1, nx2)), hstack(b2c1, second.A));
  const Matrix b = vstack(first.B, matmul(second.B, first.D));
  const Matrix c = hstack(matmul(second.D, first.C), second.C);
  const Matrix d = matmul(second.D, first.D);

  Vec w = concat(first.w, Vec(nx2, 0.0));
  {
    const Vec b2v1 = apply(second.B, first.v);
    for (std::size_t i = 0; i < nx2; ++i) w[nx1 + i] = b2v1[i] + second.w[i];
  }
  Vec v = apply(second.D, first.v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += second.v[i];

  // First block keeps the original constraints on (x1(0), d(0)); the second
  // block's input argument is y1(0) = C1 x1(0) + D1 d(0) + v1.
  const InitialSet& x1 = first.initial_set;
  const InitialSet& x2 = second.initial_set;
  const Matrix fd2c1 = x2.size() > 0 ? matmul(x2.input_coef, first.C) : Matrix(0, nx1);
  const Matrix fd2d1 = x2.size() > 0 ? matmul(x2.input_coef, first.D) : Matrix(0, first.input_dim);
  Matrix state_coef = vstack(hstack(x1.state_coef.rows() > 0 ? x1.state_coef : Matrix(0, nx1),
                                    Matrix(x1.size(), nx2)),
                             hstack(fd2c1, x2.state_coef.rows() > 0 ? x2.state_coef : Matrix(0, nx2)));
  Matrix input_coef = vstack(x1.input_coef, fd2d1);
  Vec upper = x1.upper;
  if (x2.size() > 0) {
    const Vec shift = apply(x2.input_coef, first.v);
    for (std::size_t i = 0; i < x2.size(); ++i) upper.push_back(x2.upper[i] - shift[i]);
  }

  return build_system(a, b, c, d, std::move(w), std::move(v),
                      InitialSet{std::move(state_coef), std::move(input_coef), std::move(upper)});
}

namespace {

struct FmRow {
  Vec head;  // coefficients on the value being eliminated
  Vec tail;  // coefficients on the middle value
  double rhs = 0.0;
};

std::string row_key(const FmRow& r) {
  double scale = std::abs(r.rhs);
  for (double x : r.head) scale = std::max(scale, std::abs(x));
  for (double x : r.tail) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;
  std::string key;
  char buf[32];
  auto put = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.12e|", x / scale);
    key += buf;
  };
  for (double x : r.head) put(x);
  for (double x : r.tail) put(x);
  put(r.rhs);
  return key;
}

bool vacuously_true(const FmRow& r) {
  for (double x : r.head)
    if (std::abs(x) > 1e-12) return false;
  for (double x : r.tail)
    if (std::abs(x) > 1e-12) return false;
  return r.rhs >= -1e-12;
}

}  // namespace

ExtendabilityReport check_extendable(const Matrix& next_coef, const Matrix& curr_coef,
                                     const Vec& upper, std::size_t max_rows, double tol) {
  if (next_coef.rows() != curr_coef.rows() || next_coef.cols() != curr_coef.cols()) {
    std::ostringstream os;
    os << "check_extendable: triple shapes differ, " << next_coef.rows() << "x" << next_coef.cols()
       << " vs " << curr_coef.rows() << "x" << curr_coef.cols();
    throw DimensionError(os.str());
  }
  if (upper.size() != next_coef.rows()) {
    std::ostringstream os;
    os << "check_extendable: bound length " << upper.size() << " for " << next_coef.rows()
       << " rows";
    throw DimensionError(os.str());
  }
  const std::size_t dim = next_coef.cols();

  // Base polyhedron over (u0, u1): next u1 + curr u0 <= upper.
  LinearProgram base(2 * dim);
  for (std::size_t r = 0; r < upper.size(); ++r) {
    Vec coeffs(2 * dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
      coeffs[j] = curr_coef(r, j);
      coeffs[dim + j] = next_coef(r, j);
    }
    base.add_ineq(coeffs, upper[r]);
  }
  if (solve(base).status == LpStatus::Infeasible) {
    return ExtendabilityReport{true, true};
  }

  // Project u2 out of { next u2 + curr u1 <= upper }, leaving Q u1 <= q.
  std::vector<FmRow> rows;
  for (std::size_t r = 0; r < upper.size(); ++r) {
    FmRow row;
    row.head = next_coef.row(r);
    row.tail = curr_coef.row(r);
    row.rhs = upper[r];
    if (!vacuously_true(row)) rows.push_back(std::move(row));
  }
  for (std::size_t var = 0; var < dim; ++var) {
    std::vector<FmRow> pos, neg, zero;
    for (FmRow& r : rows) {
      const double a = r.head[var];
      if (a > 1e-12) {
        for (std::size_t j = 0; j < dim; ++j) r.head[j] /= a;
        for (std::size_t j = 0; j < dim; ++j) r.tail[j] /= a;
        r.rhs /= a;
        pos.push_back(std::move(r));
      } else if (a < -1e-12) {
        for (std::size_t j = 0; j < dim; ++j) r.head[j] /= -a;
        for (std::size_t j = 0; j < dim; ++j) r.tail[j] /= -a;
        r.rhs /= -a;
        neg.push_back(std::move(r));
      } else {
        zero.push_back(std::move(r));
      }
    }
    rows = std::move(zero);
    std::unordered_set<std::string> seen;
    for (const FmRow& r : rows) seen.insert(row_key(r));
    for (const FmRow& p : pos) {
      for (const FmRow& n : neg) {
        FmRow combo;
        combo.head.resize(dim);
        combo.tail.resize(dim);
        for (std::size_t j = 0; j < dim; ++j) combo.head[j] = p.head[j] + n.head[j];
        combo.head[var] = 0.0;
        for (std::size_t j = 0; j < dim; ++j) combo.tail[j] = p.tail[j] + n.tail[j];
        combo.rhs = p.rhs + n.rhs;
        if (vacuously_true(combo)) continue;
        if (!seen.insert(row_key(combo)).second) continue;
        rows.push_back(std::move(combo));
        if (rows.size() > max_rows) {
          std::ostringstream os;
          os << "check_extendable: elimination exceeded " << max_rows << " intermediate rows";
          throw FmRowLimitError(os.str());
        }
      }
    }
  }

  // One LP per projected row: max Q_j u1 - q_j over the base polyhedron.
  for (const FmRow& r : rows) {
    LinearProgram lp = base;
    for (std::size_t j = 0; j < dim; ++j) lp.objective[dim + j] = r.tail[j];
    lp.objective_offset = -r.rhs;
    const LpOutcome res = solve(lp);
    if (res.status == LpStatus::Unbounded) return ExtendabilityReport{false, false};
    if (res.status == LpStatus::Infeasible) {
      // Base feasibility was already established; this cannot happen.
      throw NumericError("check_extendable: row LP infeasible on a nonempty base set");
    }
    if (res.value > tol) return ExtendabilityReport{false, false};
  }
  return ExtendabilityReport{true, false};
}

}  // namespace agc
