#include "agc/model.hpp"

#include <sstream>
#include <utility>

namespace agc {

namespace {

void require(bool ok, const std::string& field, std::size_t er, std::size_t ec, std::size_t ar,
             std::size_t ac) {
  if (ok) return;
  std::ostringstream os;
  os << field << ": expected shape " << er << "x" << ec << ", got " << ar << "x" << ac;
  throw DimensionError(os.str());
}

void require_len(bool ok, const std::string& field, std::size_t expected, std::size_t actual) {
  if (ok) return;
  std::ostringstream os;
  os << field << ": expected length " << expected << ", got " << actual;
  throw DimensionError(os.str());
}

}  // namespace

std::size_t observability_index(const Matrix& A, const Matrix& C) {
  if (A.rows() != A.cols()) {
    std::ostringstream os;
    os << "observability_index: A must be square, got " << A.rows() << "x" << A.cols();
    throw DimensionError(os.str());
  }
  if (C.cols() != A.rows()) {
    std::ostringstream os;
    os << "observability_index: C has " << C.cols() << " columns, A is " << A.rows() << "x"
       << A.cols();
    throw DimensionError(os.str());
  }
  const std::size_t n = A.rows();
  if (n == 0) throw DimensionError("observability_index: empty state space");

  Matrix block = C;        // C A^m
  Matrix stacked = C;      // O_{m-1}
  std::size_t prev = rank(stacked);
  for (std::size_t m = 1;; ++m) {
    if (m >= n) return n;  // nu <= state dimension; stop here regardless
    block = matmul(block, A);
    stacked = vstack(stacked, block);
    const std::size_t cur = rank(stacked);
    if (cur == prev) return m;
    prev = cur;
  }
}

System build_system(Matrix A, Matrix B, Matrix C, Matrix D, Vec w, Vec v, InitialSet x0) {
  const std::size_t n_x = A.rows();
  if (n_x == 0) throw DimensionError("system: state dimension must be at least 1");
  require(A.cols() == n_x, "system.A", n_x, n_x, A.rows(), A.cols());
  const std::size_t n_d = B.cols();
  if (n_d == 0) throw DimensionError("system: input dimension must be at least 1");
  require(B.rows() == n_x, "system.B", n_x, n_d, B.rows(), B.cols());
  const std::size_t n_y = C.rows();
  if (n_y == 0) throw DimensionError("system: output dimension must be at least 1");
  require(C.cols() == n_x, "system.C", n_y, n_x, C.rows(), C.cols());
  require(D.rows() == n_y && D.cols() == n_d, "system.D", n_y, n_d, D.rows(), D.cols());
  require_len(w.size() == n_x, "system.w", n_x, w.size());
  require_len(v.size() == n_y, "system.v", n_y, v.size());

  const std::size_t m0 = x0.size();
  require(x0.state_coef.rows() == m0 && (m0 == 0 || x0.state_coef.cols() == n_x),
          "initial_set.Fx", m0, n_x, x0.state_coef.rows(), x0.state_coef.cols());
  require(x0.input_coef.rows() == m0 && (m0 == 0 || x0.input_coef.cols() == n_d),
          "initial_set.Fd", m0, n_d, x0.input_coef.rows(), x0.input_coef.cols());

  System sys;
  sys.obs_index = observability_index(A, C);
  sys.A = std::move(A);
  sys.B = std::move(B);
  sys.C = std::move(C);
  sys.D = std::move(D);
  sys.w = std::move(w);
  sys.v = std::move(v);
  sys.state_dim = n_x;
  sys.input_dim = n_d;
  sys.output_dim = n_y;
  sys.initial_set = std::move(x0);
  return sys;
}

System build_system(Matrix A, Matrix B, Matrix C, Matrix D, InitialSet x0) {
  Vec w(A.rows(), 0.0);
  Vec v(C.rows(), 0.0);
  return build_system(std::move(A), std::move(B), std::move(C), std::move(D), std::move(w),
                      std::move(v), std::move(x0));
}

Assumptions build_assumptions(Matrix next_coef, Matrix curr_coef, Vec upper) {
  const std::size_t m = next_coef.rows();
  require(curr_coef.rows() == m && curr_coef.cols() == next_coef.cols(), "assumptions.A0", m,
          next_coef.cols(), curr_coef.rows(), curr_coef.cols());
  require_len(upper.size() == m, "assumptions.a0", m, upper.size());
  return Assumptions{std::move(next_coef), std::move(curr_coef), std::move(upper)};
}

Guarantees build_guarantees(Matrix next_coef, Matrix curr_coef, Vec upper) {
  const std::size_t m = next_coef.rows();
  require(curr_coef.rows() == m && curr_coef.cols() == next_coef.cols(), "guarantees.G0", m,
          next_coef.cols(), curr_coef.rows(), curr_coef.cols());
  require_len(upper.size() == m, "guarantees.g0", m, upper.size());
  return Guarantees{std::move(next_coef), std::move(curr_coef), std::move(upper)};
}

InitialSet build_x0(Matrix state_coef, Matrix input_coef, Vec upper) {
  const std::size_t m = state_coef.rows();
  require(input_coef.rows() == m, "initial_set.Fd", m, input_coef.cols(), input_coef.rows(),
          input_coef.cols());
  require_len(upper.size() == m, "initial_set.f", m, upper.size());
  return InitialSet{std::move(state_coef), std::move(input_coef), std::move(upper)};
}

Contract make_contract(Assumptions assumptions, Guarantees guarantees) {
  if (guarantees.width() < assumptions.input_dim()) {
    std::ostringstream os;
    os << "contract: guarantee width " << guarantees.width()
       << " is smaller than the assumption input dimension " << assumptions.input_dim();
    throw DimensionError(os.str());
  }
  return Contract{std::move(assumptions), std::move(guarantees)};
}

void check_pairing(const System& sys, const Contract& con) {
  if (con.input_dim() != sys.input_dim) {
    std::ostringstream os;
    os << "contract assumptions act on " << con.input_dim() << " inputs, system has "
       << sys.input_dim;
    throw DimensionError(os.str());
  }
  if (con.guarantees.width() != sys.input_dim + sys.output_dim) {
    std::ostringstream os;
    os << "contract guarantees act on " << con.guarantees.width()
       << " stacked input/output columns, system needs " << sys.input_dim + sys.output_dim;
    throw DimensionError(os.str());
  }
}

}  // namespace agc
