#pragma once

#include <cstddef>

#include "agc/matrix.hpp"

namespace agc {

/// Admissible initial conditions: state_coef x(0) + input_coef d(0) <= upper.
/// Zero rows mean the initial state is unconstrained.
struct InitialSet {
  Matrix state_coef;
  Matrix input_coef;
  Vec upper;

  std::size_t size() const { return upper.size(); }
};

/// One-step input constraints: next_coef d(k+1) + curr_coef d(k) <= upper.
struct Assumptions {
  Matrix next_coef;
  Matrix curr_coef;
  Vec upper;

  std::size_t size() const { return upper.size(); }
  std::size_t input_dim() const { return next_coef.cols(); }
};

/// One-step input/output constraints over the stacked vector [d; y]:
/// next_coef [d(k+1); y(k+1)] + curr_coef [d(k); y(k)] <= upper.
struct Guarantees {
  Matrix next_coef;
  Matrix curr_coef;
  Vec upper;

  std::size_t size() const { return upper.size(); }
  std::size_t width() const { return next_coef.cols(); }
};

struct Contract {
  Assumptions assumptions;
  Guarantees guarantees;

  std::size_t input_dim() const { return assumptions.input_dim(); }
  std::size_t output_dim() const { return guarantees.width() - assumptions.input_dim(); }
};

/// Discrete-time affine system
///   x(k+1) = A x(k) + B d(k) + w
///   y(k)   = C x(k) + D d(k) + v
/// with x(0) constrained by initial_set. obs_index is the observability
/// index computed from (A, C) at build time.
struct System {
  Matrix A, B, C, D;
  Vec w, v;
  std::size_t state_dim = 0;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  std::size_t obs_index = 0;
  InitialSet initial_set;
};

/// Minimal m >= 1 such that rank O_{m-1} == rank O_m, where O_k stacks
/// C, CA, ..., CA^k; capped at the state dimension. This convention gives 1
/// for C = I.
std::size_t observability_index(const Matrix& A, const Matrix& C);

System build_system(Matrix A, Matrix B, Matrix C, Matrix D, Vec w, Vec v, InitialSet x0);

/// Offsets w and v default to zero.
System build_system(Matrix A, Matrix B, Matrix C, Matrix D, InitialSet x0);

Assumptions build_assumptions(Matrix next_coef, Matrix curr_coef, Vec upper);
Guarantees build_guarantees(Matrix next_coef, Matrix curr_coef, Vec upper);
InitialSet build_x0(Matrix state_coef, Matrix input_coef, Vec upper);

/// Validates that the two blocks agree on the input dimension.
Contract make_contract(Assumptions assumptions, Guarantees guarantees);

/// Checks that the contract's dimensions fit the system; throws
/// DimensionError otherwise.
void check_pairing(const System& sys, const Contract& con);

}  // namespace agc
