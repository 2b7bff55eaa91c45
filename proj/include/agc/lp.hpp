#pragma once

#include <cstddef>

#include "agc/matrix.hpp"

namespace agc {

/// Absolute tolerance for feasibility checks and pivot classification.
inline constexpr double kLpFeasTol = 1e-9;

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// maximize objective . z + objective_offset
///   subject to a_ineq z <= b_ineq, a_eq z = b_eq, z free.
struct LinearProgram {
  std::size_t n_vars = 0;
  Vec objective;
  double objective_offset = 0.0;
  Matrix a_ineq;
  Vec b_ineq;
  Matrix a_eq;
  Vec b_eq;

  explicit LinearProgram(std::size_t vars)
      : n_vars(vars), objective(vars, 0.0), a_ineq(0, vars), a_eq(0, vars) {}

  void add_ineq(const Vec& coeffs, double rhs) {
    a_ineq.append_row(coeffs);
    b_ineq.push_back(rhs);
  }

  void add_eq(const Vec& coeffs, double rhs) {
    a_eq.append_row(coeffs);
    b_eq.push_back(rhs);
  }
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;  // meaningful iff Optimal; includes objective_offset
  Vec witness;         // meaningful iff Optimal

  bool optimal() const { return status == LpStatus::Optimal; }
};

/// Two-phase dense tableau simplex. Free variables are split into nonnegative
/// pairs and equalities become paired inequalities. Entering-variable rule is
/// Dantzig, switching to Bland after 50 consecutive degenerate pivots.
///
/// Throws SolverStalled once max_pivots pivots have been performed. Optimal
/// witnesses are re-verified against the constraints before being returned;
/// a witness failing the check raises NumericError instead of being reported.
LpOutcome solve(const LinearProgram& lp, std::size_t max_pivots);

/// solve() with the default budget of 10,000 x n_vars pivots.
LpOutcome solve(const LinearProgram& lp);

}  // namespace agc
