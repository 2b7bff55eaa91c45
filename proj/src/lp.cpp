#include "agc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace agc {

namespace {

constexpr double kPivotTol = kLpFeasTol;
constexpr int kDegenerateLimit = 50;

// Dense tableau over columns [split structural | slacks | artificials | rhs].
// The objective is kept as an extra row in the form  z + sum(q_j u_j) = q_rhs,
// with zero coefficients on basic columns, so q_rhs is the current objective
// value and a column with q_j < 0 improves it.
struct Tableau {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;  // includes rhs column
  std::vector<double> cells;
  std::vector<std::size_t> basis;  // basis[i] = column basic in row i

  double& at(std::size_t r, std::size_t c) { return cells[r * n_cols + c]; }
  double at(std::size_t r, std::size_t c) const { return cells[r * n_cols + c]; }
  std::size_t obj_row() const { return n_rows; }
  std::size_t rhs_col() const { return n_cols - 1; }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    const double inv = 1.0 / p;
    for (std::size_t j = 0; j < n_cols; ++j) at(row, j) *= inv;
    at(row, col) = 1.0;
    for (std::size_t i = 0; i <= n_rows; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_cols; ++j) at(i, j) -= f * at(row, j);
      at(i, col) = 0.0;
    }
    basis[row] = col;
  }
};

struct PivotState {
  std::size_t used = 0;
  std::size_t budget = 0;
  int degenerate_streak = 0;
  bool bland = false;
};

enum class LoopResult { Converged, Unbounded };

// Maximizes the objective encoded in the tableau. `eligible(col)` restricts
// which columns may enter (used to lock artificials out in phase two).
template <typename Eligible>
LoopResult simplex_loop(Tableau& t, PivotState& ps, Eligible eligible) {
  for (;;) {
    // Entering column: objective-row coefficient < -tol improves the maximum.
    std::size_t enter = t.n_cols;  // sentinel
    if (ps.bland) {
      for (std::size_t j = 0; j + 1 < t.n_cols; ++j) {
        if (!eligible(j)) continue;
        if (t.at(t.obj_row(), j) < -kPivotTol) {
          enter = j;
          break;
        }
      }
    } else {
      double best = -kPivotTol;
      for (std::size_t j = 0; j + 1 < t.n_cols; ++j) {
        if (!eligible(j)) continue;
        const double q = t.at(t.obj_row(), j);
        if (q < best) {
          best = q;
          enter = j;
        }
      }
    }
    if (enter == t.n_cols) return LoopResult::Converged;

    // Ratio test; ties go to the smallest basis column, which together with
    // Bland's rule guarantees termination.
    std::size_t leave = t.n_rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.n_rows; ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = t.at(i, t.rhs_col()) / a;
      if (ratio < best_ratio - kPivotTol ||
          (ratio < best_ratio + kPivotTol &&
           (leave == t.n_rows || t.basis[i] < t.basis[leave]))) {
        best_ratio = std::min(ratio, best_ratio);
        leave = i;
      }
    }
    if (leave == t.n_rows) return LoopResult::Unbounded;

    if (++ps.used > ps.budget) {
      std::ostringstream os;
      os << "solver stalled: pivot budget of " << ps.budget << " exhausted";
      throw SolverStalled(os.str());
    }
    if (best_ratio <= kPivotTol) {
      if (++ps.degenerate_streak > kDegenerateLimit) ps.bland = true;
    } else {
      ps.degenerate_streak = 0;
    }
    t.pivot(leave, enter);
  }
}

void validate(const LinearProgram& lp) {
  auto fail = [](const std::string& msg) { throw DimensionError("lp: " + msg); };
  if (lp.objective.size() != lp.n_vars) fail("objective length != n_vars");
  if (lp.a_ineq.cols() != lp.n_vars && lp.a_ineq.rows() > 0) fail("a_ineq column mismatch");
  if (lp.a_eq.cols() != lp.n_vars && lp.a_eq.rows() > 0) fail("a_eq column mismatch");
  if (lp.b_ineq.size() != lp.a_ineq.rows()) fail("b_ineq length != a_ineq rows");
  if (lp.b_eq.size() != lp.a_eq.rows()) fail("b_eq length != a_eq rows");
}

}  // namespace

LpOutcome solve(const LinearProgram& lp, std::size_t max_pivots) {
  validate(lp);

  const std::size_t n = lp.n_vars;
  const std::size_t n_split = 2 * n;

  // Collect rows as coef . z <= rhs over the original variables; equalities
  // become paired inequalities here.
  std::vector<Vec> rows;
  Vec rhs;
  for (std::size_t i = 0; i < lp.a_ineq.rows(); ++i) {
    rows.push_back(lp.a_ineq.row(i));
    rhs.push_back(lp.b_ineq[i]);
  }
  for (std::size_t i = 0; i < lp.a_eq.rows(); ++i) {
    Vec r = lp.a_eq.row(i);
    rows.push_back(r);
    rhs.push_back(lp.b_eq[i]);
    for (double& x : r) x = -x;
    rows.push_back(r);
    rhs.push_back(-lp.b_eq[i]);
  }
  const std::size_t m = rows.size();

  // Negative right-hand sides get their row negated and an artificial basic
  // variable; the rest start with their slack basic.
  std::vector<bool> negated(m, false);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0.0) {
      negated[i] = true;
      ++n_art;
    }
  }

  const std::size_t slack0 = n_split;
  const std::size_t art0 = slack0 + m;
  Tableau t;
  t.n_rows = m;
  t.n_cols = art0 + n_art + 1;
  t.cells.assign((m + 1) * t.n_cols, 0.0);
  t.basis.assign(m, 0);

  std::size_t art_next = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = negated[i] ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = sign * rows[i][j];
      t.at(i, j) = a;
      t.at(i, n + j) = -a;
    }
    t.at(i, slack0 + i) = sign;
    t.at(i, t.rhs_col()) = sign * rhs[i];
    if (negated[i]) {
      t.at(i, art_next) = 1.0;
      t.basis[i] = art_next;
      ++art_next;
    } else {
      t.basis[i] = slack0 + i;
    }
  }

  PivotState ps;
  ps.budget = max_pivots;

  // Phase one: maximize -(sum of artificials). Objective row starts as
  // z + sum(a_j) = 0, then basic artificial columns are eliminated.
  if (n_art > 0) {
    for (std::size_t j = art0; j < art0 + n_art; ++j) t.at(t.obj_row(), j) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis[i] >= art0) {
        for (std::size_t j = 0; j < t.n_cols; ++j) t.at(t.obj_row(), j) -= t.at(i, j);
      }
    }
    const LoopResult r = simplex_loop(t, ps, [](std::size_t) { return true; });
    if (r == LoopResult::Unbounded) {
      throw NumericError("lp: phase one reported unbounded, which cannot happen");
    }
    const double art_sum = -t.at(t.obj_row(), t.rhs_col());
    double b_scale = 1.0;
    for (double b : rhs) b_scale = std::max(b_scale, std::abs(b));
    if (art_sum > kLpFeasTol * b_scale) {
      return LpOutcome{LpStatus::Infeasible, 0.0, {}};
    }

    // Drive leftover basic artificials out; a row with no usable pivot is
    // linearly dependent and gets dropped.
    for (std::size_t i = 0; i < t.n_rows;) {
      if (t.basis[i] < art0) {
        ++i;
        continue;
      }
      std::size_t col = t.n_cols;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.at(i, j)) > 1e-7) {
          col = j;
          break;
        }
      }
      if (col != t.n_cols) {
        t.pivot(i, col);
        ++i;
      } else {
        const std::size_t last = t.n_rows - 1;
        if (i != last) {
          for (std::size_t j = 0; j < t.n_cols; ++j) t.at(i, j) = t.at(last, j);
          t.basis[i] = t.basis[last];
        }
        --t.n_rows;
        t.basis.resize(t.n_rows);
        t.cells.resize((t.n_rows + 1) * t.n_cols);
      }
    }
    // The objective row may have been displaced by the row removal; it is
    // rebuilt from scratch for phase two below, so only the constraint rows
    // need to be intact here.
  }

  // Phase two: maximize the real objective over [u+, u-].
  for (std::size_t j = 0; j < t.n_cols; ++j) t.at(t.obj_row(), j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    t.at(t.obj_row(), j) = -lp.objective[j];
    t.at(t.obj_row(), n + j) = lp.objective[j];
  }
  for (std::size_t i = 0; i < t.n_rows; ++i) {
    const std::size_t b = t.basis[i];
    const double q = t.at(t.obj_row(), b);
    if (q == 0.0) continue;
    for (std::size_t j = 0; j < t.n_cols; ++j) t.at(t.obj_row(), j) -= q * t.at(i, j);
  }

  const LoopResult r = simplex_loop(t, ps, [&](std::size_t j) { return j < art0; });
  if (r == LoopResult::Unbounded) {
    return LpOutcome{LpStatus::Unbounded, 0.0, {}};
  }

  Vec split(n_split, 0.0);
  for (std::size_t i = 0; i < t.n_rows; ++i) {
    if (t.basis[i] < n_split) split[t.basis[i]] = t.at(i, t.rhs_col());
  }
  Vec z(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) z[j] = split[j] - split[n + j];

  // Never trust the tableau: re-verify the witness and recompute the value.
  for (std::size_t i = 0; i < lp.a_ineq.rows(); ++i) {
    const double resid = dot(lp.a_ineq.row(i), z) - lp.b_ineq[i];
    if (resid > kLpFeasTol * std::max(1.0, std::abs(lp.b_ineq[i]))) {
      throw NumericError("lp: optimal witness violates an inequality after solve");
    }
  }
  for (std::size_t i = 0; i < lp.a_eq.rows(); ++i) {
    const double resid = std::abs(dot(lp.a_eq.row(i), z) - lp.b_eq[i]);
    if (resid > kLpFeasTol * std::max(1.0, std::abs(lp.b_eq[i]))) {
      throw NumericError("lp: optimal witness violates an equality after solve");
    }
  }
  const double value = dot(lp.objective, z) + lp.objective_offset;
  const double tableau_value = t.at(t.obj_row(), t.rhs_col()) + lp.objective_offset;
  if (std::abs(value - tableau_value) > 1e-6 * std::max(1.0, std::abs(value))) {
    throw NumericError("lp: witness value disagrees with tableau value");
  }
  return LpOutcome{LpStatus::Optimal, value, std::move(z)};
}

LpOutcome solve(const LinearProgram& lp) {
  return solve(lp, 10000 * std::max<std::size_t>(1, lp.n_vars));
}

}  // namespace agc
