#include "agc/refine.hpp"

#include <limits>
#include <sstream>

namespace agc {

namespace {

void check_same_dims(const Contract& c1, const Contract& c2, bool with_output) {
  if (c1.input_dim() != c2.input_dim()) {
    std::ostringstream os;
    os << "refinement: input dimensions differ, " << c1.input_dim() << " vs " << c2.input_dim();
    throw DimensionError(os.str());
  }
  if (with_output && c1.guarantees.width() != c2.guarantees.width()) {
    std::ostringstream os;
    os << "refinement: guarantee widths differ, " << c1.guarantees.width() << " vs "
       << c2.guarantees.width();
    throw DimensionError(os.str());
  }
}

// Max over the given objective rows of one shared constraint polyhedron;
// shares the status conventions of compute_theta.
OptValue max_over_rows(const LinearProgram& base, const Matrix& obj_next, const Matrix& obj_curr,
                       const Vec& obj_upper, std::size_t next_offset) {
  if (obj_upper.empty()) {
    return OptValue{OptStatus::Value, -std::numeric_limits<double>::infinity(), true};
  }
  double best = -std::numeric_limits<double>::infinity();
  bool unbounded = false;
  for (std::size_t r = 0; r < obj_upper.size(); ++r) {
    LinearProgram lp = base;
    for (std::size_t j = 0; j < obj_curr.cols(); ++j) lp.objective[j] = obj_curr(r, j);
    for (std::size_t j = 0; j < obj_next.cols(); ++j) lp.objective[next_offset + j] = obj_next(r, j);
    lp.objective_offset = -obj_upper[r];
    const LpOutcome res = solve(lp);
    if (res.status == LpStatus::Infeasible) return OptValue{OptStatus::Infeasible, 0.0, false};
    if (res.status == LpStatus::Unbounded) {
      unbounded = true;
      continue;
    }
    best = std::max(best, res.value);
  }
  if (unbounded) return OptValue{OptStatus::PlusInfinity, 0.0, false};
  return OptValue{OptStatus::Value, best, false};
}

}  // namespace

OptValue psi_d(const Contract& c1, const Contract& c2) {
  check_same_dims(c1, c2, false);
  const std::size_t n_d = c1.input_dim();

  // Variables [d_0; d_1], constrained by c2's assumptions.
  LinearProgram base(2 * n_d);
  const Assumptions& b = c2.assumptions;
  for (std::size_t r = 0; r < b.size(); ++r) {
    Vec coeffs(2 * n_d, 0.0);
    for (std::size_t j = 0; j < n_d; ++j) {
      coeffs[j] = b.curr_coef(r, j);
      coeffs[n_d + j] = b.next_coef(r, j);
    }
    base.add_ineq(coeffs, b.upper[r]);
  }
  const Assumptions& a = c1.assumptions;
  return max_over_rows(base, a.next_coef, a.curr_coef, a.upper, n_d);
}

OptValue psi_omega(const Contract& c1, const Contract& c2) {
  check_same_dims(c1, c2, true);
  const std::size_t n_d = c1.input_dim();
  const std::size_t width = c1.guarantees.width();  // n_d + n_y

  // Variables [d_0; y_0; d_1; y_1].
  LinearProgram base(2 * width);
  const Guarantees& g = c1.guarantees;
  for (std::size_t r = 0; r < g.size(); ++r) {
    Vec coeffs(2 * width, 0.0);
    for (std::size_t j = 0; j < width; ++j) {
      coeffs[j] = g.curr_coef(r, j);
      coeffs[width + j] = g.next_coef(r, j);
    }
    base.add_ineq(coeffs, g.upper[r]);
  }
  const Assumptions& b = c2.assumptions;
  for (std::size_t r = 0; r < b.size(); ++r) {
    Vec coeffs(2 * width, 0.0);
    for (std::size_t j = 0; j < n_d; ++j) {
      coeffs[j] = b.curr_coef(r, j);
      coeffs[width + j] = b.next_coef(r, j);
    }
    base.add_ineq(coeffs, b.upper[r]);
  }
  const Guarantees& h = c2.guarantees;
  return max_over_rows(base, h.next_coef, h.curr_coef, h.upper, width);
}

RefinementReport check_refinement(const Contract& c1, const Contract& c2, double tolerance) {
  RefinementReport report;
  report.tolerance = tolerance;
  report.psi_d = psi_d(c1, c2);
  report.psi_omega = psi_omega(c1, c2);
  report.refines = report.psi_d.passes(tolerance) && report.psi_omega.passes(tolerance);
  if (report.psi_d.status == OptStatus::Infeasible ||
      report.psi_omega.status == OptStatus::Infeasible) {
    report.diagnostic =
        "constraint system infeasible: the reference assumptions (or their intersection with "
        "the candidate guarantees) may be empty";
  } else if (report.psi_d.vacuous || report.psi_omega.vacuous) {
    report.diagnostic = "a contract block has no rows: the comparison is vacuous on that side";
  }
  return report;
}

}  // namespace agc
