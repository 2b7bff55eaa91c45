#include "agc/verify.hpp"

#include <limits>
#include <sstream>

namespace agc {

namespace {

// Variable layout for the window k = p..n+1: all d's, then all x's, then all
// y's, each in time order.
struct Layout {
  std::size_t p, steps;  // number of time points in the window
  std::size_t n_d, n_x, n_y;

  std::size_t d(std::size_t k) const { return (k - p) * n_d; }
  std::size_t x(std::size_t k) const { return steps * n_d + (k - p) * n_x; }
  std::size_t y(std::size_t k) const { return steps * (n_d + n_x) + (k - p) * n_y; }
  std::size_t total() const { return steps * (n_d + n_x + n_y); }
};

// Adds coef(row,.) of a one-step block split over [d; y] at two time points.
void add_step_row(Vec& out, const Layout& lay, const Matrix& coef, std::size_t r,
                  std::size_t k_d, std::size_t k_y) {
  for (std::size_t j = 0; j < lay.n_d; ++j) out[lay.d(k_d) + j] += coef(r, j);
  for (std::size_t j = 0; j < lay.n_y; ++j) out[lay.y(k_y) + j] += coef(r, lay.n_d + j);
}

}  // namespace

LinearProgram build_theta_lp(const System& sys, const Contract& con, std::size_t n, std::size_t l,
                             std::size_t row) {
  check_pairing(sys, con);
  if (l > n) {
    std::ostringstream os;
    os << "build_theta_lp: history length " << l << " exceeds n = " << n;
    throw Error(os.str());
  }
  if (row >= con.guarantees.size()) {
    std::ostringstream os;
    os << "build_theta_lp: guarantee row " << row << " out of " << con.guarantees.size();
    throw Error(os.str());
  }

  const std::size_t p = n - l;
  const Layout lay{p, l + 2, sys.input_dim, sys.state_dim, sys.output_dim};
  const Assumptions& ass = con.assumptions;
  const Guarantees& gua = con.guarantees;

  LinearProgram lp(lay.total());

  // Guarantees hold for k = p..n-1.
  for (std::size_t k = p; k < n; ++k) {
    for (std::size_t r = 0; r < gua.size(); ++r) {
      Vec coeffs(lay.total(), 0.0);
      add_step_row(coeffs, lay, gua.next_coef, r, k + 1, k + 1);
      add_step_row(coeffs, lay, gua.curr_coef, r, k, k);
      lp.add_ineq(coeffs, gua.upper[r]);
    }
  }

  // Assumptions hold for k = p..n.
  for (std::size_t k = p; k <= n; ++k) {
    for (std::size_t r = 0; r < ass.size(); ++r) {
      Vec coeffs(lay.total(), 0.0);
      for (std::size_t j = 0; j < lay.n_d; ++j) {
        coeffs[lay.d(k + 1) + j] += ass.next_coef(r, j);
        coeffs[lay.d(k) + j] += ass.curr_coef(r, j);
      }
      lp.add_ineq(coeffs, ass.upper[r]);
    }
  }

  // Dynamics x_{k+1} = A x_k + B d_k + w for k = p..n.
  for (std::size_t k = p; k <= n; ++k) {
    for (std::size_t i = 0; i < sys.state_dim; ++i) {
      Vec coeffs(lay.total(), 0.0);
      coeffs[lay.x(k + 1) + i] = 1.0;
      for (std::size_t j = 0; j < sys.state_dim; ++j) coeffs[lay.x(k) + j] -= sys.A(i, j);
      for (std::size_t j = 0; j < sys.input_dim; ++j) coeffs[lay.d(k) + j] -= sys.B(i, j);
      lp.add_eq(coeffs, sys.w[i]);
    }
  }

  // Outputs y_k = C x_k + D d_k + v for k = p..n+1.
  for (std::size_t k = p; k <= n + 1; ++k) {
    for (std::size_t i = 0; i < sys.output_dim; ++i) {
      Vec coeffs(lay.total(), 0.0);
      coeffs[lay.y(k) + i] = 1.0;
      for (std::size_t j = 0; j < sys.state_dim; ++j) coeffs[lay.x(k) + j] -= sys.C(i, j);
      for (std::size_t j = 0; j < sys.input_dim; ++j) coeffs[lay.d(k) + j] -= sys.D(i, j);
      lp.add_eq(coeffs, sys.v[i]);
    }
  }

  // Initial conditions only pin x_p when the window starts at time zero;
  // otherwise x_p ranges over the whole state space.
  if (p == 0) {
    const InitialSet& x0 = sys.initial_set;
    for (std::size_t r = 0; r < x0.size(); ++r) {
      Vec coeffs(lay.total(), 0.0);
      for (std::size_t j = 0; j < sys.state_dim; ++j) coeffs[lay.x(0) + j] += x0.state_coef(r, j);
      for (std::size_t j = 0; j < sys.input_dim; ++j) coeffs[lay.d(0) + j] += x0.input_coef(r, j);
      lp.add_ineq(coeffs, x0.upper[r]);
    }
  }

  // Objective: violation of guarantee row `row` at step n+1.
  Vec obj(lay.total(), 0.0);
  add_step_row(obj, lay, gua.next_coef, row, n + 1, n + 1);
  add_step_row(obj, lay, gua.curr_coef, row, n, n);
  lp.objective = std::move(obj);
  lp.objective_offset = -gua.upper[row];
  return lp;
}

ThetaValue compute_theta(const System& sys, const Contract& con, std::size_t n, std::size_t l) {
  ThetaValue out;
  out.n = n;
  out.l = l;
  if (con.guarantees.size() == 0) {
    out.opt = OptValue{OptStatus::Value, -std::numeric_limits<double>::infinity(), true};
    return out;
  }
  double best = -std::numeric_limits<double>::infinity();
  bool unbounded = false;
  for (std::size_t row = 0; row < con.guarantees.size(); ++row) {
    const LpOutcome res = solve(build_theta_lp(sys, con, n, l, row));
    switch (res.status) {
      case LpStatus::Infeasible:
        // All rows share one feasible set, so the whole family is infeasible.
        out.opt = OptValue{OptStatus::Infeasible, 0.0, false};
        return out;
      case LpStatus::Unbounded:
        unbounded = true;
        break;
      case LpStatus::Optimal:
        best = std::max(best, res.value);
        break;
    }
  }
  out.opt = unbounded ? OptValue{OptStatus::PlusInfinity, 0.0, false}
                      : OptValue{OptStatus::Value, best, false};
  return out;
}

VerificationReport verify_contract(const System& sys, const Contract& con, double tolerance) {
  check_pairing(sys, con);
  VerificationReport report;
  report.tolerance = tolerance;

  const std::size_t nu = sys.obs_index;
  for (std::size_t n = 0; n < nu; ++n) {
    report.thetas.push_back(compute_theta(sys, con, n, n));
  }
  report.thetas.push_back(compute_theta(sys, con, nu + 1, nu));

  bool all_ok = true;
  bool any_infeasible = false;
  bool any_vacuous = false;
  for (const ThetaValue& t : report.thetas) {
    if (!t.opt.passes(tolerance)) all_ok = false;
    if (t.opt.status == OptStatus::Infeasible) any_infeasible = true;
    if (t.opt.vacuous) any_vacuous = true;
  }
  report.verified = all_ok;
  if (any_infeasible) {
    report.diagnostic =
        "constraint system infeasible: the assumptions may be empty or not extendable";
  } else if (any_vacuous) {
    report.diagnostic = "guarantee set is empty: contract is vacuously satisfied";
  }
  return report;
}

}  // namespace agc
