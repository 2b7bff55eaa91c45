#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "agc/lp.hpp"
#include "agc/model.hpp"

namespace agc {

/// Verdict tolerance shared by satisfaction and refinement checks.
inline constexpr double kVerdictTol = 5e-9;

enum class OptStatus { Value, PlusInfinity, Infeasible };

/// Optimal value of one worst-case-violation problem. `vacuous` marks the
/// supremum over an empty family of rows, reported as Value with value -inf.
struct OptValue {
  OptStatus status = OptStatus::Value;
  double value = 0.0;
  bool vacuous = false;

  bool passes(double tol) const {
    return vacuous || (status == OptStatus::Value && value <= tol);
  }
};

struct ThetaValue {
  std::size_t n = 0;
  std::size_t l = 0;
  OptValue opt;
};

struct VerificationReport {
  std::vector<ThetaValue> thetas;  // (0,0) ... (nu-1,nu-1), (nu+1,nu)
  bool verified = false;
  double tolerance = kVerdictTol;
  std::string diagnostic;  // non-empty for infeasible or vacuous outcomes
};

/// One linear program of the worst-case-violation family: variables are
/// d_p..d_{n+1}, x_p..x_{n+1}, y_p..y_{n+1} with p = n - l. The objective is
/// the violation of guarantee row `row` at step n+1; constraints are the
/// guarantees for k = p..n-1, the assumptions for k = p..n, the dynamics and
/// output equations, and the initial set when p == 0 (x_p is free otherwise).
LinearProgram build_theta_lp(const System& sys, const Contract& con, std::size_t n, std::size_t l,
                             std::size_t row);

/// Solves one LP per guarantee row and takes the maximum. Any unbounded row
/// yields PlusInfinity; an infeasible constraint system yields Infeasible;
/// an empty guarantee set yields the vacuous value.
ThetaValue compute_theta(const System& sys, const Contract& con, std::size_t n, std::size_t l);

/// Decision rule: computes theta(n,n) for n = 0..nu-1 and theta(nu+1,nu);
/// verified iff every value is at most `tolerance`.
VerificationReport verify_contract(const System& sys, const Contract& con,
                                   double tolerance = kVerdictTol);

}  // namespace agc
