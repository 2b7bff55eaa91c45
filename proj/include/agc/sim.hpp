#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "agc/model.hpp"

namespace agc {

/// One rollout: inputs, states and outputs all hold the same number of
/// samples. All quantities are SI (m, m/s, m/s^2, s).
struct Trace {
  double dt = 1.0;
  std::vector<Vec> inputs;
  std::vector<Vec> states;
  std::vector<Vec> outputs;

  std::size_t samples() const { return inputs.size(); }
};

/// Leader rollout parameters. Three phases: hold, sway, hold. During the
/// sway phase the acceleration is bang-bang at +-a_mag, reversing whenever
/// the velocity leaves [v_low, v_high], with seeded random early reversals.
struct LeaderProfileParams {
  double dt = 0.1;
  double phase1_s = 10.0;
  double phase2_s = 10.0;
  double phase3_s = 10.0;
  double p_init = 0.0;
  double v_init = 0.0;
  double v_low = 0.0;
  double v_high = 0.0;
  double a_mag = 9.8;
  std::uint64_t seed = 0;
};

/// Position/velocity samples d(k) = [p(k), v(k)] by forward Euler. The
/// result is reproducible bit-exactly from the seed and always satisfies the
/// kinematic one-step constraints with |dv| <= dt * a_mag.
std::vector<Vec> leader_profile(const LeaderProfileParams& params);

/// Forward recursion of the affine dynamics from x_init under the given
/// inputs; outputs are produced sample by sample.
Trace simulate(const System& sys, const std::vector<Vec>& inputs, const Vec& x_init, double dt);

struct GuaranteeViolation {
  std::size_t step = 0;
  std::size_t row = 0;
  double amount = 0.0;
};

/// Evaluates the one-step guarantees on consecutive samples k = 0..K-1 and
/// reports every violation exceeding tol. An empty result means the
/// guarantees held on the trace.
std::vector<GuaranteeViolation> audit_guarantees(const Trace& trace, const Guarantees& g,
                                                 double tol = 1e-7);

}  // namespace agc
