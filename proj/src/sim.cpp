#include "agc/sim.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace agc {

namespace {

std::size_t steps_of(double seconds, double dt) {
  return static_cast<std::size_t>(std::llround(seconds / dt));
}

}  // namespace

std::vector<Vec> leader_profile(const LeaderProfileParams& params) {
  if (!(params.dt > 0.0)) throw Error("leader_profile: dt must be positive");
  if (params.phase1_s < 0.0 || params.phase2_s < 0.0 || params.phase3_s < 0.0)
    throw Error("leader_profile: phase lengths must be nonnegative");
  if (params.a_mag < 0.0) throw Error("leader_profile: a_mag must be nonnegative");
  if (params.v_low > params.v_high) throw Error("leader_profile: v_low exceeds v_high");

  const std::size_t s1 = steps_of(params.phase1_s, params.dt);
  const std::size_t s2 = steps_of(params.phase2_s, params.dt);
  const std::size_t s3 = steps_of(params.phase3_s, params.dt);
  const std::size_t total = s1 + s2 + s3;

  std::mt19937_64 rng(params.seed);
  // Early-reversal probability per sway step; drawn from raw engine words so
  // the sequence is identical on every platform.
  const auto flip_draw = [&rng]() {
    return (rng() >> 11) * 0x1.0p-53 < 0.05;
  };

  std::vector<Vec> samples;
  samples.reserve(total + 1);
  double p = params.p_init;
  double vel = params.v_init;
  double dir = -1.0;  // brake first: the canonical profile starts at v_high
  samples.push_back({p, vel});
  for (std::size_t k = 0; k < total; ++k) {
    double a = 0.0;
    if (k >= s1 && k < s1 + s2) {
      if (vel <= params.v_low) {
        dir = 1.0;
      } else if (vel >= params.v_high) {
        dir = -1.0;
      } else if (flip_draw()) {
        dir = -dir;
      }
      a = dir * params.a_mag;
    }
    p += params.dt * vel;
    vel += params.dt * a;
    samples.push_back({p, vel});
  }

  // Post-generation audit: every consecutive pair must lie in the kinematic
  // tube with |dv| bounded by dt * a_mag.
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const double dp = samples[k + 1][0] - samples[k][0] - params.dt * samples[k][1];
    const double dv = std::abs(samples[k + 1][1] - samples[k][1]);
    if (std::abs(dp) > 1e-9 || dv > params.dt * params.a_mag + 1e-9) {
      throw NumericError("leader_profile: generated trace violates the kinematic constraints");
    }
  }
  return samples;
}

Trace simulate(const System& sys, const std::vector<Vec>& inputs, const Vec& x_init, double dt) {
  if (x_init.size() != sys.state_dim) {
    std::ostringstream os;
    os << "simulate: initial state has length " << x_init.size() << ", system has "
       << sys.state_dim << " states";
    throw DimensionError(os.str());
  }
  for (const Vec& d : inputs) {
    if (d.size() != sys.input_dim) {
      std::ostringstream os;
      os << "simulate: input sample has length " << d.size() << ", system expects "
         << sys.input_dim;
      throw DimensionError(os.str());
    }
  }

  Trace trace;
  trace.dt = dt;
  trace.inputs = inputs;
  trace.states.reserve(inputs.size());
  trace.outputs.reserve(inputs.size());
  Vec x = x_init;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    trace.states.push_back(x);
    Vec y = apply(sys.C, x);
    const Vec du = apply(sys.D, inputs[k]);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += du[i] + sys.v[i];
    trace.outputs.push_back(std::move(y));
    if (k + 1 < inputs.size()) {
      Vec next = apply(sys.A, x);
      const Vec bu = apply(sys.B, inputs[k]);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += bu[i] + sys.w[i];
      x = std::move(next);
    }
  }
  return trace;
}

std::vector<GuaranteeViolation> audit_guarantees(const Trace& trace, const Guarantees& g,
                                                 double tol) {
  std::vector<GuaranteeViolation> out;
  if (trace.samples() == 0 || g.size() == 0) return out;
  const std::size_t width = g.width();
  for (std::size_t k = 0; k + 1 < trace.samples(); ++k) {
    const Vec curr = concat(trace.inputs[k], trace.outputs[k]);
    const Vec next = concat(trace.inputs[k + 1], trace.outputs[k + 1]);
    if (curr.size() != width) {
      std::ostringstream os;
      os << "audit_guarantees: stacked sample has length " << curr.size() << ", guarantees have "
         << width << " columns";
      throw DimensionError(os.str());
    }
    for (std::size_t r = 0; r < g.size(); ++r) {
      double lhs = -g.upper[r];
      for (std::size_t j = 0; j < width; ++j) {
        lhs += g.next_coef(r, j) * next[j] + g.curr_coef(r, j) * curr[j];
      }
      if (lhs > tol) out.push_back(GuaranteeViolation{k, r, lhs});
    }
  }
  return out;
}

}  // namespace agc
