#pragma once

#include <string>

#include "agc/verify.hpp"

namespace agc {

struct RefinementReport {
  OptValue psi_d;
  OptValue psi_omega;
  bool refines = false;
  double tolerance = kVerdictTol;
  std::string diagnostic;
};

/// Worst violation of c1's assumption rows over c2's assumption polyhedron.
/// Non-positive means every input admitted by c2 is admitted by c1.
OptValue psi_d(const Contract& c1, const Contract& c2);

/// Worst violation of c2's guarantee rows over the set of one-step pairs that
/// satisfy c1's guarantees and c2's assumptions.
OptValue psi_omega(const Contract& c1, const Contract& c2);

/// c1 refines c2 iff both psi values are at most the tolerance.
RefinementReport check_refinement(const Contract& c1, const Contract& c2,
                                  double tolerance = kVerdictTol);

}  // namespace agc
