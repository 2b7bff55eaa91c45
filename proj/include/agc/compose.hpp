#pragma once

#include <cstddef>

#include "agc/model.hpp"

namespace agc {

/// Series interconnection feeding `first`'s output into `second`'s input.
/// The composed initial set is the conjunction of both initial sets, with
/// `second`'s input argument rewritten through first's output at time zero.
/// The observability index is recomputed for the composed matrices.
System cascade_systems(const System& first, const System& second);

struct ExtendabilityReport {
  bool extendable = false;
  /// True when the base polyhedron is empty, making extendability vacuous.
  bool vacuous = false;
};

/// Decides whether the one-step triple (next_coef, curr_coef, upper) is
/// extendable: every feasible pair of consecutive values admits a feasible
/// next value. Fourier-Motzkin elimination of the next value produces a
/// condition on the middle value, which is then maximized over the feasible
/// pairs, one LP per projected row.
///
/// Throws FmRowLimitError when the elimination holds more than max_rows
/// intermediate rows.
ExtendabilityReport check_extendable(const Matrix& next_coef, const Matrix& curr_coef,
                                     const Vec& upper, std::size_t max_rows = 10000,
                                     double tol = 5e-9);

}  // namespace agc
