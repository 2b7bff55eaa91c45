#include <doctest.h>

#include <cmath>
#include <random>

#include "agc/compose.hpp"
#include "agc/lp.hpp"
#include "agc/sim.hpp"
#include "support/generators.hpp"

using agc::Matrix;
using agc::System;

namespace ts = testsupport;

TEST_CASE("cascade of two unit gains is a unit gain") {
  const System g1 = ts::unit_gain_system(2);
  const System g2 = ts::unit_gain_system(2);
  const System composed = agc::cascade_systems(g1, g2);
  CHECK(composed.state_dim == 2);
  CHECK(composed.input_dim == 2);
  CHECK(composed.output_dim == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(composed.D(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
  CHECK(composed.A.max_abs() == 0.0);
  CHECK(composed.B.max_abs() == 0.0);
  CHECK(composed.C.max_abs() == 0.0);
}

TEST_CASE("follower cascaded with a unit gain behaves like the follower") {
  const System follower = ts::case_study_system();
  const System gain = ts::unit_gain_system(2);
  const System composed = agc::cascade_systems(follower, gain);
  CHECK(composed.state_dim == 3);
  CHECK(composed.obs_index == 1);

  std::mt19937_64 rng(31);
  for (int run = 0; run < 20; ++run) {
    std::vector<agc::Vec> inputs;
    agc::Vec d = {ts::uniform(rng, 0.0, 50.0), ts::uniform(rng, 0.0, 30.0)};
    for (int k = 0; k < 100; ++k) {
      inputs.push_back(d);
      d[0] += 0.1 * d[1];
      d[1] += ts::uniform(rng, -0.98, 0.98);
    }
    const agc::Vec x1 = {0.0, ts::uniform(rng, 0.0, 20.0)};
    const agc::Trace direct = agc::simulate(follower, inputs, x1, 0.1);
    const agc::Trace cascaded = agc::simulate(composed, inputs, agc::concat(x1, {0.0}), 0.1);
    for (std::size_t k = 0; k < direct.samples(); ++k) {
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(direct.outputs[k][i] - cascaded.outputs[k][i]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("cascade of scalar integrators matches the double sum") {
  // x+ = x + d with y = x.
  const agc::InitialSet origin =
      agc::build_x0(Matrix::from_rows({{1.0}, {-1.0}}), Matrix(2, 1), {0.0, 0.0});
  const System integrator =
      agc::build_system(Matrix::from_rows({{1.0}}), Matrix::from_rows({{1.0}}),
                        Matrix::from_rows({{1.0}}), Matrix(1, 1), origin);
  const System twice = agc::cascade_systems(integrator, integrator);
  CHECK(twice.state_dim == 2);

  std::vector<agc::Vec> inputs;
  for (int k = 0; k < 12; ++k) inputs.push_back({static_cast<double>(k % 3) - 1.0});
  const agc::Trace trace = agc::simulate(twice, inputs, {0.0, 0.0}, 1.0);
  // y2(k) = sum_{j<k} sum_{i<j} d(i)
  for (std::size_t k = 0; k < trace.samples(); ++k) {
    double expected = 0.0;
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) expected += inputs[i][0];
    CHECK(trace.outputs[k][0] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("cascade composes offsets and the initial sets") {
  std::mt19937_64 rng(32);
  const System s1 = ts::random_system(rng, 2, 1, 2);
  const System s2 = ts::random_system(rng, 1, 2, 1);
  const System composed = agc::cascade_systems(s1, s2);
  CHECK(composed.state_dim == 3);
  CHECK(composed.input_dim == 1);
  CHECK(composed.output_dim == 1);
  CHECK(composed.initial_set.size() == s1.initial_set.size() + s2.initial_set.size());

  // Trace semantics: composed rollout equals feeding s1's outputs into s2.
  for (int run = 0; run < 50; ++run) {
    std::vector<agc::Vec> inputs;
    for (int k = 0; k < 100; ++k) inputs.push_back({ts::uniform(rng, -1.0, 1.0)});
    const agc::Vec x1 = ts::admissible_initial_state(rng, s1);
    const agc::Vec x2 = ts::admissible_initial_state(rng, s2);
    const agc::Trace first = agc::simulate(s1, inputs, x1, 1.0);
    const agc::Trace second = agc::simulate(s2, first.outputs, x2, 1.0);
    const agc::Trace joint = agc::simulate(composed, inputs, agc::concat(x1, x2), 1.0);
    for (std::size_t k = 0; k < joint.samples(); ++k) {
      CHECK(std::abs(joint.outputs[k][0] - second.outputs[k][0]) <= 1e-9);
    }
  }
}

TEST_CASE("cascade rejects mismatched interconnection") {
  const System wide = ts::unit_gain_system(2);
  const System narrow = ts::unit_gain_system(3);
  CHECK_THROWS_AS(agc::cascade_systems(wide, narrow), agc::DimensionError);
}

TEST_CASE("constant continuation keeps a step-bounded triple extendable") {
  // |u(k+1) - u(k)| <= 1 in two dimensions.
  const Matrix next = Matrix::identity(2);
  const Matrix curr = Matrix::from_rows({{-1.0, 0.0}, {0.0, -1.0}});
  const agc::ExtendabilityReport r = agc::check_extendable(next, curr, {1.0, 1.0});
  CHECK(r.extendable);
  CHECK_FALSE(r.vacuous);
}

TEST_CASE("forced contradiction is not extendable") {
  // u1 >= u0 + 1 while u1 <= 5: the pair (3.5, 4.5) is admissible but any
  // continuation would need u2 >= 5.5 and u2 <= 5.
  const Matrix next = Matrix::from_rows({{-1.0}, {1.0}});
  const Matrix curr = Matrix::from_rows({{1.0}, {0.0}});
  const agc::ExtendabilityReport r = agc::check_extendable(next, curr, {-1.0, 5.0});
  CHECK_FALSE(r.extendable);
}

TEST_CASE("case-study assumptions are extendable") {
  const agc::Assumptions ass = ts::case_study_assumptions();
  const agc::ExtendabilityReport r =
      agc::check_extendable(ass.next_coef, ass.curr_coef, ass.upper);
  CHECK(r.extendable);
  CHECK_FALSE(r.vacuous);

  // Sampled oracle: 1000 admissible (u0, u1) pairs, each must admit a next
  // value, confirmed by a feasibility LP on u2.
  std::mt19937_64 rng(33);
  for (int i = 0; i < 1000; ++i) {
    const double p = ts::uniform(rng, -100.0, 100.0);
    const double v = ts::uniform(rng, -40.0, 40.0);
    const double acc = ts::uniform(rng, -9.8, 9.8);
    const agc::Vec u0 = {p, v};
    const agc::Vec u1 = {p + 0.1 * v, v + 0.1 * acc};

    agc::LinearProgram feas(2);
    for (std::size_t r2 = 0; r2 < ass.size(); ++r2) {
      double rhs = ass.upper[r2];
      for (std::size_t j = 0; j < 2; ++j) rhs -= ass.curr_coef(r2, j) * u1[j];
      feas.add_ineq(ass.next_coef.row(r2), rhs);
    }
    CHECK(solve(feas).status == agc::LpStatus::Optimal);
  }
}

TEST_CASE("box+rate triples are always extendable, forced increments never") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n_d = 1 + rng() % 3;
    const agc::Assumptions ass = ts::box_rate_assumptions(n_d, ts::random_box_rate(rng));
    CHECK(agc::check_extendable(ass.next_coef, ass.curr_coef, ass.upper).extendable);
  }
  for (int trial = 0; trial < 12; ++trial) {
    // u1 >= u0 + delta with u1 <= cap: a pair ending at the cap cannot
    // continue.
    const double delta = ts::uniform(rng, 0.1, 2.0);
    const double cap = ts::uniform(rng, 1.0, 10.0);
    const Matrix next = Matrix::from_rows({{-1.0}, {1.0}});
    const Matrix curr = Matrix::from_rows({{1.0}, {0.0}});
    const agc::ExtendabilityReport r = agc::check_extendable(next, curr, {-delta, cap});
    CHECK_FALSE(r.extendable);
    CHECK_FALSE(r.vacuous);
  }
}

TEST_CASE("empty base polyhedron is vacuously extendable") {
  const Matrix next = Matrix::from_rows({{1.0}, {-1.0}});
  const Matrix curr = Matrix::from_rows({{-1.0}, {1.0}});
  const agc::ExtendabilityReport r = agc::check_extendable(next, curr, {-1.0, -1.0});
  CHECK(r.extendable);
  CHECK(r.vacuous);
}

TEST_CASE("row guard aborts an oversized elimination") {
  std::mt19937_64 rng(34);
  const std::size_t dim = 4;
  Matrix next(0, dim), curr(0, dim);
  agc::Vec upper;
  for (int r = 0; r < 16; ++r) {
    agc::Vec rn(dim), rc(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      rn[j] = ts::uniform(rng, -1.0, 1.0);
      rc[j] = ts::uniform(rng, -1.0, 1.0);
    }
    next.append_row(rn);
    curr.append_row(rc);
    upper.push_back(ts::uniform(rng, 0.5, 2.0));
  }
  CHECK_THROWS_AS(agc::check_extendable(next, curr, upper, 8), agc::FmRowLimitError);
}
