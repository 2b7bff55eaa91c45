// Shared instance builders for tests: the two-vehicle case study and random
// instance families (extendable box+rate assumptions, mirrored-guarantee
// contracts, random stable systems, admissible input sequences).
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "agc/model.hpp"
#include "agc/sim.hpp"

namespace testsupport {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = (rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

// ---------------------------------------------------------------------------
// Two-vehicle case study, dt = 0.1 s, headway h = 2 s, |a2| <= 9.8 m/s^2.

inline agc::System case_study_system(double dt = 0.1, double h = 2.0) {
  const agc::Matrix a = agc::Matrix::from_rows({{1.0, dt}, {-1.0 / h, -dt / h}});
  const agc::Matrix b = agc::Matrix::from_rows({{0.0, 0.0}, {1.0 / h, dt / h}});
  const agc::Matrix c = agc::Matrix::identity(2);
  const agc::Matrix d(2, 2);
  const agc::Vec w = {0.0, -dt};
  const agc::Vec v = {0.0, 0.0};
  // headway holds at time 0: p1 + h v1 - p2 <= 0
  const agc::InitialSet x0 = agc::build_x0(agc::Matrix::from_rows({{1.0, h}}),
                                           agc::Matrix::from_rows({{-1.0, 0.0}}), {0.0});
  return agc::build_system(a, b, c, d, w, v, x0);
}

inline agc::Assumptions case_study_assumptions(double dt = 0.1, double a_max = 9.8,
                                               double a_min = 9.8) {
  const agc::Matrix next =
      agc::Matrix::from_rows({{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}});
  const agc::Matrix curr =
      agc::Matrix::from_rows({{-1.0, -dt}, {1.0, dt}, {0.0, -1.0}, {0.0, 1.0}});
  return agc::build_assumptions(next, curr, {0.0, 0.0, dt * a_max, dt * a_min});
}

inline agc::Guarantees case_study_guarantees(double h = 2.0) {
  // p2 - p1 - h v1 >= 0 over [p2, v2, p1, v1]
  return agc::build_guarantees(agc::Matrix(1, 4),
                               agc::Matrix::from_rows({{-1.0, 0.0, 1.0, h}}), {0.0});
}

inline agc::Contract case_study_contract() {
  return agc::make_contract(case_study_assumptions(), case_study_guarantees());
}

// Refinement pair: C1 assumes only the acceleration bound (9.8 m/s^2) and
// guarantees a 2 s headway plus forward motion; C2 assumes the full kinematic
// tube with the 9.5 m/s^2 bound and forward motion, guaranteeing 1.9 s.
inline agc::Contract refinement_c1(double dt = 0.1, double a_bound = 9.8, double h = 2.0) {
  const agc::Assumptions ass =
      agc::build_assumptions(agc::Matrix::from_rows({{0.0, 1.0}, {0.0, -1.0}}),
                             agc::Matrix::from_rows({{0.0, -1.0}, {0.0, 1.0}}),
                             {dt * a_bound, dt * a_bound});
  const agc::Guarantees gua = agc::build_guarantees(
      agc::Matrix(2, 4),
      agc::Matrix::from_rows({{-1.0, 0.0, 1.0, h}, {0.0, 0.0, 0.0, -1.0}}), {0.0, 0.0});
  return agc::make_contract(ass, gua);
}

inline agc::Contract refinement_c2(double dt = 0.1, double a_bound = 9.5, double h = 1.9) {
  const agc::Assumptions ass = agc::build_assumptions(
      agc::Matrix::from_rows(
          {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {0.0, -1.0}}),
      agc::Matrix::from_rows(
          {{-1.0, -dt}, {1.0, dt}, {0.0, -1.0}, {0.0, 1.0}, {0.0, 0.0}}),
      {0.0, 0.0, dt * a_bound, dt * a_bound, 0.0});
  const agc::Guarantees gua = agc::build_guarantees(
      agc::Matrix(2, 4),
      agc::Matrix::from_rows({{-1.0, 0.0, 1.0, h}, {0.0, 0.0, 0.0, -1.0}}), {0.0, 0.0});
  return agc::make_contract(ass, gua);
}

// ---------------------------------------------------------------------------
// Random families.

// Extendable, nonempty, bounded-pair assumptions: |d(k+1) - d(k)| <= rate and
// |d(k+1)| <= box, every row supporting. Extending any admissible pair by
// repeating its last value stays admissible.
struct BoxRate {
  double rate = 1.0;
  double box = 1.0;
};

inline agc::Assumptions box_rate_assumptions(std::size_t n_d, const BoxRate& p) {
  agc::Matrix next(0, n_d), curr(0, n_d);
  agc::Vec upper;
  for (std::size_t i = 0; i < n_d; ++i) {
    for (double sign : {1.0, -1.0}) {
      agc::Vec rn(n_d, 0.0), rc(n_d, 0.0);
      rn[i] = sign;
      rc[i] = -sign;
      next.append_row(rn);
      curr.append_row(rc);
      upper.push_back(p.rate);
    }
  }
  for (std::size_t i = 0; i < n_d; ++i) {
    for (double sign : {1.0, -1.0}) {
      agc::Vec rn(n_d, 0.0), rc(n_d, 0.0);
      rn[i] = sign;
      next.append_row(rn);
      curr.append_row(rc);
      upper.push_back(p.box);
    }
  }
  return agc::build_assumptions(next, curr, upper);
}

inline BoxRate random_box_rate(std::mt19937_64& rng) {
  return BoxRate{uniform(rng, 0.5, 2.0), uniform(rng, 1.0, 4.0)};
}

// Guarantees mirroring the assumptions on the input block, optionally
// slackened per row (the output block is zero).
inline agc::Guarantees mirrored_guarantees(const agc::Assumptions& ass, std::size_t n_y,
                                           const agc::Vec& slack) {
  const std::size_t n_d = ass.input_dim();
  agc::Matrix next(0, n_d + n_y), curr(0, n_d + n_y);
  agc::Vec upper;
  for (std::size_t r = 0; r < ass.size(); ++r) {
    agc::Vec rn(n_d + n_y, 0.0), rc(n_d + n_y, 0.0);
    for (std::size_t j = 0; j < n_d; ++j) {
      rn[j] = ass.next_coef(r, j);
      rc[j] = ass.curr_coef(r, j);
    }
    next.append_row(rn);
    curr.append_row(rc);
    upper.push_back(ass.upper[r] + slack[r]);
  }
  return agc::build_guarantees(next, curr, upper);
}

// Guarantees applying the assumption template to the output block instead
// (the unit-gain mirror used by sanity checks on static systems).
inline agc::Guarantees output_mirrored_guarantees(const agc::Assumptions& ass) {
  const std::size_t n_d = ass.input_dim();
  agc::Matrix next(0, 2 * n_d), curr(0, 2 * n_d);
  for (std::size_t r = 0; r < ass.size(); ++r) {
    agc::Vec rn(2 * n_d, 0.0), rc(2 * n_d, 0.0);
    for (std::size_t j = 0; j < n_d; ++j) {
      rn[n_d + j] = ass.next_coef(r, j);
      rc[n_d + j] = ass.curr_coef(r, j);
    }
    next.append_row(rn);
    curr.append_row(rc);
  }
  return agc::build_guarantees(next, curr, ass.upper);
}

// Static unit gain y(k) = d(k), modeled with one frozen zero state.
inline agc::System unit_gain_system(std::size_t n_d) {
  const agc::InitialSet x0 = agc::build_x0(agc::Matrix::from_rows({{1.0}, {-1.0}}),
                                           agc::Matrix(2, n_d), {0.0, 0.0});
  return agc::build_system(agc::Matrix(1, 1), agc::Matrix(1, n_d), agc::Matrix(n_d, 1),
                           agc::Matrix::identity(n_d), x0);
}

inline agc::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                 double scale) {
  agc::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -scale, scale);
  return m;
}

// Random affine system with a mildly contractive state matrix and a box of
// admissible initial states.
inline agc::System random_system(std::mt19937_64& rng, std::size_t n_x, std::size_t n_d,
                                 std::size_t n_y) {
  const agc::Matrix a = random_matrix(rng, n_x, n_x, 0.9 / static_cast<double>(n_x));
  const agc::Matrix b = random_matrix(rng, n_x, n_d, 1.0);
  const agc::Matrix c = random_matrix(rng, n_y, n_x, 1.0);
  const agc::Matrix d = random_matrix(rng, n_y, n_d, 1.0);
  agc::Vec w(n_x), v(n_y);
  for (double& x : w) x = uniform(rng, -0.2, 0.2);
  for (double& x : v) x = uniform(rng, -0.2, 0.2);

  agc::Matrix fx(0, n_x);
  agc::Vec f;
  for (std::size_t i = 0; i < n_x; ++i) {
    for (double sign : {1.0, -1.0}) {
      agc::Vec row(n_x, 0.0);
      row[i] = sign;
      fx.append_row(row);
      f.push_back(uniform(rng, 0.1, 1.0));
    }
  }
  return agc::build_system(a, b, c, d, w, v,
                           agc::build_x0(fx, agc::Matrix(2 * n_x, n_d), f));
}

// Input sequence admissible for box_rate_assumptions: a clamped random walk.
inline std::vector<agc::Vec> admissible_inputs(std::mt19937_64& rng, std::size_t n_d,
                                               const BoxRate& p, std::size_t samples) {
  std::vector<agc::Vec> out;
  agc::Vec d(n_d);
  for (double& x : d) x = uniform(rng, -p.box, p.box);
  out.push_back(d);
  for (std::size_t k = 1; k < samples; ++k) {
    for (std::size_t j = 0; j < n_d; ++j) {
      double nx = d[j] + uniform(rng, -p.rate, p.rate);
      nx = std::min(p.box, std::max(-p.box, nx));
      d[j] = nx;
    }
    out.push_back(d);
  }
  return out;
}

// Initial state drawn from the random_system box.
inline agc::Vec admissible_initial_state(std::mt19937_64& rng, const agc::System& sys) {
  agc::Vec x(sys.state_dim);
  for (std::size_t i = 0; i < sys.state_dim; ++i) {
    const double hi = sys.initial_set.upper[2 * i];
    const double lo = -sys.initial_set.upper[2 * i + 1];
    x[i] = uniform(rng, lo, hi);
  }
  return x;
}

}  // namespace testsupport
