#pragma once

// The reference systems used across the test binaries.

#include "conreach/decide.hpp"
#include "support.hpp"

namespace testing {

struct Constrained {
  conreach::Sigma sys;
  Polyhedron y;
};

// EX1: A = [[0,1],[1,0]], B = e1, C = [[0,0],[0,1]], D = e1, Y = [-1,1]^2.
inline Constrained ex1() {
  return {conreach::make_sigma(mat({{0, 1}, {1, 0}}), mat({{1}, {0}}), mat({{0, 0}, {0, 1}}), mat({{1}, {0}})),
          box(2, 1)};
}

inline Constrained scalar_system(long a, long b, long c, long d) {
  return {conreach::make_sigma(mat({{a}}), mat({{b}}), mat({{c}}), mat({{d}})), interval(-1, 1)};
}

inline Constrained ex2() { return scalar_system(1, 0, 1, 0); }
inline Constrained ex3() { return scalar_system(2, 0, 1, 0); }
inline Constrained ex4() { return scalar_system(0, 1, 0, 1); }
inline Constrained ex5() { return scalar_system(2, 1, 0, 1); }

// EX6 graph {(x, y) : |x| <= 1, y >= 2|x|}: X_l never settles.
inline Polyhedron ex6_graph() {
  return Polyhedron::from_hrep(mat({{1, 0}, {-1, 0}, {2, -1}, {-2, -1}}), vec({1, 1, 0, 0}));
}

inline conreach::Sigma random_sigma(Rng& rng, Index n, Index m, Index s) {
  return conreach::make_sigma(rng.matrix(n, n), rng.matrix(n, m), rng.matrix(s, n), rng.matrix(s, m));
}

// K = span(e2) touches Y = [0,1] x [-1,1] only along its boundary.
inline Constrained case3() {
  return {conreach::make_sigma(mat({{0}}), mat({{1}}), mat({{1}, {0}}), mat({{0}, {1}})),
          Polyhedron::box(vec({0, -1}), vec({1, 1}))};
}

/// Random (Sigma, Y) with 0 in the interior of Y.
inline Constrained random_constrained(Rng& rng, Index n, Index m, Index s) {
  const conreach::Sigma sys = random_sigma(rng, n, m, s);
  if (s == 0) return {sys, Polyhedron::universe(0)};
  return {sys, rng.polyhedron_around_origin(s, 1, 2 * static_cast<int>(s) + 1)};
}

/// Valid random systems with K + Y = Q^s, n <= max_n, m, s <= 2.
inline Constrained random_strong(Rng& rng, Index max_n) {
  while (true) {
    const Index n = rng.uniform(1, max_n), m = rng.uniform(0, 2), s = rng.uniform(1, 2);
    Constrained c = random_constrained(rng, n, m, s);
    if (!conreach::validation_issues(c.sys, c.y).empty()) continue;
    const Polyhedron k = Polyhedron::from_subspace(conreach::k_subspace(c.sys));
    if (minkowski_sum(k, c.y).is_universe()) return c;
  }
}

/// Valid random systems with K = {0}: the zero-output reachable states sit
/// in ker C and D = 0, then a unimodular change of state coordinates.
inline Constrained random_case2(Rng& rng, Index max_n) {
  while (true) {
    const Index n = rng.uniform(2, max_n), m = rng.uniform(1, 2), s = 1;
    const Index r = rng.uniform(1, n - 1);  // dimension of the block hidden from the output
    RatMatrix a = rng.matrix(n, n), b = RatMatrix::Zero(n, m), c = RatMatrix::Zero(s, n);
    a.bottomLeftCorner(n - r, r).setZero();
    b.topRows(r) = rng.matrix(r, m);
    c.rightCols(n - r) = rng.matrix(s, n - r);
    if (c.isZero()) continue;
    RatMatrix t = RatMatrix::Identity(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) t(i, j) = rng.uniform(-1, 1);
    if (rng.coin()) t.transposeInPlace();
    const RatMatrix ti = conreach::inverse(t);
    const conreach::Sigma sys = conreach::make_sigma(t * a * ti, t * b, c * ti, RatMatrix::Zero(s, m));
    Polyhedron y = rng.polyhedron_around_origin(s, 1, 3);
    if (!conreach::validation_issues(sys, y).empty()) continue;
    return {sys, y};
  }
}

}  // namespace testing
