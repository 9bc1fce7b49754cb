#pragma once

// Shared helpers for the test binaries: literal builders, a seeded random
// source, and brute-force oracles that do not go through the library's
// double description code.

#include "conreach/polyhedron.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testing {

using conreach::Index;
using conreach::Polyhedron;
using conreach::Rational;
using conreach::RatMatrix;
using conreach::RatVector;

inline RatMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r > 0 ? static_cast<Index>(rows.begin()->size()) : 0;
  RatMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline RatVector vec(std::initializer_list<Rational> xs) {
  RatVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline Polyhedron box(Index dim, long radius) {
  return Polyhedron::box(RatVector::Constant(dim, Rational(-radius)), RatVector::Constant(dim, Rational(radius)));
}

inline Polyhedron interval(long lo, long hi) { return Polyhedron::box(vec({lo}), vec({hi})); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  RatMatrix matrix(Index rows, Index cols, long lo = -2, long hi = 2) {
    RatMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  RatVector vector(Index n, long lo = -2, long hi = 2) { return matrix(n, 1, lo, hi).col(0); }

  /// Random polyhedron {y : a_i . y <= b_i} with 0 in its interior.
  Polyhedron polyhedron_around_origin(Index dim, int min_rows, int max_rows) {
    const int rows = static_cast<int>(uniform(min_rows, max_rows));
    RatMatrix g(rows, dim);
    RatVector h(rows);
    for (int i = 0; i < rows; ++i) {
      do {
        g.row(i) = vector(dim).transpose();
      } while (g.row(i).isZero());
      h(i) = uniform(1, 3);
    }
    return Polyhedron::from_hrep(g, h);
  }

  struct RawSystem {
    RatMatrix g, e;
    RatVector h, f;
  };

  /// Random inequality system, sometimes with equalities; the resulting
  /// sets mix bounded, unbounded, lower dimensional and empty cases.
  RawSystem raw_system(Index dim) {
    RawSystem s;
    const int rows = static_cast<int>(uniform(0, 2 * dim + 2));
    const int eqs = coin(0.2) ? static_cast<int>(uniform(1, std::max<Index>(1, dim - 1))) : 0;
    s.g = matrix(rows, dim);
    s.h = RatVector(rows);
    for (int i = 0; i < rows; ++i) s.h(i) = uniform(-1, 3);
    s.e = matrix(eqs, dim);
    s.f = RatVector(eqs);
    for (int i = 0; i < eqs; ++i) s.f(i) = uniform(-1, 1);
    return s;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Brute-force vertices of {y : G y <= h}: solve every d x d subsystem and keep
/// the feasible unique solutions. Independent of the double description code.
inline std::vector<RatVector> brute_force_vertices(const RatMatrix& g, const RatVector& h) {
  const Index d = g.cols();
  const Index m = g.rows();
  std::vector<RatVector> out;
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + std::min(d, m), true);
  if (d > m) return out;
  do {
    std::vector<Index> rows;
    for (Index i = 0; i < m; ++i)
      if (pick[static_cast<std::size_t>(i)]) rows.push_back(i);
    RatMatrix a(d, d);
    RatVector b(d);
    for (Index k = 0; k < d; ++k) {
      a.row(k) = g.row(rows[static_cast<std::size_t>(k)]);
      b(k) = h(rows[static_cast<std::size_t>(k)]);
    }
    if (conreach::rank(a) < d) continue;
    const auto x = conreach::solve(a, RatMatrix(b));
    if (!x) continue;
    const RatVector y = x->col(0);
    bool feasible = true;
    for (Index i = 0; i < m && feasible; ++i) feasible = g.row(i).dot(y) <= h(i);
    if (!feasible) continue;
    bool seen = false;
    for (const auto& v : out) seen = seen || v == y;
    if (!seen) out.push_back(y);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace testing
