#pragma once

#include "conreach/polynomial.hpp"
#include "conreach/subspace.hpp"

#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace conreach {

struct RealEigenvalue {
  double value = 0;
  std::optional<Rational> exact;  ///< set for rational eigenvalues
  int algebraic = 0;
  int geometric = 0;
};

/// Real eigenvalues of a square rational matrix, ascending.
/// Rational eigenvalues get exact multiplicities; irrational ones use
/// numerical rank at tolerance `tol`.
std::vector<RealEigenvalue> real_eigen(const RatMatrix& m, double tol = 1e-9);

/// Exact determinant.
Rational determinant(const RatMatrix& m);

/// det(m0 - x m1) as an exact polynomial in x (square matrices).
Polynomial pencil_determinant(const RatMatrix& m0, const RatMatrix& m1);

struct Interval {
  Rational lo = 0;
  std::optional<Rational> hi;  ///< nullopt means +infinity

  bool contains(double x, double slack = 0) const;
  bool contains(const Rational& x) const;
};

struct PencilFinite {
  std::vector<RealRoot> values;  ///< rank-drop points inside the interval, ascending
  Index generic_rank = 0;
};

struct PencilSingular {
  Subspace common_kernel;
};

using PencilResult = std::variant<PencilFinite, PencilSingular>;

/// Rank-drop points of the pencil M - x N on the interval. Returns Singular
/// when ker M cap ker N is nontrivial.
PencilResult pencil_candidates(const RatMatrix& m, const RatMatrix& n, const Interval& interval);

/// Generic rank of M - x N: the maximum over a handful of rational probes.
Index generic_rank(const RatMatrix& m, const RatMatrix& n);

/// Monic squarefree polynomial whose roots split the real line into open
/// cells on which the sign pattern of every relevant minor of [M - x N; F]
/// is constant: all r x r minors of M - x N (r its generic rank) and all
/// maximal minors that use exactly r pencil rows. On such a cell the cone
/// {z : (M - x N) z = 0} seen through the rows of F has fixed combinatorics.
Polynomial critical_polynomial(const RatMatrix& m, const RatMatrix& n, const RatMatrix& f);

}  // namespace conreach
