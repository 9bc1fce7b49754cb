#pragma once

#include "conreach/subspace.hpp"

#include <vector>

namespace conreach {

/// x+ = A x + B u, y = C x + D u with x in Q^n, u in Q^m, y in Q^s.
struct Sigma {
  RatMatrix A, B, C, D;

  Index n() const { return A.rows(); }
  Index m() const { return B.cols(); }
  Index s() const { return C.rows(); }

  /// Throws std::invalid_argument naming the first inconsistent block.
  void check() const;
};

Sigma make_sigma(RatMatrix a, RatMatrix b, RatMatrix c, RatMatrix d);

struct SubspaceIteration {
  Subspace limit;
  std::vector<Subspace> sequence;  ///< iterates starting from the initial subspace
  int steps = 0;                   ///< first j with sequence[j + 1] == sequence[j]
};

/// Weakly unobservable subspace: decreasing iteration from Q^n.
SubspaceIteration vstar_iteration(const Sigma& sys);
inline Subspace vstar(const Sigma& sys) { return vstar_iteration(sys).limit; }

/// Strongly reachable subspace: increasing iteration from {0}.
SubspaceIteration tstar_iteration(const Sigma& sys);
inline Subspace tstar(const Sigma& sys) { return tstar_iteration(sys).limit; }

/// Lambda_n ker Theta_n, the closed form of the strongly reachable subspace.
Subspace tstar_closed_form(const Sigma& sys);

/// im D + C T*
Subspace k_subspace(const Sigma& sys);
/// ker D cap B^{-1} V*
Subspace l_subspace(const Sigma& sys);

struct SubspaceReport {
  Subspace vstar, tstar, rstar, ksub, lsub;
  bool right_invertible = false;
  bool left_invertible = false;
  int vstar_steps = 0;
  int tstar_steps = 0;
  bool duality_holds = false;  ///< K(sys)^perp == L(dual(sys))
};

SubspaceReport kl_subspaces(const Sigma& sys);

/// (A^T, C^T, B^T, D^T)
Sigma dual(const Sigma& sys);
/// (A, B E, C, D E) with E the canonical basis of U.
Sigma restrict_inputs(const Sigma& sys, const Subspace& inputs);

struct BoundedSubspace {
  Subspace value;
  /// False when some irreducible factor of the quotient dynamics mixes
  /// bounded and unbounded eigenvalues; `value` is then the smallest
  /// rational subspace containing the bounded part.
  bool exact = true;
};

/// States of V*(U, sys) admitting a bounded output-nulling trajectory with
/// inputs in U.
BoundedSubspace vstar_g(const Sigma& sys, const Subspace& inputs, double tol = 1e-8);

struct RecursiveMatrices {
  RatMatrix gamma, lambda, theta;
};

/// Gamma_1 = C, Lambda_1 = B, Theta_1 = D and
/// Gamma_{l+1} = [Gamma_l A; C], Lambda_{l+1} = [A Lambda_l, B],
/// Theta_{l+1} = [[C Lambda_l, D], [Theta_l, 0]].
RecursiveMatrices recursive_matrices(const Sigma& sys, int steps);

Subspace controllable_subspace(const RatMatrix& a, const RatMatrix& b);
bool kalman_controllable(const Sigma& sys);
/// Nonzero q with q^T A^k B = 0 for all k, when (A, B) is not controllable.
std::optional<RatVector> uncontrollable_direction(const Sigma& sys);

}  // namespace conreach
