#pragma once

#include "conreach/linalg.hpp"

namespace conreach {

/// Linear subspace of Q^n. The basis is kept in reduced column echelon form,
/// so two subspaces are equal exactly when their bases are identical.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient);
  static Subspace full(Index ambient);
  /// Column span of `generators` (rows = ambient dimension).
  static Subspace span(const RatMatrix& generators);

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.cols(); }
  const RatMatrix& basis() const { return basis_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  bool contains(const RatVector& x) const;
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.cols() == b.basis_.cols() && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Index ambient_ = 0;
  RatMatrix basis_;
};

Subspace operator+(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
/// Orthogonal complement.
Subspace perp(const Subspace& s);
/// {x : m x in s}
Subspace preimage(const RatMatrix& m, const Subspace& s);
/// {m x : x in s}
Subspace image(const RatMatrix& m, const Subspace& s);
/// s1 x s2 inside the product space.
Subspace product(const Subspace& a, const Subspace& b);

inline Subspace kernel(const RatMatrix& m) { return Subspace::span(kernel_basis(m)); }
inline Subspace column_span(const RatMatrix& m) { return Subspace::span(m); }

struct Decomposition {
  Index rank = 0;
  Subspace kernel;
  Subspace image;
};

Decomposition decompose(const RatMatrix& m);

/// Some vector of `a` outside `b`, if any.
std::optional<RatVector> witness_outside(const Subspace& a, const Subspace& b);

}  // namespace conreach
