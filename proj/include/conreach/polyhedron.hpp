#pragma once

#include "conreach/subspace.hpp"

#include <optional>
#include <vector>

namespace conreach {

/// Convex polyhedron {y : G y <= h, E y = f} = conv(V) + cone(R) + span(L)
/// over the rationals. Both descriptions are kept in canonical form:
/// - lineality: reduced column echelon basis;
/// - vertices and rays: orthogonal to the lineality space, rays primitive
///   integer vectors, both lexicographically sorted;
/// - equalities: reduced row echelon form of [E f];
/// - inequalities: facet defining only, reduced on the equality pivot
///   columns, primitive integer rows, lexicographically sorted.
/// Two polyhedra are equal exactly when their canonical inequality systems are.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_hrep(const RatMatrix& g, const RatVector& h, const RatMatrix& e, const RatVector& f);
  static Polyhedron from_hrep(const RatMatrix& g, const RatVector& h);
  /// Generators are columns. An empty vertex set gives the empty polyhedron.
  static Polyhedron from_vrep(const RatMatrix& vertices, const RatMatrix& rays, const RatMatrix& lineality);

  /// Stored as the single row 0 . y <= -1.
  static Polyhedron empty(Index dim);
  static Polyhedron universe(Index dim);
  static Polyhedron origin(Index dim);
  static Polyhedron point(const RatVector& p);
  static Polyhedron box(const RatVector& lo, const RatVector& hi);
  static Polyhedron from_subspace(const Subspace& s);

  Index dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool is_bounded() const { return !empty_ && rays_.cols() == 0 && lineality_.cols() == 0; }
  /// Nonempty and closed under nonnegative scaling.
  bool is_cone() const;
  bool is_universe() const { return !empty_ && g_.rows() == 0 && e_.rows() == 0; }
  bool is_origin() const;

  const RatMatrix& ineq_matrix() const { return g_; }
  const RatVector& ineq_rhs() const { return h_; }
  const RatMatrix& eq_matrix() const { return e_; }
  const RatVector& eq_rhs() const { return f_; }

  const RatMatrix& vertices() const { return vertices_; }
  const RatMatrix& rays() const { return rays_; }
  const RatMatrix& lineality() const { return lineality_; }

  bool contains(const RatVector& y) const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b);
  friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }

 private:
  void set_generators(const RatMatrix& vertices, const RatMatrix& rays, const RatMatrix& lineality);
  void set_constraints(const RatMatrix& g, const RatVector& h, const RatMatrix& e, const RatVector& f);
  void compute_hrep_from_generators();
  void compute_vrep_from_constraints(const RatMatrix& g, const RatVector& h, const RatMatrix& e, const RatVector& f);

  Index dim_ = 0;
  bool empty_ = true;
  RatMatrix g_, e_;
  RatVector h_, f_;
  RatMatrix vertices_, rays_, lineality_;
};

// Convex calculus.

/// {q : <q, y> <= 1 for all y in P}; requires 0 in P.
Polyhedron polar(const Polyhedron& p);
/// {q : <q, y> <= 0 for all y in P}
Polyhedron neg_polar_cone(const Polyhedron& p);
/// {q : <q, y> >= 0 for all y in P}
Polyhedron pos_polar_cone(const Polyhedron& p);
Polyhedron recession_cone(const Polyhedron& p);
Polyhedron barrier_cone(const Polyhedron& p);
Polyhedron conic_hull(const Polyhedron& p);
/// max over vertices of the infinity norm, so P is inside mu * ball + 0+P.
Rational hyperbolicity_witness(const Polyhedron& p);

struct InteriorWitness {
  bool found = false;
  RatVector point;
};

InteriorWitness interior_point(const Polyhedron& p);
bool is_solid(const Polyhedron& p);
/// Whether S meets the interior of P, with a witness in S cap int P.
InteriorWitness subspace_meets_interior(const Subspace& s, const Polyhedron& p);

// Linear maps.

Polyhedron image(const RatMatrix& m, const Polyhedron& p);
Polyhedron preimage(const RatMatrix& m, const Polyhedron& p);
Polyhedron negate(const Polyhedron& p);
/// Coordinates [first, first + count).
Polyhedron project(const Polyhedron& p, Index first, Index count);

// Set algebra.

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);
Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
Polyhedron product(const Polyhedron& a, const Polyhedron& b);
/// P x P x ... x P (k factors); k = 0 gives the zero-dimensional point.
Polyhedron power(const Polyhedron& p, int k);
bool subset_eq(const Polyhedron& a, const Polyhedron& b);
/// A generator of `a` that violates `b`, if any: (vector, kind) with kind
/// "vertex", "ray" or "lineality".
std::optional<std::pair<RatVector, std::string>> containment_violation(const Polyhedron& a, const Polyhedron& b);

/// Vertex enumeration count plus constraint count, for diagnostics.
struct PolyhedronProfile {
  Index constraints = 0;
  Index equalities = 0;
  Index vertices = 0;
  Index rays = 0;
  Index lineality = 0;
  std::optional<Rational> width;  ///< max infinity norm of vertices when bounded
};

PolyhedronProfile profile(const Polyhedron& p);

}  // namespace conreach
