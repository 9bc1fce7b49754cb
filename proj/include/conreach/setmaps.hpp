#pragma once

#include "conreach/geomctrl.hpp"
#include "conreach/polyhedron.hpp"
#include "conreach/spectral.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conreach {

enum class MapTag { F, Fcon, Frec, Fpolar, Fminus, Fb, Raw };

std::string to_string(MapTag tag);
/// Accepts the names printed by to_string; throws std::invalid_argument.
MapTag parse_map_tag(std::string_view name);
bool is_dual_tag(MapTag tag);
/// Tags whose graph is a convex cone by construction.
bool is_process_tag(MapTag tag);

struct Provenance {
  Sigma sys;
  Polyhedron y;
};

/// Set-valued map on Q^dim given by its graph in Q^(2 dim): (x, x') with x' in H(x).
struct ConstrainedMap {
  Index dim = 0;
  Polyhedron graph;
  MapTag tag = MapTag::Raw;
  std::optional<Provenance> provenance;
};

ConstrainedMap raw_map(const Polyhedron& graph);

/// F, Fcon or Frec: x' = A x + B u with C x + D u in Y, cone(Y) or 0+Y.
ConstrainedMap build_primal(const Sigma& sys, const Polyhedron& y, MapTag which);
/// Fpolar, Fminus or Fb: q' = A^T q + C^T v with B^T q + D^T v = 0 and
/// v in -Y°, Y+ or -Y^b.
ConstrainedMap build_dual(const Sigma& sys, const Polyhedron& y, MapTag which);
/// Dispatches to build_primal or build_dual.
ConstrainedMap build_map(const Sigma& sys, const Polyhedron& y, MapTag which);

enum class ApplyMode { Image, Preimage };

Polyhedron map_apply(const ConstrainedMap& h, ApplyMode mode, const Polyhedron& p);

enum class SequenceKind { Reach, Feasible };
enum class SequenceMethod { Iterate, Direct };

/// [S_1, ..., S_steps] with R_l = H^l(0) or X_l = H^-l(Q^dim).
/// Direct needs provenance and unrolls the system over l steps.
std::vector<Polyhedron> reach_feas(const ConstrainedMap& h, int steps, SequenceKind kind,
                                   SequenceMethod method = SequenceMethod::Iterate);

struct Stabilization {
  std::vector<Polyhedron> sets;  ///< S_1, S_2, ... as computed
  /// First l with S_(l+1) == S_l; sets then ends with S_(l+1).
  std::optional<int> stabilized_at;
};

/// Iterates until two consecutive sets agree or `cap` sets have been built.
Stabilization iterate_until_stable(const ConstrainedMap& h, SequenceKind kind, int cap);

struct MapStructure {
  Polyhedron domain;
  bool onto = false;
  bool strict = false;
};

MapStructure structure_queries(const ConstrainedMap& h);

/// F^l(T*) evaluated as Lambda_(n+l) Theta_(n+l)^-1 (Y^l x {0}^n).
Polyhedron forward_image_of_tstar(const Sigma& sys, const Polyhedron& y, int steps);

enum class ConeTag { Yplus, NegYb };

std::string to_string(ConeTag tag);

/// lambda q' = A^T q + C^T u with B^T q + D^T u = 0, q != 0 and u in the tagged cone.
struct EigenCertificate {
  double lambda = 0;
  std::optional<Rational> lambda_exact;  ///< unset for irrational lambda
  Eigen::VectorXd q, u;
  RatVector q_exact, u_exact;  ///< filled only when lambda is rational
  ConeTag cone = ConeTag::Yplus;
  double residual = 0;

  bool exact() const { return lambda_exact.has_value(); }
};

struct EigenSearch {
  std::optional<EigenCertificate> certificate;
  /// ker(M - x N) is nontrivial for every x: the eigenvector set moves in a
  /// continuum and only the sampled points were examined.
  bool singular_pencil = false;
  int points_checked = 0;
};

/// Searches for lambda in the interval with a nonzero cone-constrained
/// eigenvector. Every cell between consecutive critical values is probed at
/// a rational point, rational critical values exactly, irrational ones in
/// floating point.
EigenSearch cone_eigen_search(const Sigma& sys, const Polyhedron& cone, const Interval& interval, ConeTag tag,
                              double tol = 1e-9);

/// (q, lambda q) in gr(H); H must be a process.
bool eigen_membership(const ConstrainedMap& h, const Rational& lambda, const RatVector& q);

}  // namespace conreach
