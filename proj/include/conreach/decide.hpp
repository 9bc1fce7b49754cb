#pragma once

#include "conreach/setmaps.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace conreach {

constexpr int kDefaultCap = 25;
/// The direct route gives up once an iterate has more vertices plus rays.
constexpr Index kMaxGenerators = 250;

/// Raised by validate; `issues` lists every failed check.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Messages for each violated standing assumption: 0 in Y, [C D] onto, Y solid.
std::vector<std::string> validation_issues(const Sigma& sys, const Polyhedron& y);
void validate(const Sigma& sys, const Polyhedron& y);

enum class CaseVariant { Case1Strong, Case1Weak, Case2, Case3 };
std::string to_string(CaseVariant v);

struct CaseTag {
  CaseVariant variant = CaseVariant::Case3;
  Subspace ksub;
  bool sum_is_universe = false;     ///< K + Y = Q^s
  InteriorWitness interior;         ///< point of K in int Y, if any
  bool meets_only_at_origin = false;  ///< K cap Y = {0}
};

CaseTag classify(const Sigma& sys, const Polyhedron& y);

struct EigenCondition {
  bool holds = true;
  std::optional<EigenCertificate> certificate;
  bool singular_pencil = false;
};

struct Conditions {
  bool a = false;                        ///< (A, B) controllable
  std::optional<RatVector> a_witness;    ///< q with q^T A^k B = 0 for all k
  EigenCondition b;                      ///< no eigenpair with u in Y+, lambda >= 0
  bool c = false;                        ///< bounded output-nulling subspace of the dual is trivial
  BoundedSubspace c_subspace;
  EigenCondition d;                      ///< no eigenpair with u in -Y^b, lambda in [0, 1]

  bool all() const { return a && b.holds && c && d.holds; }
  /// Some answer rests on floating point root isolation.
  bool numerical() const;
};

Conditions check_conditions(const Sigma& sys, const Polyhedron& y, double tol = 1e-9);

enum class Status { Reachable, NotReachable, Inconclusive };
enum class Route { Spectral, DirectIteration, Case2Subspace };
std::string to_string(Status s);
std::string to_string(Route r);

struct Certificate {
  std::string kind;       ///< eigenpair, uncontrollable-direction, bounded-subspace, state-outside, subspace-gap
  std::string condition;  ///< a, b, c, d or empty
  std::optional<EigenCertificate> eigen;
  std::optional<RatVector> vector;
  std::string note;
};

struct SequenceRecord {
  std::string name;  ///< "X(F)" or "R(F)"
  std::vector<Polyhedron> sets;
  std::optional<int> stabilized_at;
};

struct Verdict {
  Status status = Status::Inconclusive;
  Route route = Route::Spectral;
  std::vector<Certificate> certificates;
  int steps_used = 0;
  std::vector<std::string> notes;
};

struct Decision {
  Verdict verdict;
  std::optional<Conditions> conditions;
  std::vector<SequenceRecord> sequences;
};

Decision decide_case1(const Sigma& sys, const Polyhedron& y, const CaseTag& tag, int cap = kDefaultCap,
                      double tol = 1e-9);
Decision decide_case2(const Sigma& sys, const Polyhedron& y, int cap = kDefaultCap);

/// Direct route on F alone: X(F) to stabilization, then R_l(F) until it
/// contains X(F) and stabilizes, or the cap or kMaxGenerators runs out.
Decision direct_route(const Sigma& sys, const Polyhedron& y, int cap = kDefaultCap);

struct Report {
  CaseTag case_tag;
  SubspaceReport subspaces;
  std::optional<Conditions> conditions;
  Verdict verdict;
  std::vector<SequenceRecord> sequences;
  int cap = kDefaultCap;
};

/// validate, classify, subspaces, then the decision matching the case.
Report analyze(const Sigma& sys, const Polyhedron& y, int cap = kDefaultCap, double tol = 1e-9);

struct DualityStep {
  int step = 0;
  bool holds = false;
};

struct ConsistencyReport {
  Status spectral = Status::Inconclusive;
  Status direct = Status::Inconclusive;
  bool verdicts_agree = true;
  std::vector<DualityStep> duality;  ///< polar(X_l(F)) == -R_l(F°)
  bool duality_holds = true;
  bool consistent() const { return verdicts_agree && duality_holds; }
  std::vector<std::string> notes;
};

/// Spectral verdict against the direct route plus the finite-step duality
/// check for l = 1..duality_steps. Needs a case 1 system.
ConsistencyReport oracle_compare(const Sigma& sys, const Polyhedron& y, int cap = kDefaultCap, int duality_steps = 4,
                                 double tol = 1e-9);

}  // namespace conreach
