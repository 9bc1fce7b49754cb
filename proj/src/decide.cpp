#include "conreach/decide.hpp"

#include <sstream>

namespace conreach {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

Certificate eigen_certificate(const std::string& condition, const EigenCertificate& e) {
  Certificate c;
  c.kind = "eigenpair";
  c.condition = condition;
  c.eigen = e;
  if (!e.exact()) c.note = "irrational eigenvalue, verified in floating point";
  return c;
}

/// Certificate for the first failing condition.
Certificate failing_condition(const Conditions& c) {
  if (!c.a) {
    Certificate out;
    out.kind = "uncontrollable-direction";
    out.condition = "a";
    out.vector = c.a_witness;
    return out;
  }
  if (!c.b.holds) return eigen_certificate("b", *c.b.certificate);
  if (!c.c) {
    Certificate out;
    out.kind = "bounded-subspace";
    out.condition = "c";
    out.vector = c.c_subspace.value.basis().col(0);
    if (!c.c_subspace.exact) out.note = "subspace hull of an irrational eigenvalue split";
    return out;
  }
  return eigen_certificate("d", *c.d.certificate);
}

Subspace recession_span(const Polyhedron& y) {
  const Polyhedron r = recession_cone(y);
  return Subspace::span(hstack(r.rays(), r.lineality()));
}

Index generator_count(const Polyhedron& p) { return p.vertices().cols() + p.rays().cols(); }

std::string width_text(const Polyhedron& p) {
  const auto prof = profile(p);
  return prof.width ? to_string(*prof.width) : std::string("unbounded");
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::invalid_argument("invalid constrained system: " + join(issues)), issues_(std::move(issues)) {}

std::vector<std::string> validation_issues(const Sigma& sys, const Polyhedron& y) {
  std::vector<std::string> out;
  try {
    sys.check();
  } catch (const std::invalid_argument& e) {
    return {e.what()};
  }
  if (y.dim() != sys.s())
    return {"constraint set has dimension " + std::to_string(y.dim()) + ", outputs have dimension " +
            std::to_string(sys.s())};
  if (!y.contains(RatVector::Zero(y.dim()))) out.push_back("constraint set does not contain the origin");
  RatMatrix cd(sys.s(), sys.n() + sys.m());
  cd << sys.C, sys.D;
  if (rank(cd) < sys.s()) out.push_back("[C D] is not surjective");
  if (!is_solid(y)) out.push_back("constraint set has empty interior");
  return out;
}

void validate(const Sigma& sys, const Polyhedron& y) {
  auto issues = validation_issues(sys, y);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::string to_string(CaseVariant v) {
  switch (v) {
    case CaseVariant::Case1Strong: return "Case1Strong";
    case CaseVariant::Case1Weak: return "Case1Weak";
    case CaseVariant::Case2: return "Case2";
    case CaseVariant::Case3: return "Case3";
  }
  return "Case3";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Reachable: return "Reachable";
    case Status::NotReachable: return "NotReachable";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::Spectral: return "Spectral";
    case Route::DirectIteration: return "DirectIteration";
    case Route::Case2Subspace: return "Case2Subspace";
  }
  return "Spectral";
}

CaseTag classify(const Sigma& sys, const Polyhedron& y) {
  CaseTag tag;
  tag.ksub = k_subspace(sys);
  const Polyhedron k = Polyhedron::from_subspace(tag.ksub);
  tag.sum_is_universe = minkowski_sum(k, y).is_universe();
  tag.interior = subspace_meets_interior(tag.ksub, y);
  tag.meets_only_at_origin = intersect(k, y).is_origin();
  // With 0 in int Y the origin alone would meet the interior, so K cap Y = {0}
  // is tested first.
  if (tag.sum_is_universe)
    tag.variant = CaseVariant::Case1Strong;
  else if (tag.meets_only_at_origin)
    tag.variant = CaseVariant::Case2;
  else if (tag.interior.found)
    tag.variant = CaseVariant::Case1Weak;
  else
    tag.variant = CaseVariant::Case3;
  return tag;
}

bool Conditions::numerical() const {
  return (b.certificate && !b.certificate->exact()) || (d.certificate && !d.certificate->exact()) ||
         !c_subspace.exact;
}

Conditions check_conditions(const Sigma& sys, const Polyhedron& y, double tol) {
  Conditions out;
  out.a = kalman_controllable(sys);
  if (!out.a) out.a_witness = uncontrollable_direction(sys);

  const auto b = cone_eigen_search(sys, pos_polar_cone(y), {0, std::nullopt}, ConeTag::Yplus, tol);
  out.b = {!b.certificate.has_value(), b.certificate, b.singular_pencil};

  out.c_subspace = vstar_g(dual(sys), perp(recession_span(y)));
  out.c = out.c_subspace.value.is_zero();

  const auto d = cone_eigen_search(sys, negate(barrier_cone(y)), {0, Rational(1)}, ConeTag::NegYb, tol);
  out.d = {!d.certificate.has_value(), d.certificate, d.singular_pencil};
  return out;
}

Decision direct_route(const Sigma& sys, const Polyhedron& y, int cap) {
  if (cap < 1) throw std::invalid_argument("iteration cap must be positive");
  Decision out;
  Verdict& v = out.verdict;
  v.route = Route::DirectIteration;
  const ConstrainedMap f = build_primal(sys, y, MapTag::F);
  auto too_big = [&](const Polyhedron& p, const std::string& name, int l) {
    const Index gens = generator_count(p);
    if (gens <= kMaxGenerators) return false;
    v.status = Status::Inconclusive;
    v.notes.push_back(name + "_" + std::to_string(l) + "(F) has " + std::to_string(gens) + " generators, above the limit of " +
                      std::to_string(kMaxGenerators) + "; iteration stopped");
    return true;
  };

  SequenceRecord xs{"X(F)", {}, std::nullopt};
  Polyhedron current = Polyhedron::universe(sys.n());
  for (int l = 1; l <= cap; ++l) {
    Polyhedron next = map_apply(f, ApplyMode::Preimage, current);
    const bool same = l > 1 && next == current;
    xs.sets.push_back(next);
    v.steps_used = l;
    if (same) {
      xs.stabilized_at = l - 1;
      break;
    }
    if (too_big(next, "X", l)) {
      out.sequences.push_back(std::move(xs));
      return out;
    }
    current = std::move(next);
  }
  out.sequences.push_back(xs);
  if (!xs.stabilized_at) {
    v.status = Status::Inconclusive;
    v.notes.push_back("X_l(F) did not stabilize within " + std::to_string(cap) + " steps");
    return out;
  }
  const Polyhedron& x = xs.sets.back();

  SequenceRecord rec{"R(F)", {}, std::nullopt};
  std::optional<int> contained_at;
  current = Polyhedron::origin(sys.n());
  for (int l = 1; l <= cap; ++l) {
    Polyhedron next = map_apply(f, ApplyMode::Image, current);
    const bool same = l > 1 && next == current;
    rec.sets.push_back(next);
    if (!contained_at && subset_eq(x, next)) contained_at = l;
    if (same) {
      rec.stabilized_at = l - 1;
      break;
    }
    // Once X(F) is covered the verdict is settled; only the record is cut short.
    if (contained_at && generator_count(next) > kMaxGenerators) break;
    if (!contained_at && too_big(next, "R", l)) {
      v.steps_used = std::max(v.steps_used, l);
      out.sequences.push_back(std::move(rec));
      return out;
    }
    current = std::move(next);
  }
  v.steps_used = std::max(v.steps_used, static_cast<int>(rec.sets.size()));
  out.sequences.push_back(rec);

  if (contained_at) {
    v.status = Status::Reachable;
    v.notes.push_back("X(F) is contained in R_" + std::to_string(*contained_at) + "(F)");
  } else if (rec.stabilized_at) {
    v.status = Status::NotReachable;
    Certificate c;
    c.kind = "state-outside";
    const auto bad = containment_violation(x, rec.sets.back());
    c.vector = bad->first;
    c.note = "feasible " + bad->second + " of X(F) outside the stabilized R(F)";
    v.certificates.push_back(std::move(c));
  } else {
    v.status = Status::Inconclusive;
    v.notes.push_back("R_l(F) neither stabilized nor covered X(F) within " + std::to_string(cap) + " steps");
  }
  return out;
}

Decision decide_case1(const Sigma& sys, const Polyhedron& y, const CaseTag& tag, int cap, double tol) {
  if (tag.variant != CaseVariant::Case1Strong && tag.variant != CaseVariant::Case1Weak)
    throw std::invalid_argument("decide_case1: system is not in case 1");
  const Conditions cond = check_conditions(sys, y, tol);
  Decision out;
  if (cond.all()) {
    out.verdict.status = Status::Reachable;
    out.verdict.route = Route::Spectral;
    if (cond.numerical()) out.verdict.notes.push_back("spectral checks used floating point root isolation");
  } else if (tag.variant == CaseVariant::Case1Strong) {
    out.verdict.status = Status::NotReachable;
    out.verdict.route = Route::Spectral;
    out.verdict.certificates.push_back(failing_condition(cond));
  } else {
    out = direct_route(sys, y, cap);
  }
  if (cond.b.singular_pencil || cond.d.singular_pencil)
    out.verdict.notes.push_back("singular pencil: eigenvalue search sampled every critical cell");
  out.conditions = cond;
  return out;
}

Decision decide_case2(const Sigma& sys, const Polyhedron& y, int cap) {
  if (cap < 1) throw std::invalid_argument("iteration cap must be positive");
  Decision out;
  Verdict& v = out.verdict;
  v.route = Route::Case2Subspace;
  const Subspace vs = vstar(sys), ts = tstar(sys);
  if (!ts.contains(vs)) {
    v.status = Status::NotReachable;
    Certificate c;
    c.kind = "subspace-gap";
    c.vector = witness_outside(vs, ts);
    c.note = "weakly unobservable state that is not strongly reachable";
    v.certificates.push_back(std::move(c));
    return out;
  }
  const ConstrainedMap f = build_primal(sys, y, MapTag::F);
  const Polyhedron vpoly = Polyhedron::from_subspace(vs);
  SequenceRecord rec{"X(F)", {}, std::nullopt};
  Polyhedron current = Polyhedron::universe(sys.n());
  bool shrinking = true;
  for (int l = 1; l <= cap; ++l) {
    Polyhedron next = map_apply(f, ApplyMode::Preimage, current);
    const bool same = l > 1 && next == current;
    rec.sets.push_back(next);
    v.steps_used = l;
    if (same) {
      rec.stabilized_at = l - 1;
      break;
    }
    if (subset_eq(next, vpoly)) {
      v.status = Status::Reachable;
      v.notes.push_back("X_" + std::to_string(l) + "(F) lies in V*");
      out.sequences.push_back(std::move(rec));
      return out;
    }
    if (l > 1 && !subset_eq(next, current)) shrinking = false;
    current = std::move(next);
  }
  if (rec.stabilized_at) {
    const Polyhedron& x = rec.sets.back();
    const Polyhedron tpoly = Polyhedron::from_subspace(ts);
    if (subset_eq(x, tpoly)) {
      v.status = Status::Reachable;
    } else {
      v.status = Status::NotReachable;
      Certificate c;
      c.kind = "state-outside";
      const auto bad = containment_violation(x, tpoly);
      c.vector = bad->first;
      c.note = "feasible " + bad->second + " of X(F) outside T*";
      v.certificates.push_back(std::move(c));
    }
  } else {
    v.status = Status::Inconclusive;
    std::ostringstream note;
    note << "contraction: X_l(F) " << (shrinking ? "strictly decreasing" : "not stabilized") << " over " << cap
         << " steps, width " << width_text(rec.sets.front()) << " -> " << width_text(rec.sets.back())
         << "; X(F) may equal V* without finite determination";
    v.notes.push_back(note.str());
  }
  out.sequences.push_back(std::move(rec));
  return out;
}

Report analyze(const Sigma& sys, const Polyhedron& y, int cap, double tol) {
  if (cap < 1) throw std::invalid_argument("iteration cap must be positive");
  validate(sys, y);
  Report r;
  r.cap = cap;
  r.case_tag = classify(sys, y);
  r.subspaces = kl_subspaces(sys);
  Decision d;
  switch (r.case_tag.variant) {
    case CaseVariant::Case1Strong:
    case CaseVariant::Case1Weak: d = decide_case1(sys, y, r.case_tag, cap, tol); break;
    case CaseVariant::Case2: d = decide_case2(sys, y, cap); break;
    case CaseVariant::Case3:
      d.verdict.status = Status::Inconclusive;
      d.verdict.route = Route::DirectIteration;
      d.verdict.notes.push_back("case 3: K meets Y away from the origin but misses its interior; no characterization is implemented");
      break;
  }
  r.conditions = d.conditions;
  r.verdict = d.verdict;
  r.sequences = d.sequences;
  return r;
}

ConsistencyReport oracle_compare(const Sigma& sys, const Polyhedron& y, int cap, int duality_steps, double tol) {
  validate(sys, y);
  const CaseTag tag = classify(sys, y);
  if (tag.variant != CaseVariant::Case1Strong && tag.variant != CaseVariant::Case1Weak)
    throw std::invalid_argument("oracle_compare: system is not in case 1");
  ConsistencyReport out;
  const Conditions cond = check_conditions(sys, y, tol);
  const bool strong = tag.variant == CaseVariant::Case1Strong;
  if (cond.all())
    out.spectral = Status::Reachable;
  else if (strong)
    out.spectral = Status::NotReachable;
  out.direct = direct_route(sys, y, cap).verdict.status;
  if (out.spectral != Status::Inconclusive && out.direct != Status::Inconclusive)
    out.verdicts_agree = out.spectral == out.direct;
  if (!out.verdicts_agree)
    out.notes.push_back("spectral " + to_string(out.spectral) + " but direct " + to_string(out.direct));

  if (duality_steps > 0) {
    const auto x = reach_feas(build_primal(sys, y, MapTag::F), duality_steps, SequenceKind::Feasible);
    const auto r = reach_feas(build_dual(sys, y, MapTag::Fpolar), duality_steps, SequenceKind::Reach);
    for (int l = 0; l < duality_steps; ++l) {
      const bool holds = polar(x[static_cast<std::size_t>(l)]) == negate(r[static_cast<std::size_t>(l)]);
      out.duality.push_back({l + 1, holds});
      if (!holds) {
        // Only claimed when K + Y is everything.
        if (strong) out.duality_holds = false;
        out.notes.push_back("polar(X_" + std::to_string(l + 1) + "(F)) differs from -R_" + std::to_string(l + 1) +
                            "(F°)" + (strong ? "" : " (not required in the weak case)"));
      }
    }
  }
  return out;
}

}  // namespace conreach
