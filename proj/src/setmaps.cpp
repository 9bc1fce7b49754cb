#include "conreach/setmaps.hpp"

#include <stdexcept>

namespace conreach {

namespace {

struct TagName {
  MapTag tag;
  const char* name;
};

constexpr TagName kTagNames[] = {{MapTag::F, "F"},           {MapTag::Fcon, "Fcon"},     {MapTag::Frec, "Frec"},
                                 {MapTag::Fpolar, "Fpolar"}, {MapTag::Fminus, "Fminus"}, {MapTag::Fb, "Fb"},
                                 {MapTag::Raw, "Raw"}};

void require_origin(const Sigma& sys, const Polyhedron& y) {
  sys.check();
  if (y.dim() != sys.s())
    throw std::invalid_argument("constraint set has dimension " + std::to_string(y.dim()) + ", expected " +
                                std::to_string(sys.s()));
  if (!y.contains(RatVector::Zero(y.dim()))) throw std::invalid_argument("constraint set must contain the origin");
}

// Per-step description used by the direct method: x+ = A x + B u with
// u in `inputs` and C x + D u in `outputs`.
struct Unrolled {
  Sigma sys;
  Polyhedron inputs, outputs;
};

Unrolled unrolled(const ConstrainedMap& h) {
  if (!h.provenance) throw std::invalid_argument("direct method needs a map built from a system");
  const Sigma& sys = h.provenance->sys;
  const Polyhedron& y = h.provenance->y;
  switch (h.tag) {
    case MapTag::F: return {sys, Polyhedron::universe(sys.m()), y};
    case MapTag::Fcon: return {sys, Polyhedron::universe(sys.m()), conic_hull(y)};
    case MapTag::Frec: return {sys, Polyhedron::universe(sys.m()), recession_cone(y)};
    case MapTag::Fpolar: return {dual(sys), negate(polar(y)), Polyhedron::origin(sys.m())};
    case MapTag::Fminus: return {dual(sys), pos_polar_cone(y), Polyhedron::origin(sys.m())};
    case MapTag::Fb: return {dual(sys), negate(barrier_cone(y)), Polyhedron::origin(sys.m())};
    case MapTag::Raw: break;
  }
  throw std::invalid_argument("direct method needs a map built from a system");
}

std::vector<Polyhedron> direct_sequence(const ConstrainedMap& h, int steps, SequenceKind kind) {
  const Unrolled u = unrolled(h);
  const Index n = u.sys.n(), m = u.sys.m();
  std::vector<Polyhedron> out;
  for (int l = 1; l <= steps; ++l) {
    const auto rm = recursive_matrices(u.sys, l);
    const Polyhedron inputs = power(u.inputs, l);
    const Polyhedron outputs = power(u.outputs, l);
    if (kind == SequenceKind::Reach) {
      out.push_back(image(rm.lambda, intersect(inputs, preimage(rm.theta, outputs))));
    } else {
      RatMatrix lifted(rm.gamma.rows(), n + l * m);
      lifted << rm.gamma, rm.theta;
      const Polyhedron feasible =
          intersect(product(Polyhedron::universe(n), inputs), preimage(lifted, outputs));
      out.push_back(project(feasible, 0, n));
    }
  }
  return out;
}

}  // namespace

std::string to_string(MapTag tag) {
  for (const auto& t : kTagNames)
    if (t.tag == tag) return t.name;
  return "Raw";
}

MapTag parse_map_tag(std::string_view name) {
  for (const auto& t : kTagNames)
    if (name == t.name) return t.tag;
  throw std::invalid_argument("unknown map tag '" + std::string(name) + "' (expected F, Fcon, Frec, Fpolar, Fminus or Fb)");
}

bool is_dual_tag(MapTag tag) { return tag == MapTag::Fpolar || tag == MapTag::Fminus || tag == MapTag::Fb; }

bool is_process_tag(MapTag tag) {
  return tag == MapTag::Fcon || tag == MapTag::Frec || tag == MapTag::Fminus || tag == MapTag::Fb;
}

ConstrainedMap raw_map(const Polyhedron& graph) {
  if (graph.dim() % 2 != 0) throw std::invalid_argument("graph dimension must be even");
  return {graph.dim() / 2, graph, MapTag::Raw, std::nullopt};
}

ConstrainedMap build_primal(const Sigma& sys, const Polyhedron& y, MapTag which) {
  require_origin(sys, y);
  Polyhedron s;
  switch (which) {
    case MapTag::F: s = y; break;
    case MapTag::Fcon: s = conic_hull(y); break;
    case MapTag::Frec: s = recession_cone(y); break;
    default: throw std::invalid_argument("build_primal: tag must be F, Fcon or Frec");
  }
  const Index n = sys.n(), m = sys.m();
  RatMatrix cd(sys.s(), n + m);
  cd << sys.C, sys.D;
  RatMatrix lift = RatMatrix::Zero(2 * n, n + m);
  lift.topLeftCorner(n, n) = RatMatrix::Identity(n, n);
  lift.bottomRows(n) << sys.A, sys.B;
  return {n, image(lift, preimage(cd, s)), which, Provenance{sys, y}};
}

ConstrainedMap build_dual(const Sigma& sys, const Polyhedron& y, MapTag which) {
  require_origin(sys, y);
  Polyhedron v;
  switch (which) {
    case MapTag::Fpolar: v = negate(polar(y)); break;
    case MapTag::Fminus: v = pos_polar_cone(y); break;
    case MapTag::Fb: v = negate(barrier_cone(y)); break;
    default: throw std::invalid_argument("build_dual: tag must be Fpolar, Fminus or Fb");
  }
  const Index n = sys.n(), s = sys.s();
  // (q, v) with B^T q + D^T v = 0 and v in the chosen set.
  RatMatrix bd(sys.m(), n + s);
  bd << sys.B.transpose(), sys.D.transpose();
  const Polyhedron qv = intersect(product(Polyhedron::universe(n), v), Polyhedron::from_subspace(kernel(bd)));
  RatMatrix lift = RatMatrix::Zero(2 * n, n + s);
  lift.topLeftCorner(n, n) = RatMatrix::Identity(n, n);
  lift.bottomRows(n) << sys.A.transpose(), sys.C.transpose();
  return {n, image(lift, qv), which, Provenance{sys, y}};
}

ConstrainedMap build_map(const Sigma& sys, const Polyhedron& y, MapTag which) {
  if (which == MapTag::Raw) throw std::invalid_argument("a raw map cannot be built from a system");
  return is_dual_tag(which) ? build_dual(sys, y, which) : build_primal(sys, y, which);
}

Polyhedron map_apply(const ConstrainedMap& h, ApplyMode mode, const Polyhedron& p) {
  if (p.dim() != h.dim)
    throw std::invalid_argument("map_apply: set has dimension " + std::to_string(p.dim()) + ", map acts on " +
                                std::to_string(h.dim));
  const Polyhedron all = Polyhedron::universe(h.dim);
  if (mode == ApplyMode::Image) return project(intersect(h.graph, product(p, all)), h.dim, h.dim);
  return project(intersect(h.graph, product(all, p)), 0, h.dim);
}

std::vector<Polyhedron> reach_feas(const ConstrainedMap& h, int steps, SequenceKind kind, SequenceMethod method) {
  if (steps < 1) throw std::invalid_argument("number of steps must be positive");
  if (method == SequenceMethod::Direct) return direct_sequence(h, steps, kind);
  std::vector<Polyhedron> out;
  Polyhedron current = kind == SequenceKind::Reach ? Polyhedron::origin(h.dim) : Polyhedron::universe(h.dim);
  const ApplyMode mode = kind == SequenceKind::Reach ? ApplyMode::Image : ApplyMode::Preimage;
  for (int l = 1; l <= steps; ++l) {
    current = map_apply(h, mode, current);
    out.push_back(current);
  }
  return out;
}

Stabilization iterate_until_stable(const ConstrainedMap& h, SequenceKind kind, int cap) {
  if (cap < 1) throw std::invalid_argument("iteration cap must be positive");
  Stabilization out;
  Polyhedron current = kind == SequenceKind::Reach ? Polyhedron::origin(h.dim) : Polyhedron::universe(h.dim);
  const ApplyMode mode = kind == SequenceKind::Reach ? ApplyMode::Image : ApplyMode::Preimage;
  for (int l = 1; l <= cap; ++l) {
    Polyhedron next = map_apply(h, mode, current);
    const bool same = l > 1 && next == current;
    out.sets.push_back(std::move(next));
    if (same) {
      out.stabilized_at = l - 1;
      break;
    }
    current = out.sets.back();
  }
  return out;
}

MapStructure structure_queries(const ConstrainedMap& h) {
  MapStructure out;
  out.domain = project(h.graph, 0, h.dim);
  out.strict = out.domain.is_universe();
  out.onto = project(h.graph, h.dim, h.dim).is_universe();
  return out;
}

Polyhedron forward_image_of_tstar(const Sigma& sys, const Polyhedron& y, int steps) {
  if (steps < 0) throw std::invalid_argument("number of steps must be nonnegative");
  require_origin(sys, y);
  const Index n = sys.n();
  if (n + steps == 0) return Polyhedron::origin(0);
  const auto rm = recursive_matrices(sys, static_cast<int>(n) + steps);
  const Polyhedron outputs = product(power(y, steps), Polyhedron::origin(n * sys.s()));
  return image(rm.lambda, preimage(rm.theta, outputs));
}

bool eigen_membership(const ConstrainedMap& h, const Rational& lambda, const RatVector& q) {
  if (!is_process_tag(h.tag)) throw std::invalid_argument("eigen_membership: map " + to_string(h.tag) + " is not a process");
  if (q.size() != h.dim) throw std::invalid_argument("eigen_membership: vector has the wrong dimension");
  RatVector pair(2 * h.dim);
  pair << q, lambda * q;
  return h.graph.contains(pair);
}

}  // namespace conreach
