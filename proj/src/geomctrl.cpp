#include "conreach/geomctrl.hpp"

#include "conreach/polynomial.hpp"

#include <complex>
#include <stdexcept>

namespace conreach {

void Sigma::check() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("system dimensions: " + what); };
  if (A.rows() != A.cols()) fail("A must be square");
  if (B.rows() != A.rows()) fail("B must have as many rows as A (" + std::to_string(A.rows()) + ")");
  if (C.cols() != A.cols()) fail("C must have as many columns as A (" + std::to_string(A.cols()) + ")");
  if (D.rows() != C.rows()) fail("D must have as many rows as C (" + std::to_string(C.rows()) + ")");
  if (D.cols() != B.cols()) fail("D must have as many columns as B (" + std::to_string(B.cols()) + ")");
}

Sigma make_sigma(RatMatrix a, RatMatrix b, RatMatrix c, RatMatrix d) {
  Sigma sys{std::move(a), std::move(b), std::move(c), std::move(d)};
  sys.check();
  return sys;
}

namespace {

RatMatrix selector(Index keep, Index total) {
  RatMatrix p = RatMatrix::Zero(keep, total);
  p.leftCols(keep) = RatMatrix::Identity(keep, keep);
  return p;
}

}  // namespace

SubspaceIteration vstar_iteration(const Sigma& sys) {
  const Index n = sys.n(), m = sys.m(), s = sys.s();
  RatMatrix big(n + s, n + m);
  big << sys.A, sys.B, sys.C, sys.D;
  const RatMatrix proj = selector(n, n + m);
  SubspaceIteration it;
  it.sequence.push_back(Subspace::full(n));
  while (true) {
    const Subspace target = product(it.sequence.back(), Subspace::zero(s));
    Subspace next = image(proj, preimage(big, target));
    if (next == it.sequence.back()) break;
    it.sequence.push_back(std::move(next));
  }
  it.steps = static_cast<int>(it.sequence.size()) - 1;
  it.limit = it.sequence.back();
  return it;
}

SubspaceIteration tstar_iteration(const Sigma& sys) {
  const Index n = sys.n(), m = sys.m(), s = sys.s();
  RatMatrix ab(n, n + m), cd(s, n + m);
  ab << sys.A, sys.B;
  cd << sys.C, sys.D;
  const Subspace nulling = kernel(cd);
  SubspaceIteration it;
  it.sequence.push_back(Subspace::zero(n));
  while (true) {
    const Subspace lifted = intersect(product(it.sequence.back(), Subspace::full(m)), nulling);
    Subspace next = image(ab, lifted);
    if (next == it.sequence.back()) break;
    it.sequence.push_back(std::move(next));
  }
  it.steps = static_cast<int>(it.sequence.size()) - 1;
  it.limit = it.sequence.back();
  return it;
}

RecursiveMatrices recursive_matrices(const Sigma& sys, int steps) {
  if (steps < 1) throw std::invalid_argument("recursive_matrices: steps must be at least 1");
  const Index m = sys.m(), s = sys.s();
  RecursiveMatrices r{sys.C, sys.B, sys.D};
  for (int l = 1; l < steps; ++l) {
    RatMatrix gamma(r.gamma.rows() + s, sys.n());
    gamma << r.gamma * sys.A, sys.C;
    RatMatrix lambda(sys.n(), r.lambda.cols() + m);
    lambda << sys.A * r.lambda, sys.B;
    RatMatrix theta = RatMatrix::Zero(r.theta.rows() + s, r.theta.cols() + m);
    theta.topLeftCorner(s, r.lambda.cols()) = sys.C * r.lambda;
    theta.topRightCorner(s, m) = sys.D;
    theta.bottomLeftCorner(r.theta.rows(), r.theta.cols()) = r.theta;
    r = {std::move(gamma), std::move(lambda), std::move(theta)};
  }
  return r;
}

Subspace tstar_closed_form(const Sigma& sys) {
  if (sys.n() == 0) return Subspace::zero(0);
  const auto r = recursive_matrices(sys, static_cast<int>(sys.n()));
  return image(r.lambda, kernel(r.theta));
}

Subspace k_subspace(const Sigma& sys) { return column_span(sys.D) + image(sys.C, tstar(sys)); }

Subspace l_subspace(const Sigma& sys) { return intersect(kernel(sys.D), preimage(sys.B, vstar(sys))); }

Sigma dual(const Sigma& sys) {
  return Sigma{sys.A.transpose(), sys.C.transpose(), sys.B.transpose(), sys.D.transpose()};
}

Sigma restrict_inputs(const Sigma& sys, const Subspace& inputs) {
  if (inputs.ambient_dim() != sys.m())
    throw std::invalid_argument("restrict_inputs: input subspace lives in dimension " +
                                std::to_string(inputs.ambient_dim()) + ", expected " + std::to_string(sys.m()));
  const RatMatrix& e = inputs.basis();
  return Sigma{sys.A, sys.B * e, sys.C, sys.D * e};
}

SubspaceReport kl_subspaces(const Sigma& sys) {
  SubspaceReport r;
  const auto v = vstar_iteration(sys);
  const auto t = tstar_iteration(sys);
  r.vstar = v.limit;
  r.tstar = t.limit;
  r.vstar_steps = v.steps;
  r.tstar_steps = t.steps;
  r.rstar = intersect(r.vstar, r.tstar);
  r.ksub = column_span(sys.D) + image(sys.C, r.tstar);
  r.lsub = intersect(kernel(sys.D), preimage(sys.B, r.vstar));
  r.right_invertible = r.ksub.is_full();
  r.left_invertible = r.lsub.is_zero();
  r.duality_holds = perp(r.ksub) == l_subspace(dual(sys));
  return r;
}

Subspace controllable_subspace(const RatMatrix& a, const RatMatrix& b) {
  Subspace reach = column_span(b);
  RatMatrix block = b;
  for (Index k = 1; k < a.rows(); ++k) {
    block = a * block;
    reach = reach + column_span(block);
  }
  return reach;
}

bool kalman_controllable(const Sigma& sys) { return controllable_subspace(sys.A, sys.B).is_full(); }

std::optional<RatVector> uncontrollable_direction(const Sigma& sys) {
  const Subspace orth = perp(controllable_subspace(sys.A, sys.B));
  if (orth.is_zero()) return std::nullopt;
  return RatVector(orth.basis().col(0));
}

// ---------------------------------------------------------------------------
// Bounded output-nulling motions.

namespace {

enum class RootClass { Inside, Unit, Outside };

RootClass classify(std::complex<double> z, double tol) {
  const double r = std::abs(z);
  if (r < 1 - tol) return RootClass::Inside;
  if (r <= 1 + tol) return RootClass::Unit;
  return RootClass::Outside;
}

std::optional<Polynomial> recognize(const std::vector<std::complex<double>>& roots) {
  // Expand prod (x - z) numerically and snap the coefficients to rationals.
  std::vector<std::complex<double>> c{1.0};
  for (const auto& z : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= z * c[i];
    }
    c = std::move(next);
  }
  std::vector<Rational> coeffs;
  for (const auto& x : c) {
    if (std::abs(x.imag()) > 1e-7 * std::max(1.0, std::abs(x))) return std::nullopt;
    coeffs.push_back(approximate(x.real(), 1000000));
  }
  return Polynomial(std::move(coeffs));
}

// Factors of a squarefree polynomial found through rational roots and
// rational products of root subsets.
std::vector<Polynomial> split_rationally(const Polynomial& p) {
  if (p.degree() <= 1) return {p.monic()};
  std::vector<Polynomial> out;
  Polynomial rest = p.monic();
  for (const RealRoot& r : real_roots(rest)) {
    if (!r.exact) continue;
    const Polynomial lin = Polynomial::monomial_root(*r.exact);
    out.push_back(lin);
    rest = divmod(rest, lin).first;
  }
  if (rest.degree() < 1) return out;
  const auto roots = complex_roots(rest);
  const int deg = rest.degree();
  for (int size = 2; size <= deg / 2; ++size) {
    std::vector<bool> pick(static_cast<std::size_t>(deg), false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<std::complex<double>> subset;
      for (int i = 0; i < deg; ++i)
        if (pick[static_cast<std::size_t>(i)]) subset.push_back(roots[static_cast<std::size_t>(i)]);
      const auto candidate = recognize(subset);
      if (!candidate || candidate->degree() != size) continue;
      const auto [quot, rem] = divmod(rest, *candidate);
      if (!rem.is_zero()) continue;
      for (const auto& f : split_rationally(*candidate)) out.push_back(f);
      for (const auto& f : split_rationally(quot)) out.push_back(f);
      return out;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  out.push_back(rest);
  return out;
}

Polynomial power(const Polynomial& p, int k) {
  Polynomial out = Polynomial::constant(1);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

// Bounded invariant subspace of x+ = M x.
BoundedSubspace bounded_part(const RatMatrix& m, double tol) {
  const Index q = m.rows();
  BoundedSubspace out{Subspace::zero(q), true};
  if (q == 0) return out;
  for (const auto& [factor, mult] : squarefree_factors(characteristic_polynomial(m))) {
    for (const Polynomial& f : split_rationally(factor)) {
      bool inside = false, unit = false, outside = false;
      for (const auto& z : complex_roots(f)) {
        switch (classify(z, tol)) {
          case RootClass::Inside: inside = true; break;
          case RootClass::Unit: unit = true; break;
          case RootClass::Outside: outside = true; break;
        }
      }
      if (!inside && !unit) continue;
      const bool mixed = outside || (inside && unit);
      if (mixed) out.exact = false;
      // Unit-modulus roots are bounded only on plain eigenvectors.
      const Polynomial annihilator = inside ? power(f, mult) : f;
      out.value = out.value + kernel(evaluate(annihilator, m));
    }
  }
  return out;
}

// Columns completing the basis of `sub` to a basis of `whole`.
RatMatrix complement_basis(const Subspace& sub, const Subspace& whole) {
  Subspace acc = sub;
  std::vector<RatVector> extra;
  for (Index j = 0; j < whole.dim(); ++j) {
    RatVector v = whole.basis().col(j);
    if (acc.contains(v)) continue;
    extra.push_back(v);
    acc = acc + Subspace::span(RatMatrix(v));
  }
  RatMatrix w(whole.ambient_dim(), static_cast<Index>(extra.size()));
  for (std::size_t j = 0; j < extra.size(); ++j) w.col(static_cast<Index>(j)) = extra[j];
  return w;
}

}  // namespace

BoundedSubspace vstar_g(const Sigma& sys, const Subspace& inputs, double tol) {
  const Sigma r = restrict_inputs(sys, inputs);
  const Index n = r.n(), k = r.m(), s = r.s();
  const Subspace v = vstar(r);
  if (v.is_zero()) return {v, true};
  const Subspace rs = intersect(v, tstar(r));
  const RatMatrix w = complement_basis(rs, v);
  const Index q = w.cols();
  if (q == 0) return {rs, true};

  // Unknowns (u, c): A w + B u = V c and C w + D u = 0.
  const RatMatrix& vb = v.basis();
  RatMatrix lhs = RatMatrix::Zero(n + s, k + v.dim());
  lhs.topLeftCorner(n, k) = r.B;
  lhs.topRightCorner(n, v.dim()) = -vb;
  lhs.bottomLeftCorner(s, k) = r.D;
  RatMatrix rhs(n + s, q);
  rhs << -r.A * w, -r.C * w;
  const auto sol = solve(lhs, rhs);
  if (!sol) throw std::logic_error("vstar_g: complement vector has no output-nulling successor");

  // Different admissible inputs must only move the successor inside R*.
  const RatMatrix freedom = kernel_basis(lhs);
  for (Index j = 0; j < freedom.cols(); ++j)
    if (!rs.contains(RatVector(vb * freedom.col(j).tail(v.dim()))))
      throw std::logic_error("vstar_g: quotient dynamics on V*/R* are not well defined");

  RatMatrix basis(n, rs.dim() + q);
  basis << rs.basis(), w;
  const RatMatrix successors = vb * sol->bottomRows(v.dim());
  const auto coords = solve(basis, successors);
  if (!coords) throw std::logic_error("vstar_g: successor left V*");
  const RatMatrix abar = coords->bottomRows(q);

  const BoundedSubspace bounded = bounded_part(abar, tol);
  return {rs + image(w, bounded.value), bounded.exact};
}

}  // namespace conreach
