#include "conreach/subspace.hpp"

#include <stdexcept>

namespace conreach {

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument(std::string(op) + ": ambient dimensions differ (" + std::to_string(a.ambient_dim()) +
                                " vs " + std::to_string(b.ambient_dim()) + ")");
}

}  // namespace

Subspace Subspace::zero(Index ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = RatMatrix(ambient, 0);
  return s;
}

Subspace Subspace::full(Index ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = RatMatrix::Identity(ambient, ambient);
  return s;
}

Subspace Subspace::span(const RatMatrix& generators) {
  Subspace s;
  s.ambient_ = generators.rows();
  if (generators.cols() == 0) {
    s.basis_ = RatMatrix(s.ambient_, 0);
    return s;
  }
  const RatMatrix t = generators.transpose();
  s.basis_ = row_echelon(t).reduced.transpose();
  return s;
}

bool Subspace::contains(const RatVector& x) const {
  if (x.size() != ambient_) throw std::invalid_argument("Subspace::contains: dimension mismatch");
  if (x.isZero()) return true;
  if (dim() == 0) return false;
  return solve(basis_, RatMatrix(x)).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other, "contains");
  for (Index j = 0; j < other.dim(); ++j)
    if (!contains(RatVector(other.basis().col(j)))) return false;
  return true;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "sum");
  return Subspace::span(hstack(a.basis(), b.basis()));
}

Subspace perp(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.ambient_dim());
  return Subspace::span(kernel_basis(RatMatrix(s.basis().transpose())));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "intersect");
  return perp(perp(a) + perp(b));
}

Subspace preimage(const RatMatrix& m, const Subspace& s) {
  if (m.rows() != s.ambient_dim()) throw std::invalid_argument("preimage: dimension mismatch");
  const Subspace orth = perp(s);
  if (orth.dim() == 0) return Subspace::full(m.cols());
  return Subspace::span(kernel_basis(RatMatrix(orth.basis().transpose() * m)));
}

Subspace image(const RatMatrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw std::invalid_argument("image: dimension mismatch");
  return Subspace::span(m * s.basis());
}

Subspace product(const Subspace& a, const Subspace& b) {
  RatMatrix basis = RatMatrix::Zero(a.ambient_dim() + b.ambient_dim(), a.dim() + b.dim());
  basis.topLeftCorner(a.ambient_dim(), a.dim()) = a.basis();
  basis.bottomRightCorner(b.ambient_dim(), b.dim()) = b.basis();
  return Subspace::span(basis);
}

Decomposition decompose(const RatMatrix& m) {
  Decomposition d;
  d.rank = rank(m);
  d.kernel = kernel(m);
  d.image = column_span(m);
  return d;
}

std::optional<RatVector> witness_outside(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "witness_outside");
  for (Index j = 0; j < a.dim(); ++j) {
    RatVector x = a.basis().col(j);
    if (!b.contains(x)) return x;
  }
  return std::nullopt;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  auto x = solve(m, RatMatrix(RatMatrix::Identity(m.rows(), m.rows())));
  if (!x || rank(m) != m.rows()) throw std::domain_error("inverse: singular matrix");
  return *x;
}

}  // namespace conreach
