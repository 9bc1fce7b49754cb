#include "conreach/polyhedron.hpp"

#include "conreach/double_description.hpp"

#include <algorithm>
#include <stdexcept>

namespace conreach {

namespace {

RatMatrix from_columns(const std::vector<RatVector>& cols, Index rows) {
  RatMatrix m(rows, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Index>(j)) = cols[j];
  return m;
}

void sort_unique(std::vector<RatVector>& v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end(), [](const RatVector& a, const RatVector& b) { return a == b; }), v.end());
}

void require_dim(Index got, Index want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(got) + " vs " +
                                std::to_string(want) + ")");
}

}  // namespace

Polyhedron Polyhedron::from_hrep(const RatMatrix& g, const RatVector& h, const RatMatrix& e, const RatVector& f) {
  const Index d = g.rows() > 0 ? g.cols() : e.cols();
  if (g.rows() > 0 && e.rows() > 0) require_dim(e.cols(), g.cols(), "from_hrep");
  require_dim(h.size(), g.rows(), "from_hrep (h)");
  require_dim(f.size(), e.rows(), "from_hrep (f)");
  Polyhedron p;
  p.dim_ = d;
  p.compute_vrep_from_constraints(g, h, e, f);
  if (p.empty_) return empty(d);
  p.compute_hrep_from_generators();
  return p;
}

Polyhedron Polyhedron::from_hrep(const RatMatrix& g, const RatVector& h) {
  return from_hrep(g, h, RatMatrix(0, g.cols()), RatVector(0));
}

Polyhedron Polyhedron::from_vrep(const RatMatrix& vertices, const RatMatrix& rays, const RatMatrix& lineality) {
  const Index d = vertices.rows();
  if (rays.cols() > 0) require_dim(rays.rows(), d, "from_vrep (rays)");
  if (lineality.cols() > 0) require_dim(lineality.rows(), d, "from_vrep (lineality)");
  if (vertices.cols() == 0) return empty(d);
  Polyhedron p;
  p.dim_ = d;
  p.empty_ = false;
  p.vertices_ = vertices;
  p.rays_ = rays.cols() > 0 ? rays : RatMatrix(d, 0);
  p.lineality_ = lineality.cols() > 0 ? lineality : RatMatrix(d, 0);
  p.compute_hrep_from_generators();
  const RatMatrix g = p.g_, e = p.e_;
  const RatVector h = p.h_, f = p.f_;
  p.compute_vrep_from_constraints(g, h, e, f);
  return p;
}

Polyhedron Polyhedron::empty(Index dim) {
  Polyhedron p;
  p.dim_ = dim;
  p.empty_ = true;
  // Canonical infeasible row 0 . y <= -1.
  p.g_ = RatMatrix::Zero(1, dim);
  p.h_ = RatVector::Constant(1, Rational(-1));
  p.e_ = RatMatrix(0, dim);
  p.f_ = RatVector(0);
  p.vertices_ = RatMatrix(dim, 0);
  p.rays_ = RatMatrix(dim, 0);
  p.lineality_ = RatMatrix(dim, 0);
  return p;
}

Polyhedron Polyhedron::universe(Index dim) { return from_hrep(RatMatrix(0, dim), RatVector(0)); }

Polyhedron Polyhedron::origin(Index dim) { return point(RatVector::Zero(dim)); }

Polyhedron Polyhedron::point(const RatVector& p) {
  return from_vrep(RatMatrix(p), RatMatrix(p.size(), 0), RatMatrix(p.size(), 0));
}

Polyhedron Polyhedron::box(const RatVector& lo, const RatVector& hi) {
  require_dim(hi.size(), lo.size(), "box");
  const Index d = lo.size();
  RatMatrix g(2 * d, d);
  g << RatMatrix::Identity(d, d), -RatMatrix::Identity(d, d);
  RatVector h(2 * d);
  h << hi, -lo;
  return from_hrep(g, h);
}

Polyhedron Polyhedron::from_subspace(const Subspace& s) {
  return from_vrep(RatMatrix(RatVector::Zero(s.ambient_dim())), RatMatrix(s.ambient_dim(), 0), s.basis());
}

bool Polyhedron::is_cone() const { return !empty_ && vertices_.cols() == 1 && vertices_.col(0).isZero(); }

bool Polyhedron::is_origin() const { return is_cone() && rays_.cols() == 0 && lineality_.cols() == 0; }

bool Polyhedron::contains(const RatVector& y) const {
  require_dim(y.size(), dim_, "contains");
  if (empty_) return false;
  for (Index i = 0; i < g_.rows(); ++i)
    if (g_.row(i).dot(y) > h_(i)) return false;
  for (Index i = 0; i < e_.rows(); ++i)
    if (e_.row(i).dot(y) != f_(i)) return false;
  return true;
}

bool operator==(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim_ != b.dim_ || a.empty_ != b.empty_) return false;
  if (a.empty_) return true;
  return a.g_.rows() == b.g_.rows() && a.e_.rows() == b.e_.rows() && a.g_ == b.g_ && a.h_ == b.h_ &&
         a.e_ == b.e_ && a.f_ == b.f_;
}

void Polyhedron::compute_vrep_from_constraints(const RatMatrix& g, const RatVector& h, const RatMatrix& e,
                                               const RatVector& f) {
  const Index d = dim_;
  // Homogenize: (y, t) with G y - h t <= 0, -t <= 0, E y - f t = 0.
  RatMatrix gc = RatMatrix::Zero(g.rows() + 1, d + 1);
  if (g.rows() > 0) {
    gc.topLeftCorner(g.rows(), d) = g;
    gc.topRightCorner(g.rows(), 1) = -h;
  }
  gc(g.rows(), d) = -1;
  RatMatrix ec(e.rows(), d + 1);
  if (e.rows() > 0) {
    ec.leftCols(d) = e;
    ec.rightCols(1) = -f;
  }
  const auto gens = cone_generators<Rational>(gc, ec);

  std::vector<RatVector> verts, rays;
  for (Index j = 0; j < gens.rays.cols(); ++j) {
    const Rational t = gens.rays(d, j);
    RatVector y = gens.rays.col(j).head(d);
    if (t > 0)
      verts.push_back(y / t);
    else
      rays.push_back(y);
  }
  if (verts.empty()) {
    empty_ = true;
    return;
  }
  empty_ = false;
  RatMatrix lin(d, gens.lineality.cols());
  for (Index j = 0; j < gens.lineality.cols(); ++j) lin.col(j) = gens.lineality.col(j).head(d);
  set_generators(from_columns(verts, d), from_columns(rays, d), lin);
}

void Polyhedron::set_generators(const RatMatrix& vertices, const RatMatrix& rays, const RatMatrix& lineality) {
  const Index d = dim_;
  lineality_ = lineality.cols() > 0 ? Subspace::span(lineality).basis() : RatMatrix(d, 0);
  const Index k = lineality_.cols();
  RatMatrix gram_inv;
  if (k > 0) gram_inv = inverse(RatMatrix(lineality_.transpose() * lineality_));
  auto project_out = [&](RatVector x) {
    if (k > 0) x -= lineality_ * (gram_inv * (lineality_.transpose() * x));
    return x;
  };

  std::vector<RatVector> verts, rs;
  for (Index j = 0; j < vertices.cols(); ++j) verts.push_back(project_out(vertices.col(j)));
  for (Index j = 0; j < rays.cols(); ++j) {
    RatVector r = project_out(rays.col(j));
    if (r.isZero()) continue;
    make_primitive(r);
    rs.push_back(std::move(r));
  }
  sort_unique(verts);
  sort_unique(rs);
  vertices_ = from_columns(verts, d);
  rays_ = from_columns(rs, d);
}

void Polyhedron::compute_hrep_from_generators() {
  const Index d = dim_;
  // Dual cone in (a, c): a.v + c <= 0, a.r <= 0, a.l = 0.
  RatMatrix gc(vertices_.cols() + rays_.cols(), d + 1);
  for (Index j = 0; j < vertices_.cols(); ++j) {
    gc.block(j, 0, 1, d) = vertices_.col(j).transpose();
    gc(j, d) = 1;
  }
  for (Index j = 0; j < rays_.cols(); ++j) {
    gc.block(vertices_.cols() + j, 0, 1, d) = rays_.col(j).transpose();
    gc(vertices_.cols() + j, d) = 0;
  }
  RatMatrix ec(lineality_.cols(), d + 1);
  for (Index j = 0; j < lineality_.cols(); ++j) {
    ec.block(j, 0, 1, d) = lineality_.col(j).transpose();
    ec(j, d) = 0;
  }
  const auto gens = cone_generators<Rational>(gc, ec);

  RatMatrix g(gens.rays.cols(), d), e(gens.lineality.cols(), d);
  RatVector h(gens.rays.cols()), f(gens.lineality.cols());
  for (Index j = 0; j < gens.rays.cols(); ++j) {
    g.row(j) = gens.rays.col(j).head(d).transpose();
    h(j) = -gens.rays(d, j);
  }
  for (Index j = 0; j < gens.lineality.cols(); ++j) {
    e.row(j) = gens.lineality.col(j).head(d).transpose();
    f(j) = -gens.lineality(d, j);
  }
  set_constraints(g, h, e, f);
}

void Polyhedron::set_constraints(const RatMatrix& g, const RatVector& h, const RatMatrix& e, const RatVector& f) {
  const Index d = dim_;
  RatMatrix eq_aug(e.rows(), d + 1);
  if (e.rows() > 0) eq_aug << e, f;
  const auto ech = row_echelon(eq_aug);
  for (Index p : ech.pivots)
    if (p == d) throw std::logic_error("Polyhedron: inconsistent equalities on a nonempty set");
  e_ = ech.reduced.leftCols(d);
  f_ = ech.reduced.col(d);

  std::vector<RatVector> rows;
  for (Index i = 0; i < g.rows(); ++i) {
    RatVector row(d + 1);
    row << g.row(i).transpose(), h(i);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      const Index p = ech.pivots[r];
      if (row(p) != 0) row -= row(p) * ech.reduced.row(static_cast<Index>(r)).transpose();
    }
    if (row.head(d).isZero()) continue;
    make_primitive(row);
    rows.push_back(std::move(row));
  }
  sort_unique(rows);
  g_ = RatMatrix(static_cast<Index>(rows.size()), d);
  h_ = RatVector(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    g_.row(static_cast<Index>(i)) = rows[i].head(d).transpose();
    h_(static_cast<Index>(i)) = rows[i](d);
  }
}

// ---------------------------------------------------------------------------

Polyhedron polar(const Polyhedron& p) {
  if (!p.contains(RatVector::Zero(p.dim()))) throw std::domain_error("polar: the set does not contain the origin");
  const Index nv = p.vertices().cols(), nr = p.rays().cols();
  RatMatrix g(nv + nr, p.dim());
  RatVector h(nv + nr);
  for (Index j = 0; j < nv; ++j) {
    g.row(j) = p.vertices().col(j).transpose();
    h(j) = 1;
  }
  for (Index j = 0; j < nr; ++j) {
    g.row(nv + j) = p.rays().col(j).transpose();
    h(nv + j) = 0;
  }
  return Polyhedron::from_hrep(g, h, p.lineality().transpose(), RatVector::Zero(p.lineality().cols()));
}

Polyhedron neg_polar_cone(const Polyhedron& p) {
  if (p.is_empty()) return Polyhedron::universe(p.dim());
  RatMatrix g(p.vertices().cols() + p.rays().cols(), p.dim());
  g << p.vertices().transpose(), p.rays().transpose();
  return Polyhedron::from_hrep(g, RatVector::Zero(g.rows()), p.lineality().transpose(),
                               RatVector::Zero(p.lineality().cols()));
}

Polyhedron pos_polar_cone(const Polyhedron& p) { return negate(neg_polar_cone(p)); }

Polyhedron recession_cone(const Polyhedron& p) {
  if (p.is_empty()) throw std::domain_error("recession_cone: empty polyhedron");
  return Polyhedron::from_hrep(p.ineq_matrix(), RatVector::Zero(p.ineq_matrix().rows()), p.eq_matrix(),
                               RatVector::Zero(p.eq_matrix().rows()));
}

Polyhedron barrier_cone(const Polyhedron& p) {
  if (p.is_empty()) throw std::domain_error("barrier_cone: empty polyhedron");
  return neg_polar_cone(recession_cone(p));
}

Polyhedron conic_hull(const Polyhedron& p) {
  if (p.is_empty()) throw std::domain_error("conic_hull: empty polyhedron");
  return Polyhedron::from_vrep(RatMatrix(RatVector::Zero(p.dim())), hstack(p.vertices(), p.rays()), p.lineality());
}

Rational hyperbolicity_witness(const Polyhedron& p) {
  if (p.is_empty()) throw std::domain_error("hyperbolicity_witness: empty polyhedron");
  Rational mu = 0;
  for (Index j = 0; j < p.vertices().cols(); ++j)
    for (Index i = 0; i < p.dim(); ++i) mu = std::max(mu, Rational(abs(p.vertices()(i, j))));
  return mu;
}

namespace {

RatVector relative_interior_point(const Polyhedron& p) {
  RatVector x = RatVector::Zero(p.dim());
  for (Index j = 0; j < p.vertices().cols(); ++j) x += p.vertices().col(j);
  x /= Rational(static_cast<long>(p.vertices().cols()));
  for (Index j = 0; j < p.rays().cols(); ++j) x += p.rays().col(j);
  return x;
}

}  // namespace

InteriorWitness interior_point(const Polyhedron& p) {
  if (p.is_empty() || p.eq_matrix().rows() > 0) return {};
  return {true, relative_interior_point(p)};
}

bool is_solid(const Polyhedron& p) { return interior_point(p).found; }

InteriorWitness subspace_meets_interior(const Subspace& s, const Polyhedron& p) {
  require_dim(s.ambient_dim(), p.dim(), "subspace_meets_interior");
  if (p.is_empty() || p.eq_matrix().rows() > 0) return {};
  const Polyhedron q = intersect(p, Polyhedron::from_subspace(s));
  if (q.is_empty()) return {};
  const RatVector x = relative_interior_point(q);
  for (Index i = 0; i < p.ineq_matrix().rows(); ++i)
    if (p.ineq_matrix().row(i).dot(x) >= p.ineq_rhs()(i)) return {};
  return {true, x};
}

Polyhedron image(const RatMatrix& m, const Polyhedron& p) {
  require_dim(m.cols(), p.dim(), "image");
  if (p.is_empty()) return Polyhedron::empty(m.rows());
  return Polyhedron::from_vrep(m * p.vertices(), m * p.rays(), m * p.lineality());
}

Polyhedron preimage(const RatMatrix& m, const Polyhedron& p) {
  require_dim(m.rows(), p.dim(), "preimage");
  if (p.is_empty()) return Polyhedron::empty(m.cols());
  return Polyhedron::from_hrep(p.ineq_matrix() * m, p.ineq_rhs(), p.eq_matrix() * m, p.eq_rhs());
}

Polyhedron negate(const Polyhedron& p) {
  if (p.is_empty()) return p;
  return Polyhedron::from_hrep(-p.ineq_matrix(), p.ineq_rhs(), -p.eq_matrix(), p.eq_rhs());
}

Polyhedron project(const Polyhedron& p, Index first, Index count) {
  if (first < 0 || count < 0 || first + count > p.dim()) throw std::invalid_argument("project: coordinate range");
  RatMatrix sel = RatMatrix::Zero(count, p.dim());
  for (Index i = 0; i < count; ++i) sel(i, first + i) = 1;
  return image(sel, p);
}

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  require_dim(b.dim(), a.dim(), "minkowski_sum");
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(a.dim());
  RatMatrix v(a.dim(), a.vertices().cols() * b.vertices().cols());
  Index k = 0;
  for (Index i = 0; i < a.vertices().cols(); ++i)
    for (Index j = 0; j < b.vertices().cols(); ++j) v.col(k++) = a.vertices().col(i) + b.vertices().col(j);
  return Polyhedron::from_vrep(v, hstack(a.rays(), b.rays()), hstack(a.lineality(), b.lineality()));
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  require_dim(b.dim(), a.dim(), "intersect");
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(a.dim());
  RatVector h(a.ineq_rhs().size() + b.ineq_rhs().size()), f(a.eq_rhs().size() + b.eq_rhs().size());
  h << a.ineq_rhs(), b.ineq_rhs();
  f << a.eq_rhs(), b.eq_rhs();
  RatMatrix g(h.size(), a.dim()), e(f.size(), a.dim());
  if (h.size() > 0) g << a.ineq_matrix(), b.ineq_matrix();
  if (f.size() > 0) e << a.eq_matrix(), b.eq_matrix();
  return Polyhedron::from_hrep(g, h, e, f);
}

Polyhedron product(const Polyhedron& a, const Polyhedron& b) {
  const Index d = a.dim() + b.dim();
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(d);
  auto block = [&](const RatMatrix& x, const RatMatrix& y) {
    RatMatrix m = RatMatrix::Zero(x.rows() + y.rows(), d);
    m.topLeftCorner(x.rows(), a.dim()) = x;
    m.bottomRightCorner(y.rows(), b.dim()) = y;
    return m;
  };
  RatVector h(a.ineq_rhs().size() + b.ineq_rhs().size()), f(a.eq_rhs().size() + b.eq_rhs().size());
  h << a.ineq_rhs(), b.ineq_rhs();
  f << a.eq_rhs(), b.eq_rhs();
  return Polyhedron::from_hrep(block(a.ineq_matrix(), b.ineq_matrix()), h, block(a.eq_matrix(), b.eq_matrix()), f);
}

Polyhedron power(const Polyhedron& p, int k) {
  if (k < 0) throw std::invalid_argument("power: negative exponent");
  Polyhedron out = Polyhedron::origin(0);
  for (int i = 0; i < k; ++i) out = product(out, p);
  return out;
}

std::optional<std::pair<RatVector, std::string>> containment_violation(const Polyhedron& a, const Polyhedron& b) {
  require_dim(b.dim(), a.dim(), "subset_eq");
  if (a.is_empty()) return std::nullopt;
  if (b.is_empty()) return std::make_pair(RatVector(a.vertices().col(0)), std::string("vertex"));
  const RatMatrix& g = b.ineq_matrix();
  const RatMatrix& e = b.eq_matrix();
  for (Index j = 0; j < a.vertices().cols(); ++j)
    if (!b.contains(a.vertices().col(j))) return std::make_pair(RatVector(a.vertices().col(j)), std::string("vertex"));
  for (Index j = 0; j < a.rays().cols(); ++j) {
    const RatVector r = a.rays().col(j);
    bool ok = (e.rows() == 0 || (e * r).isZero());
    for (Index i = 0; ok && i < g.rows(); ++i) ok = g.row(i).dot(r) <= 0;
    if (!ok) return std::make_pair(r, std::string("ray"));
  }
  for (Index j = 0; j < a.lineality().cols(); ++j) {
    const RatVector l = a.lineality().col(j);
    if ((g.rows() > 0 && !(g * l).isZero()) || (e.rows() > 0 && !(e * l).isZero()))
      return std::make_pair(l, std::string("lineality"));
  }
  return std::nullopt;
}

bool subset_eq(const Polyhedron& a, const Polyhedron& b) { return !containment_violation(a, b).has_value(); }

PolyhedronProfile profile(const Polyhedron& p) {
  PolyhedronProfile out;
  out.constraints = p.ineq_matrix().rows();
  out.equalities = p.eq_matrix().rows();
  out.vertices = p.vertices().cols();
  out.rays = p.rays().cols();
  out.lineality = p.lineality().cols();
  if (p.is_bounded()) out.width = hyperbolicity_witness(p);
  return out;
}

}  // namespace conreach
