#include "conreach/double_description.hpp"
#include "conreach/setmaps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conreach {

std::string to_string(ConeTag tag) { return tag == ConeTag::Yplus ? "Yplus" : "negYb"; }

namespace {

// Reduced eigenproblem: w with (M - x N) w = 0 and G w <= 0. Then q = N w,
// u = U w, so q != 0 is the question.
struct Reduced {
  RatMatrix m, n, g, u;
};

Reduced reduce(const Sigma& sys, const Polyhedron& cone) {
  const Index n = sys.n(), s = sys.s();
  RatMatrix bd(sys.m(), n + s);
  bd << sys.B.transpose(), sys.D.transpose();
  const RatMatrix z = kernel_basis(bd);
  const RatMatrix nq = z.topRows(n), nu = z.bottomRows(s);
  const RatMatrix p = kernel_basis(RatMatrix(cone.eq_matrix() * nu));
  Reduced r;
  r.n = nq * p;
  r.u = nu * p;
  r.m = (sys.A.transpose() * nq + sys.C.transpose() * nu) * p;
  r.g = cone.ineq_matrix() * r.u;
  return r;
}

struct Sample {
  std::optional<Rational> exact;
  double value = 0;
};

double residual_of(const Sigma& sys, double lambda, const Eigen::VectorXd& q, const Eigen::VectorXd& u) {
  const Eigen::MatrixXd a = to_double(sys.A), b = to_double(sys.B), c = to_double(sys.C), d = to_double(sys.D);
  const Eigen::VectorXd r1 = a.transpose() * q - lambda * q + c.transpose() * u;
  const Eigen::VectorXd r2 = b.transpose() * q + d.transpose() * u;
  double r = 0;
  if (r1.size() > 0) r = std::max(r, r1.cwiseAbs().maxCoeff());
  if (r2.size() > 0) r = std::max(r, r2.cwiseAbs().maxCoeff());
  return r;
}

// Lineality directions may be flipped: pick the sign that makes q start positive.
template <typename Vec>
void orient(Vec& w, const Vec& q) {
  for (Index i = 0; i < q.size(); ++i) {
    if (q(i) == 0) continue;
    if (q(i) < 0) w = -w;
    return;
  }
}

std::optional<EigenCertificate> exact_check(const Reduced& r, const Rational& lambda) {
  const auto gens = cone_generators<Rational>(r.g, RatMatrix(r.m - lambda * r.n));
  auto accept = [&](RatVector w, bool flip) -> std::optional<EigenCertificate> {
    RatVector q = r.n * w;
    if (q.isZero()) return std::nullopt;
    if (flip) {
      orient(w, q);
      q = r.n * w;
    }
    RatVector qu(q.size() + r.u.rows());
    qu << q, r.u * w;
    make_primitive(qu);
    EigenCertificate cert;
    cert.lambda_exact = lambda;
    cert.lambda = to_double(lambda);
    cert.q_exact = qu.head(q.size());
    cert.u_exact = qu.tail(r.u.rows());
    cert.q = to_double(RatMatrix(cert.q_exact));
    cert.u = to_double(RatMatrix(cert.u_exact));
    cert.residual = 0;
    return cert;
  };
  for (Index j = 0; j < gens.lineality.cols(); ++j)
    if (auto c = accept(gens.lineality.col(j), true)) return c;
  for (Index j = 0; j < gens.rays.cols(); ++j)
    if (auto c = accept(gens.rays.col(j), false)) return c;
  return std::nullopt;
}

std::optional<EigenCertificate> numeric_check(const Sigma& sys, const Reduced& r, double lambda, double tol) {
  const Eigen::MatrixXd md = to_double(r.m), nd = to_double(r.n), gd = to_double(r.g), ud = to_double(r.u);
  const auto gens = cone_generators<double>(gd, Eigen::MatrixXd(md - lambda * nd), tol);
  auto accept = [&](Eigen::VectorXd w, bool flip) -> std::optional<EigenCertificate> {
    Eigen::VectorXd q = nd * w;
    if (q.size() == 0 || q.cwiseAbs().maxCoeff() <= 1e3 * tol) return std::nullopt;
    if (flip) {
      for (Index i = 0; i < q.size(); ++i) {
        if (std::abs(q(i)) <= 1e3 * tol) continue;
        if (q(i) < 0) w = -w;
        break;
      }
      q = nd * w;
    }
    const double scale = q.cwiseAbs().maxCoeff();
    EigenCertificate cert;
    cert.lambda = lambda;
    cert.q = q / scale;
    cert.u = ud * w / scale;
    cert.residual = residual_of(sys, lambda, cert.q, cert.u);
    return cert;
  };
  for (Index j = 0; j < gens.lineality.cols(); ++j)
    if (auto c = accept(gens.lineality.col(j), true)) return c;
  for (Index j = 0; j < gens.rays.cols(); ++j)
    if (auto c = accept(gens.rays.col(j), false)) return c;
  return std::nullopt;
}

Rational between(const Sample& a, const Sample& b) {
  if (a.exact && b.exact) return (*a.exact + *b.exact) / 2;
  return simplest_between(a.value, b.value);
}

}  // namespace

EigenSearch cone_eigen_search(const Sigma& sys, const Polyhedron& cone, const Interval& interval, ConeTag tag,
                              double tol) {
  sys.check();
  if (cone.dim() != sys.s()) throw std::invalid_argument("cone_eigen_search: cone has the wrong dimension");
  if (!cone.is_cone()) throw std::invalid_argument("cone_eigen_search: set is not a cone");
  if (interval.lo < 0 || (interval.hi && *interval.hi < interval.lo))
    throw std::invalid_argument("cone_eigen_search: need 0 <= lo <= hi");

  EigenSearch out;
  const Reduced r = reduce(sys, cone);
  if (r.n.cols() == 0) return out;
  out.singular_pencil = generic_rank(r.m, r.n) < r.n.cols();

  RatMatrix f(r.g.rows() + r.n.rows(), r.n.cols());
  f << r.g, r.n;
  const Polynomial crit = critical_polynomial(r.m, r.n, f);

  // Boundary points of the cells, ascending.
  std::vector<Sample> points{{interval.lo, to_double(interval.lo)}};
  for (const auto& root : real_roots(crit)) {
    const bool inside = root.exact ? (*root.exact > interval.lo && (!interval.hi || *root.exact < *interval.hi))
                                   : (root.value > to_double(interval.lo) &&
                                      (!interval.hi || root.value < to_double(*interval.hi)));
    if (inside) points.push_back({root.exact, root.value});
  }
  if (interval.hi && *interval.hi != interval.lo) points.push_back({*interval.hi, to_double(*interval.hi)});

  std::vector<Sample> order;
  if (interval.hi) order.push_back(points.back());
  if (points.size() > 1 || !interval.hi) order.push_back(points.front());
  for (std::size_t i = 1; i + (interval.hi ? 1 : 0) < points.size(); ++i) order.push_back(points[i]);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const Rational mid = between(points[i], points[i + 1]);
    order.push_back({mid, to_double(mid)});
  }
  if (!interval.hi) {
    const Rational beyond = points.back().exact ? *points.back().exact + 1
                                                : Rational(static_cast<long>(std::floor(points.back().value)) + 1);
    order.push_back({beyond, to_double(beyond)});
  }

  for (const auto& sample : order) {
    ++out.points_checked;
    auto cert = sample.exact ? exact_check(r, *sample.exact) : numeric_check(sys, r, sample.value, tol);
    if (cert) {
      cert->cone = tag;
      out.certificate = std::move(cert);
      return out;
    }
  }
  return out;
}

}  // namespace conreach
