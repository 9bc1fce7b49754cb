#include "conreach/spectral.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace conreach {

Rational determinant(const RatMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant: matrix is not square");
  RatMatrix m = input;
  const Index n = m.rows();
  Rational det = 1;
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Index r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const Rational factor = m(r, c) / m(c, c);
      m.row(r).tail(n - c) -= factor * m.row(c).tail(n - c);
    }
  }
  return det;
}

Polynomial pencil_determinant(const RatMatrix& m0, const RatMatrix& m1) {
  const Index n = m0.rows();
  std::vector<Rational> xs, ys;
  for (Index t = 0; t <= n; ++t) {
    xs.emplace_back(static_cast<long>(t));
    ys.push_back(determinant(RatMatrix(m0 - xs.back() * m1)));
  }
  return interpolate(xs, ys);
}

bool Interval::contains(double x, double slack) const {
  if (x < to_double(lo) - slack) return false;
  return !hi || x <= to_double(*hi) + slack;
}

bool Interval::contains(const Rational& x) const { return x >= lo && (!hi || x <= *hi); }

std::vector<RealEigenvalue> real_eigen(const RatMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("real_eigen: matrix is not square");
  const Index n = m.rows();
  std::vector<RealEigenvalue> out;
  if (n == 0) return out;
  const Eigen::MatrixXd md = to_double(m);
  for (const auto& [factor, mult] : squarefree_factors(characteristic_polynomial(m))) {
    for (const RealRoot& root : real_roots(factor)) {
      RealEigenvalue ev;
      ev.value = root.value;
      ev.exact = root.exact;
      ev.algebraic = mult;
      if (root.exact) {
        const RatMatrix shifted = m - *root.exact * RatMatrix::Identity(n, n);
        ev.geometric = static_cast<int>(n - rank(shifted));
      } else {
        const Eigen::MatrixXd shifted = md - root.value * Eigen::MatrixXd::Identity(n, n);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted);
        const auto& sv = svd.singularValues();
        const double scale = std::max(1.0, sv(0));
        int nullity = 0;
        for (Index i = 0; i < sv.size(); ++i)
          if (sv(i) <= tol * scale) ++nullity;
        ev.geometric = std::max(1, nullity);
      }
      out.push_back(ev);
    }
  }
  std::sort(out.begin(), out.end(), [](const RealEigenvalue& a, const RealEigenvalue& b) { return a.value < b.value; });
  return out;
}

namespace {

// Calls fn on every k-subset of {0..n-1}, in lexicographic order.
void for_each_subset(Index n, Index k, const std::function<void(const std::vector<Index>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<Index> idx(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    Index i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<Rational> sample_points(Index count) {
  std::vector<Rational> xs;
  for (Index t = 0; t < count; ++t) xs.emplace_back(static_cast<long>(t));
  return xs;
}

// Squarefree lcm accumulator.
void absorb(Polynomial& acc, const Polynomial& p) {
  if (p.degree() < 1) return;
  Polynomial sq = divmod(p, gcd(p, p.derivative())).first.monic();
  const Polynomial common = gcd(acc, sq);
  acc = acc * divmod(sq, common).first;
  acc = acc.monic();
}

std::vector<RealRoot> roots_in(const Polynomial& p, const Interval& interval) {
  std::vector<RealRoot> out;
  for (const RealRoot& r : real_roots(p)) {
    const bool inside = r.exact ? interval.contains(*r.exact) : interval.contains(r.value);
    if (inside) out.push_back(r);
  }
  return out;
}

}  // namespace

Index generic_rank(const RatMatrix& m, const RatMatrix& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols()) throw std::invalid_argument("pencil: shape mismatch");
  // A nonzero minor of order r has at most r roots, so min(rows, cols) + 1
  // distinct probes always hit a point of generic rank.
  static const long probes[][2] = {{1, 7}, {13, 5}, {-29, 11}, {101, 3}, {-7, 19}, {53, 17}, {3, 101}, {-211, 13}};
  const Index need = std::min(m.rows(), m.cols()) + 1;
  Index best = 0;
  for (Index t = 0; t < need; ++t) {
    Rational x;
    if (t < 8)
      x = Rational(probes[t][0], probes[t][1]);
    else
      x = Rational(static_cast<long>(1000 + 37 * t), 41);
    best = std::max(best, rank(RatMatrix(m - x * n)));
  }
  return best;
}

PencilResult pencil_candidates(const RatMatrix& m, const RatMatrix& n, const Interval& interval) {
  if (m.rows() != n.rows() || m.cols() != n.cols()) throw std::invalid_argument("pencil_candidates: shape mismatch");
  if (interval.hi && *interval.hi < interval.lo) throw std::invalid_argument("pencil_candidates: empty interval");
  const Subspace common = intersect(kernel(m), kernel(n));
  if (!common.is_zero()) return PencilSingular{common};

  PencilFinite out;
  const Index r = generic_rank(m, n);
  out.generic_rank = r;
  if (r == 0) return out;
  const auto xs = sample_points(r + 1);
  std::vector<RatMatrix> at;
  for (const auto& x : xs) at.emplace_back(m - x * n);
  Polynomial g;
  for_each_subset(m.rows(), r, [&](const std::vector<Index>& rows) {
    for_each_subset(m.cols(), r, [&](const std::vector<Index>& cols) {
      std::vector<Rational> ys;
      for (const auto& a : at) ys.push_back(determinant(RatMatrix(a(rows, cols))));
      g = gcd(g, interpolate(xs, ys));
    });
  });
  if (g.degree() >= 1) out.values = roots_in(divmod(g, gcd(g, g.derivative())).first, interval);
  return out;
}

Polynomial critical_polynomial(const RatMatrix& m, const RatMatrix& n, const RatMatrix& f) {
  if (m.rows() != n.rows() || m.cols() != n.cols() || (f.rows() > 0 && f.cols() != m.cols()))
    throw std::invalid_argument("critical_polynomial: shape mismatch");
  Polynomial acc = Polynomial::constant(1);
  const Index r = generic_rank(m, n);
  if (r == 0) return acc;
  const Index k = m.cols();
  const auto xs = sample_points(r + 1);
  std::vector<RatMatrix> at;
  for (const auto& x : xs) at.emplace_back(m - x * n);

  for_each_subset(m.rows(), r, [&](const std::vector<Index>& rows) {
    for_each_subset(k, r, [&](const std::vector<Index>& cols) {
      std::vector<Rational> ys;
      for (const auto& a : at) ys.push_back(determinant(RatMatrix(a(rows, cols))));
      absorb(acc, interpolate(xs, ys));
    });
    if (k - r > f.rows() || k == r) return;
    for_each_subset(f.rows(), k - r, [&](const std::vector<Index>& frows) {
      std::vector<Rational> ys;
      for (const auto& a : at) {
        RatMatrix stacked(k, k);
        stacked << a(rows, Eigen::all), f(frows, Eigen::all);
        ys.push_back(determinant(stacked));
      }
      absorb(acc, interpolate(xs, ys));
    });
  });
  return acc;
}

}  // namespace conreach
