#pragma once

// Double description (Motzkin) for cones {x : G x <= 0, E x = 0}.
// Works over Rational (exact) and double (tolerance based).

#include "conreach/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <vector>

namespace conreach {

template <typename Scalar>
struct ConeGenerators {
  Matrix<Scalar> rays;       ///< extreme rays modulo the lineality space, one per column
  Matrix<Scalar> lineality;  ///< basis of the lineality space, one per column
};

namespace detail {

template <typename Scalar>
void normalize_direction(Vector<Scalar>& v, double tol) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    (void)tol;
    make_primitive(v);
  } else {
    const double norm = v.cwiseAbs().maxCoeff();
    if (norm > 0) v /= norm;
    for (Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) <= tol) v(i) = 0;
  }
}

template <typename Scalar>
int sign_of(const Scalar& x, double tol) {
  if (ScalarTraits<Scalar>::is_zero(x, tol)) return 0;
  return x > 0 ? 1 : -1;
}

}  // namespace detail

template <typename Scalar>
ConeGenerators<Scalar> cone_generators(const Matrix<Scalar>& g, const Matrix<Scalar>& e, double tol = 1e-9) {
  using Vec = Vector<Scalar>;
  using Bits = boost::dynamic_bitset<>;
  const Index dim = g.cols() > 0 || g.rows() > 0 ? g.cols() : e.cols();

  std::vector<Vec> lineality;
  {
    Matrix<Scalar> basis = e.rows() > 0 ? kernel_basis(e, tol) : Matrix<Scalar>(Matrix<Scalar>::Identity(dim, dim));
    for (Index j = 0; j < basis.cols(); ++j) lineality.emplace_back(basis.col(j));
  }
  std::vector<Vec> rays;
  std::vector<Bits> tight;
  const std::size_t nineq = static_cast<std::size_t>(g.rows());

  for (Index k = 0; k < g.rows(); ++k) {
    const Vec row = g.row(k).transpose();
    const std::size_t bit = static_cast<std::size_t>(k);

    // A lineality direction not orthogonal to the new row becomes a ray.
    std::size_t pick = lineality.size();
    for (std::size_t j = 0; j < lineality.size(); ++j)
      if (detail::sign_of<Scalar>(row.dot(lineality[j]), tol) != 0) {
        pick = j;
        break;
      }
    if (pick < lineality.size()) {
      Vec l0 = lineality[pick];
      const Scalar gl0 = row.dot(l0);
      lineality.erase(lineality.begin() + static_cast<std::ptrdiff_t>(pick));
      for (auto& l : lineality) {
        const Scalar gl = row.dot(l);
        if (!ScalarTraits<Scalar>::is_zero(gl, tol)) l -= (gl / gl0) * l0;
      }
      for (std::size_t i = 0; i < rays.size(); ++i) {
        const Scalar gr = row.dot(rays[i]);
        if (!ScalarTraits<Scalar>::is_zero(gr, tol)) {
          rays[i] -= (gr / gl0) * l0;
          detail::normalize_direction(rays[i], tol);
        }
        tight[i].set(bit);
      }
      if (gl0 > 0) l0 = -l0;
      detail::normalize_direction(l0, tol);
      rays.push_back(l0);
      // Former lineality directions are tight on every earlier row.
      tight.emplace_back(nineq);
      for (std::size_t b = 0; b < bit; ++b) tight.back().set(b);
      continue;
    }

    std::vector<std::size_t> pos, neg, zero;
    std::vector<Scalar> value(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      value[i] = row.dot(rays[i]);
      const int s = detail::sign_of<Scalar>(value[i], tol);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(i);
    }
    if (pos.empty()) {
      for (std::size_t i : zero) tight[i].set(bit);
      continue;
    }

    std::vector<Vec> next_rays;
    std::vector<Bits> next_tight;
    for (std::size_t i : neg) {
      next_rays.push_back(rays[i]);
      next_tight.push_back(tight[i]);
    }
    for (std::size_t i : zero) {
      next_rays.push_back(rays[i]);
      next_tight.push_back(tight[i]);
      next_tight.back().set(bit);
    }
    for (std::size_t p : pos)
      for (std::size_t n : neg) {
        const Bits common = tight[p] & tight[n];
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.is_subset_of(tight[r])) adjacent = false;
        }
        if (!adjacent) continue;
        Vec combo = value[p] * rays[n] - value[n] * rays[p];
        detail::normalize_direction(combo, tol);
        if (combo.cwiseAbs().maxCoeff() == Scalar(0)) continue;
        next_rays.push_back(std::move(combo));
        next_tight.push_back(common);
        next_tight.back().set(bit);
      }
    rays = std::move(next_rays);
    tight = std::move(next_tight);
  }

  ConeGenerators<Scalar> out;
  out.rays = Matrix<Scalar>(dim, static_cast<Index>(rays.size()));
  for (std::size_t i = 0; i < rays.size(); ++i) out.rays.col(static_cast<Index>(i)) = rays[i];
  out.lineality = Matrix<Scalar>(dim, static_cast<Index>(lineality.size()));
  for (std::size_t i = 0; i < lineality.size(); ++i) out.lineality.col(static_cast<Index>(i)) = lineality[i];
  return out;
}

}  // namespace conreach
