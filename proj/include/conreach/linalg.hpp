#pragma once

// Gaussian elimination kernels shared by the exact (Rational) and the
// floating-point (double) code paths. For double, entries whose magnitude is
// below tol * max(1, max|M|) are treated as zero.

#include "conreach/rational.hpp"

#include <optional>
#include <vector>

namespace conreach {

template <typename Scalar>
struct EchelonForm {
  Matrix<Scalar> reduced;     ///< reduced row echelon form
  std::vector<Index> pivots;  ///< pivot column of each nonzero row
};

template <typename Derived>
EchelonForm<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input,
                                                  double tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  using Traits = ScalarTraits<Scalar>;
  EchelonForm<Scalar> out;
  Matrix<Scalar> m = input;
  double scale = 1.0;
  if constexpr (!Traits::exact) {
    if (m.size() > 0) scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  }
  const double eps = tol * scale;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index best = -1;
    if constexpr (Traits::exact) {
      for (Index r = row; r < m.rows(); ++r)
        if (m(r, col) != 0) {
          best = r;
          break;
        }
    } else {
      double best_mag = eps;
      for (Index r = row; r < m.rows(); ++r)
        if (std::abs(m(r, col)) > best_mag) {
          best_mag = std::abs(m(r, col));
          best = r;
        }
    }
    if (best < 0) {
      if constexpr (!Traits::exact) m.block(row, col, m.rows() - row, 1).setZero();
      continue;
    }
    m.row(row).swap(m.row(best));
    const Scalar pivot = m(row, col);
    m.row(row) /= pivot;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Scalar factor = m(r, col);
      if (Traits::is_zero(factor, 0.0)) continue;
      m.row(r) -= factor * m.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.conservativeResize(row, Eigen::NoChange);
  out.reduced = std::move(m);
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12) {
  return static_cast<Index>(row_echelon(m, tol).pivots.size());
}

/// Columns form a basis of ker(m), one per free variable of the echelon form.
template <typename Derived>
Matrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m,
                                              double tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_echelon(m, tol);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<Scalar> basis(cols, cols - static_cast<Index>(ech.pivots.size()));
  basis.setZero();
  Index k = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], k) = -ech.reduced(static_cast<Index>(r), free);
    ++k;
  }
  return basis;
}

/// Some x with a * x = b (column by column), or nullopt when inconsistent.
template <typename DerivedA, typename DerivedB>
std::optional<Matrix<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                       const Eigen::MatrixBase<DerivedB>& b,
                                                       double tol = 1e-12) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const auto ech = row_echelon(aug, tol);
  Matrix<Scalar> x = Matrix<Scalar>::Zero(a.cols(), b.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] >= a.cols()) return std::nullopt;
    x.row(ech.pivots[r]) = ech.reduced.block(static_cast<Index>(r), a.cols(), 1, b.cols());
  }
  return x;
}

template <typename Scalar>
Matrix<Scalar> vstack(const Matrix<Scalar>& top, const Matrix<Scalar>& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  Matrix<Scalar> out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

template <typename Scalar>
Matrix<Scalar> hstack(const Matrix<Scalar>& left, const Matrix<Scalar>& right) {
  if (left.cols() == 0) return right;
  if (right.cols() == 0) return left;
  Matrix<Scalar> out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

/// Exact inverse of a nonsingular square matrix; throws on singular input.
RatMatrix inverse(const RatMatrix& m);

}  // namespace conreach
