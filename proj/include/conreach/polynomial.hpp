#pragma once

// Univariate polynomials over Q, stored low degree first.

#include "conreach/rational.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace conreach {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial_root(const Rational& root);  ///< x - root

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of a / b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor.
Polynomial gcd(Polynomial a, Polynomial b);

/// Yun's algorithm: p = c * prod_i factors[i].first ^ factors[i].second with
/// square-free, pairwise coprime monic factors.
std::vector<std::pair<Polynomial, int>> squarefree_factors(const Polynomial& p);

/// Exact interpolation through (x_i, y_i) with distinct x_i.
Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// det(x I - m) computed exactly.
Polynomial characteristic_polynomial(const RatMatrix& m);

/// Sum of the coefficients of p evaluated at a square matrix.
RatMatrix evaluate(const Polynomial& p, const RatMatrix& m);

struct RealRoot {
  double value = 0;
  std::optional<Rational> exact;  ///< set when the root is rational
};

/// Real roots of a square-free polynomial, ascending. Rational roots are
/// recognized exactly; the count is certified by a Sturm sequence.
std::vector<RealRoot> real_roots(const Polynomial& squarefree);

/// All complex roots (numerical) of a nonconstant polynomial.
std::vector<std::complex<double>> complex_roots(const Polynomial& p);

}  // namespace conreach
