#pragma once

// Exact scalar type and the dense matrix aliases used throughout the library.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conreach {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

/// Zero tests for the two scalar fields the templated algorithms run over.
/// Rational comparisons ignore the tolerance.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/) { return x == 0; }
  static double magnitude(const Rational& x) { return std::abs(x.convert_to<double>()); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(double x) { return std::abs(x); }
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q" with
/// q > 1 and gcd(p, q) = 1.
std::string to_string(const Rational& x);

/// Accepts only the canonical forms produced by to_string.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Eigen::MatrixXd to_double(const RatMatrix& m) {
  return m.unaryExpr([](const Rational& x) { return x.convert_to<double>(); });
}

/// Simplest rational (smallest denominator) strictly inside (lo, hi).
Rational simplest_between(double lo, double hi);

/// Rational p/q with q <= max_den closest to x by continued fractions.
Rational approximate(double x, long max_den);

/// Scale a direction by a positive factor so its entries are coprime integers.
void make_primitive(RatVector& v);

bool lex_less(const RatVector& a, const RatVector& b);

}  // namespace conreach
