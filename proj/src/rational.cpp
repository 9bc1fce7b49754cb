#include "conreach/rational.hpp"

#include <cctype>
#include <limits>

namespace conreach {

std::string to_string(const Rational& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!is_digits(s) || (s.size() > 1 && s.front() == '0') || (negative && s == "0"))
    throw ParseError("non-canonical rational \"" + std::string(whole) + "\"");
  Integer v{std::string(s)};
  if (negative) v = -v;
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-')
    throw ParseError("non-canonical rational \"" + std::string(text) + "\" (negative denominator)");
  const Integer den = parse_integer(den_text, text);
  if (den == 0) throw ParseError("rational \"" + std::string(text) + "\" has zero denominator");
  if (den == 1)
    throw ParseError("non-canonical rational \"" + std::string(text) + "\" (write integers without /1)");
  if (boost::multiprecision::gcd(num, den) != 1)
    throw ParseError("non-canonical rational \"" + std::string(text) + "\" (not in lowest terms)");
  return Rational(num, den);
}

Rational approximate(double x, long max_den) {
  // Continued-fraction convergents h/k.
  Integer h_prev = 1, h = static_cast<long long>(std::floor(x));
  Integer k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    const double inv = 1.0 / frac;
    const long long a = static_cast<long long>(std::floor(inv));
    const Integer h_next = a * h + h_prev;
    const Integer k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - std::floor(inv);
  }
  return Rational(h, k);
}

namespace {

// Simplest rational in the open interval (lo, hi) with 0 <= lo; hi may be +inf.
Rational simplest_nonneg(double lo, double hi, int depth) {
  const double fl = std::floor(lo);
  if (fl + 1 < hi) return Rational(static_cast<long long>(fl + 1));
  if (depth > 40) return Rational((lo + hi) / 2);
  // lo and hi share the integer part fl: recurse on the reciprocal of the fractional parts.
  const double sub_lo = 1.0 / (hi - fl);
  const double sub_hi = lo > fl ? 1.0 / (lo - fl) : std::numeric_limits<double>::infinity();
  return Rational(static_cast<long long>(fl)) + Rational(1) / simplest_nonneg(sub_lo, sub_hi, depth + 1);
}

}  // namespace

Rational simplest_between(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) return -simplest_nonneg(-hi, -lo, 0);
  return simplest_nonneg(lo, hi, 0);
}

void make_primitive(RatVector& v) {
  Integer l = 1;
  for (Index i = 0; i < v.size(); ++i) {
    const Integer d = boost::multiprecision::denominator(v(i));
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) {
    const Integer n = boost::multiprecision::numerator(v(i)) * (l / boost::multiprecision::denominator(v(i)));
    g = boost::multiprecision::gcd(g, abs(n));
  }
  if (g == 0) return;
  for (Index i = 0; i < v.size(); ++i) v(i) = v(i) * Rational(l) / Rational(g);
}

bool lex_less(const RatVector& a, const RatVector& b) {
  const Index n = std::min(a.size(), b.size());
  for (Index i = 0; i < n; ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

}  // namespace conreach
