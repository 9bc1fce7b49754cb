#include "conreach/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace conreach {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial_root(const Rational& root) { return Polynomial({-root, Rational(1)}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> c = coeffs_;
  const Rational lead = c.back();
  for (auto& x : c) x /= lead;
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational factor = rem[static_cast<std::size_t>(k + db)] / b.leading();
    quot[static_cast<std::size_t>(k)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= factor * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<std::pair<Polynomial, int>> squarefree_factors(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;
  const Polynomial f = p.monic();
  const Polynomial df = f.derivative();
  const Polynomial a0 = gcd(f, df);
  Polynomial b = divmod(f, a0).first;
  Polynomial c = divmod(df, a0).first;
  Polynomial d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    const Polynomial a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  // Newton divided differences.
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  Polynomial result;
  Polynomial basis = Polynomial::constant(1);
  for (std::size_t i = 0; i < n; ++i) {
    result = result + basis * Polynomial::constant(dd[i]);
    basis = basis * Polynomial::monomial_root(xs[i]);
  }
  return result;
}

Polynomial characteristic_polynomial(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic_polynomial: matrix is not square");
  // Faddeev-LeVerrier.
  const Index n = m.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
  c[static_cast<std::size_t>(n)] = 1;
  RatMatrix mk = RatMatrix::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    mk = m * mk;
    for (Index i = 0; i < n; ++i) mk(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const RatMatrix prod = m * mk;
    Rational trace = 0;
    for (Index i = 0; i < n; ++i) trace += prod(i, i);
    c[static_cast<std::size_t>(n - k)] = -trace / static_cast<long>(k);
  }
  return Polynomial(std::move(c));
}

RatMatrix evaluate(const Polynomial& p, const RatMatrix& m) {
  RatMatrix acc = RatMatrix::Zero(m.rows(), m.cols());
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = m * acc;
    for (Index i = 0; i < m.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

std::vector<std::complex<double>> complex_roots(const Polynomial& p) {
  const int deg = p.degree();
  if (deg < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  const double lead = to_double(p.leading());
  for (int i = 0; i < deg; ++i) companion(0, i) = -to_double(p.coeffs()[static_cast<std::size_t>(deg - 1 - i)]) / lead;
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  for (Index i = 0; i < deg; ++i) {
    std::complex<double> z = solver.eigenvalues()(i);
    // Newton polish in complex arithmetic.
    const Polynomial dp = p.derivative();
    for (int it = 0; it < 8; ++it) {
      const std::complex<double> slope = dp(z);
      if (std::abs(slope) == 0) break;
      const std::complex<double> step = p(z) / slope;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

namespace {

int sign_at_infinity(const Polynomial& p, bool positive) {
  if (p.is_zero()) return 0;
  const int s = p.leading() > 0 ? 1 : -1;
  return (positive || p.degree() % 2 == 0) ? s : -s;
}

int sturm_real_root_count(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(Polynomial{} - r);
  }
  auto variations = [&](bool positive) {
    int count = 0, last = 0;
    for (const auto& q : seq) {
      const int s = sign_at_infinity(q, positive);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return variations(false) - variations(true);
}

std::optional<Rational> recognize_rational(const Polynomial& p, double x) {
  // Any rational root p/q has q dividing the leading coefficient of the
  // integer-scaled polynomial, so bounding the convergent denominators is safe.
  Integer lcm = 1;
  for (const auto& c : p.coeffs()) {
    const Integer d = boost::multiprecision::denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  const Integer lead_int = abs(boost::multiprecision::numerator(p.leading()) * (lcm / boost::multiprecision::denominator(p.leading())));
  const long max_den = lead_int > 1000000000 ? 1000000000L : lead_int.convert_to<long>();

  Integer h_prev = 1, h = static_cast<long long>(std::floor(x));
  Integer k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    const Rational candidate(h, k);
    if (p(candidate) == 0) return candidate;
    if (frac < 1e-300) break;
    const double inv = 1.0 / frac;
    if (!std::isfinite(inv) || inv > 1e15) break;
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
  return std::nullopt;
}

}  // namespace

std::vector<RealRoot> real_roots(const Polynomial& squarefree) {
  std::vector<RealRoot> out;
  const int deg = squarefree.degree();
  if (deg < 1) return out;
  if (deg == 1) {
    const Rational r = -squarefree.coeffs()[0] / squarefree.coeffs()[1];
    out.push_back({to_double(r), r});
    return out;
  }
  const int count = sturm_real_root_count(squarefree);
  auto roots = complex_roots(squarefree);
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return std::abs(a.imag()) < std::abs(b.imag()); });
  const Polynomial dp = squarefree.derivative();
  for (int i = 0; i < count && i < static_cast<int>(roots.size()); ++i) {
    double x = roots[static_cast<std::size_t>(i)].real();
    for (int it = 0; it < 20; ++it) {
      const double slope = dp(x);
      if (slope == 0) break;
      const double step = squarefree(x) / slope;
      x -= step;
      if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(x))) break;
    }
    RealRoot root{x, recognize_rational(squarefree, x)};
    if (root.exact) root.value = to_double(*root.exact);
    out.push_back(root);
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

}  // namespace conreach
