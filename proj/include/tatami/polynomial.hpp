#pragma once

#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tatami {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when an asserted-exact division leaves a remainder or a fractional quotient.
class InexactDivision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense polynomial in z with arbitrary-precision integer coefficients,
/// ascending order, no trailing zeros. The zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<long long> c) {
    for (long long x : c) coeffs_.emplace_back(x);
    trim();
  }
  explicit IntPolynomial(std::vector<BigInt> c) : coeffs_(std::move(c)) { trim(); }

  static IntPolynomial constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

  /// c * z^k
  static IntPolynomial monomial(const BigInt& c, int k) {
    std::vector<BigInt> v(static_cast<std::size_t>(k) + 1, 0);
    v.back() = c;
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  BigInt operator[](int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const BigInt& leading() const { return coeffs_.back(); }

  BigInt evaluate(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a) {
    std::vector<BigInt> c = a.coeffs_;
    for (auto& x : c) x = -x;
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator*(const BigInt& k, const IntPolynomial& a) {
    std::vector<BigInt> c = a.coeffs_;
    for (auto& x : c) x *= k;
    return IntPolynomial(std::move(c));
  }

  IntPolynomial& operator+=(const IntPolynomial& o) { return *this = *this + o; }
  IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

  /// First n coefficients of the power series (terms of degree >= n dropped).
  IntPolynomial truncated(int n) const {
    std::vector<BigInt> c(coeffs_.begin(), coeffs_.begin() + std::min<std::ptrdiff_t>(n, static_cast<std::ptrdiff_t>(coeffs_.size())));
    return IntPolynomial(std::move(c));
  }

  std::string to_string(const char* var = "z") const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const BigInt& c = coeffs_[k];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (first)
        out << (c < 0 ? "-" : "");
      else
        out << (c < 0 ? " - " : " + ");
      first = false;
      if (k == 0 || mag != 1) out << mag;
      if (k >= 1) out << var;
      if (k >= 2) out << '^' << k;
    }
    return out.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// gcd of the coefficients (nonnegative; zero for the zero polynomial).
inline BigInt content(const IntPolynomial& p) {
  BigInt g = 0;
  for (const auto& c : p.coeffs()) g = boost::multiprecision::gcd(g, c);
  return g;
}

/// p / content(p), with positive leading coefficient.
inline IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<BigInt> c = p.coeffs();
  for (auto& x : c) x /= g;
  return IntPolynomial(std::move(c));
}

/// z^{deg p} p(1/z)
inline IntPolynomial reverse(const IntPolynomial& p) {
  std::vector<BigInt> c(p.coeffs().rbegin(), p.coeffs().rend());
  return IntPolynomial(std::move(c));
}

/// p(-z)
inline IntPolynomial negate_argument(const IntPolynomial& p) {
  std::vector<BigInt> c = p.coeffs();
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return IntPolynomial(std::move(c));
}

struct DivRem {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

/// Division over the integers; valid when the divisor's leading coefficient
/// divides every intermediate leading term (always true for monic divisors).
/// Throws InexactDivision if an intermediate quotient term is fractional.
inline DivRem divrem(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {{}, a};
  std::vector<BigInt> q(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  const BigInt& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    BigInt& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    if (top % lb != 0) throw InexactDivision("fractional quotient term");
    BigInt t = top / lb;
    q[static_cast<std::size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= t * b[j];
  }
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

/// a / b, asserting exact division.
inline IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, rem] = divrem(a, b);
  if (!rem.is_zero()) throw InexactDivision("nonzero remainder");
  return q;
}

inline bool divides(const IntPolynomial& b, const IntPolynomial& a) {
  try {
    return divrem(a, b).remainder.is_zero();
  } catch (const InexactDivision&) {
    return false;
  }
}

/// lc(b)^(deg a - deg b + 1) * a mod b
inline IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() < b.degree()) return a;
  BigInt scale = boost::multiprecision::pow(b.leading(), static_cast<unsigned>(a.degree() - b.degree() + 1));
  return divrem(scale * a, b).remainder;
}

/// gcd over the rationals, as a primitive integer polynomial with positive leading coefficient.
inline IntPolynomial gcd(IntPolynomial a, IntPolynomial b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return a;
}

/// Product of the leading n terms of power series a and b.
inline IntPolynomial series_mul(const IntPolynomial& a, const IntPolynomial& b, int n) {
  std::vector<BigInt> c(static_cast<std::size_t>(std::max(n, 0)), 0);
  for (int i = 0; i <= a.degree() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= b.degree() && i + j < n; ++j)
      c[static_cast<std::size_t>(i + j)] += a.coeffs()[static_cast<std::size_t>(i)] * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return IntPolynomial(std::move(c));
}

/// First n power-series coefficients of f/g; g(0) must be +-1.
inline std::vector<BigInt> series_expand(const IntPolynomial& f, const IntPolynomial& g, int n) {
  if (g[0] != 1 && g[0] != -1) throw std::domain_error("series_expand needs g(0) = +-1");
  std::vector<BigInt> s(static_cast<std::size_t>(std::max(n, 0)), 0);
  const BigInt g0 = g[0];
  for (int k = 0; k < n; ++k) {
    BigInt acc = f[k];
    for (int j = 1; j <= std::min(k, g.degree()); ++j) acc -= g.coeffs()[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
    s[static_cast<std::size_t>(k)] = acc * g0;  // 1/g0 == g0
  }
  return s;
}

}  // namespace tatami
