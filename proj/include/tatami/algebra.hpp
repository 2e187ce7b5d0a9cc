#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "tatami/polynomial.hpp"

namespace tatami {

/// n-th cyclotomic polynomial, monic: z^n - 1 = prod_{d | n} phi_d(z).
inline IntPolynomial cyclotomic(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
  static std::map<int, IntPolynomial> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPolynomial p = IntPolynomial::monomial(1, n) - IntPolynomial{1};
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic(d));
  std::lock_guard lock(mu);
  cache.emplace(n, p);
  return p;
}

/// S_n(z) = prod_{k=1..n} (1 + z^k); S_0 = 1.
inline IntPolynomial subset_sum_gf(int n) {
  if (n < 0) throw std::invalid_argument("subset_sum_gf needs n >= 0");
  IntPolynomial p{1};
  for (int k = 1; k <= n; ++k) p *= IntPolynomial{1} + IntPolynomial::monomial(1, k);
  return p;
}

struct Factor {
  IntPolynomial base;
  int exponent = 1;
  int cyclotomic_index = 0;  // 0 when the base is not a cyclotomic polynomial
};

using Factorization = std::vector<Factor>;

inline IntPolynomial expand(const Factorization& f) {
  IntPolynomial p{1};
  for (const auto& [base, e, idx] : f)
    for (int i = 0; i < e; ++i) p *= base;
  return p;
}

/// S_n(z) = prod_{j=1..n} phi_{2j}(z)^floor((n+j)/(2j)). The product is
/// re-expanded and compared against subset_sum_gf(n).
inline Factorization nj2_factorization(int n) {
  if (n < 1) throw std::invalid_argument("nj2_factorization needs n >= 1");
  Factorization f;
  for (int j = 1; j <= n; ++j) {
    int e = (n + j) / (2 * j);
    if (e > 0) f.push_back({cyclotomic(2 * j), e, 2 * j});
  }
  if (expand(f) != subset_sum_gf(n)) throw std::logic_error("nj2 factorization does not reproduce S_n");
  return f;
}

/// Exact quotient P(n,z), or the index j of the first S_{floor((n-1)/2^j)} that does not divide.
struct Conjecture3Result {
  std::optional<IntPolynomial> quotient;
  int nondivisible_at = 0;
  std::vector<int> divisor_indices;  // the n' of each S_{n'} divided out, S_0 excluded

  bool divisible() const { return quotient.has_value(); }
};

inline Conjecture3Result conjecture3_check(int n, const IntPolynomial& tnz) {
  Conjecture3Result res;
  IntPolynomial cur = tnz;
  for (int j = 1;; ++j) {
    int k = (n - 1) >> j;
    if (n - 1 < (1 << j) || k == 0) break;
    res.divisor_indices.push_back(k);
    IntPolynomial s = subset_sum_gf(k);
    auto [q, rem] = divrem(cur, s);  // S_k is monic
    if (!rem.is_zero()) {
      res.nondivisible_at = j;
      return res;
    }
    cur = std::move(q);
  }
  res.quotient = std::move(cur);
  return res;
}

/// g(z) against the sign/argument identity selected by r mod 4, with n = deg g:
///   r = 0: g = -z^n g(1/z)    r = 1: g = -z^n g(-1/z)
///   r = 2: g =  z^n g(1/z)    r = 3: g =  z^n g(-1/z)
inline bool conjecture1_check(int r, const IntPolynomial& g) {
  if (g.is_zero()) return false;
  IntPolynomial rev = reverse(g);
  // z^n g(-1/z) = (-1)^n * reverse(g)(-z)
  IntPolynomial rev_neg = negate_argument(rev);
  if (g.degree() % 2 == 1) rev_neg = -rev_neg;
  switch (((r % 4) + 4) % 4) {
    case 0: return g == -rev;
    case 1: return g == -rev_neg;
    case 2: return g == rev;
    default: return g == rev_neg;
  }
}

/// Predicted denominator degree with m = floor(r/4).
inline int conjecture2_degree(int r) {
  const int m = r / 4;
  switch (r % 4) {
    case 0: return 8 * m * m + 2 * m + 1;
    case 1: return 8 * m * m + 4 * m + 2;
    case 2: return 8 * m * m + 10 * m + 4;
    default: return 8 * m * m + 8 * m + 6;
  }
}

inline bool conjecture2_check(int r, const IntPolynomial& g) { return g.degree() == conjecture2_degree(r); }

}  // namespace tatami
