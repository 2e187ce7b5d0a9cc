#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "oracle.hpp"
#include "tatami/algebra.hpp"
#include "tatami/transfer.hpp"

using namespace tatami;

namespace {

// number of subsets of {1..n} with each sum, by direct enumeration
std::vector<long long> subset_sums(int n) {
  std::vector<long long> out(static_cast<std::size_t>(n * (n + 1) / 2 + 1), 0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int s = 0;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) s += k + 1;
    ++out[static_cast<std::size_t>(s)];
  }
  return out;
}

IntPolynomial from_ll(const std::vector<long long>& v) {
  std::vector<BigInt> b(v.begin(), v.end());
  return IntPolynomial(std::move(b));
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const IntPolynomial a{1, 2, 3}, b{-1, 0, 0, 4};
  CHECK(a * b == from_ll(oracle::poly_mul({1, 2, 3}, {-1, 0, 0, 4})));
  const auto [q, r] = divrem(a * b + IntPolynomial{5, 1}, a);
  CHECK(q == b);
  CHECK(r == IntPolynomial{5, 1});
  CHECK(divides(a, a * b));
  CHECK_FALSE(divides(a, b));
  CHECK_THROWS_AS(divide_exact(b, a), InexactDivision);
  CHECK(IntPolynomial{}.degree() == -1);
  CHECK((a - a).is_zero());
  CHECK(a.evaluate(2) == 17);
  CHECK(reverse(IntPolynomial{1, 2, 3}) == IntPolynomial{3, 2, 1});
  CHECK(negate_argument(IntPolynomial{1, 2, 3}) == IntPolynomial{1, -2, 3});
  CHECK(IntPolynomial{1, -1, 0, 2}.to_string() == "1 - z + 2z^3");
}

TEST_CASE("polynomial gcd") {
  const IntPolynomial common{1, 1, 1};
  const IntPolynomial g = gcd(common * IntPolynomial{1, -2}, common * IntPolynomial{3, 0, 1});
  const IntPolynomial p = primitive_part(g);
  CHECK((p.leading() < 0 ? -p : p) == common);
  CHECK(gcd(IntPolynomial{1, 1}, IntPolynomial{1, -1}).degree() == 0);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == IntPolynomial{-1, 1});
  CHECK(cyclotomic(2) == IntPolynomial{1, 1});
  CHECK(cyclotomic(4) == IntPolynomial{1, 0, 1});
  CHECK(cyclotomic(6) == IntPolynomial{1, -1, 1});
  CHECK(cyclotomic(12) == IntPolynomial{1, 0, -1, 0, 1});
  for (int n = 1; n <= 30; ++n) {
    IntPolynomial prod{1};
    int deg = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    for (int k = 1; k <= n; ++k) deg += std::gcd(k, n) == 1;
    CHECK(prod == IntPolynomial::monomial(1, n) - IntPolynomial{1});
    CHECK(cyclotomic(n).degree() == deg);
  }
  CHECK_THROWS_AS(cyclotomic(0), std::invalid_argument);
}

TEST_CASE("subset sum generating function") {
  for (int n = 0; n <= 14; ++n) CHECK(subset_sum_gf(n) == from_ll(subset_sums(n)));
}

TEST_CASE("subset sums factor into even-index cyclotomics") {
  for (int n = 1; n <= 40; ++n) {
    const Factorization f = nj2_factorization(n);
    CHECK(expand(f) == subset_sum_gf(n));
    for (const Factor& x : f) CHECK(x.cyclotomic_index % 2 == 0);
  }
  const Factorization f6 = nj2_factorization(6);
  // exponents floor((6+j)/(2j)) for j = 1..6: 3, 2, 1, 1, 1, 1
  std::vector<int> e;
  for (const Factor& x : f6) e.push_back(x.exponent);
  CHECK(e == std::vector<int>{3, 2, 1, 1, 1, 1});
}

TEST_CASE("denominator symmetry and degree") {
  CHECK(conjecture2_degree(1) == 2);
  CHECK(conjecture2_degree(4) == 11);
  CHECK(conjecture2_degree(8) == 37);
  for (int r = 2; r <= 6; ++r) {
    const RationalGF g = rational_gf(r);
    CHECK(conjecture1_check(r, g.denominator));
    CHECK(conjecture2_check(r, g.denominator));
  }
  CHECK_FALSE(conjecture1_check(2, IntPolynomial{1, 2}));
}

TEST_CASE("subset sum divisibility of the square polynomial") {
  // n = 4: only S_1 applies
  const IntPolynomial t4 = square_vdimer_polynomial(4);
  const auto r4 = conjecture3_check(4, t4);
  CHECK(r4.divisible());
  CHECK(r4.divisor_indices == std::vector<int>{1});
  CHECK(*r4.quotient * subset_sum_gf(1) == t4);
  // n = 5: divisor S_2 at j = 1 fails
  const auto r5 = conjecture3_check(5, square_vdimer_polynomial(5));
  CHECK_FALSE(r5.divisible());
  CHECK(r5.nondivisible_at == 1);
  CHECK_FALSE(divides(subset_sum_gf(2), square_vdimer_polynomial(5)));
}
