#include "doctest.h"
#include "kgv/polyfield.hpp"

#include <set>

using namespace kgv;

namespace {

// all monic polys of degree d over F_r, constant first
std::vector<std::vector<int>> monics(int r, int d) {
  std::vector<std::vector<int>> out;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= r;
  for (long code = 0; code < total; ++code) {
    std::vector<int> c(d + 1, 0);
    long x = code;
    for (int i = 0; i < d; ++i) {
      c[i] = static_cast<int>(x % r);
      x /= r;
    }
    c[d] = 1;
    out.push_back(c);
  }
  return out;
}

std::vector<int> naive_mul(const std::vector<int>& a, const std::vector<int>& b, int r) {
  std::vector<int> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % r;
  return c;
}

// irreducible iff not a product of two monics of positive degree
bool trial_irreducible(const std::vector<int>& f, int r) {
  int d = static_cast<int>(f.size()) - 1;
  for (int e = 1; e <= d / 2; ++e)
    for (const auto& g : monics(r, e))
      for (const auto& h : monics(r, d - e))
        if (naive_mul(g, h, r) == f) return false;
  return true;
}

int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

long necklace(int r, int d) {
  long s = 0;
  for (int e = 1; e <= d; ++e)
    if (d % e == 0) {
      long pw = 1;
      for (int i = 0; i < d / e; ++i) pw *= r;
      s += mobius(e) * pw;
    }
  return s / d;
}

std::uint64_t mult_order(std::uint64_t a, std::uint64_t m) {
  std::uint64_t x = a % m, k = 1;
  while (x != 1) {
    x = x * a % m;
    ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("number theory helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(1000003));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(1023));
  auto pp = prime_power(243);
  REQUIRE(pp);
  CHECK(pp->first == 3);
  CHECK(pp->second == 5);
  CHECK_FALSE(prime_power(12));
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(powmod(2, 10, 1000) == 24);
}

TEST_CASE("enumerate_irreducibles examples") {
  auto e = enumerate_irreducibles(2, 1);
  REQUIRE(e.size() == 1);
  CHECK(e[0] == MonicPoly(2, {1, 1}));
  e = enumerate_irreducibles(2, 2);
  REQUIRE(e.size() == 2);
  CHECK(e[1] == MonicPoly(2, {1, 1, 1}));
  e = enumerate_irreducibles(3, 1);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == MonicPoly(3, {1, 1}));
  CHECK(e[1] == MonicPoly(3, {2, 1}));
}

TEST_CASE("irreducible lists match trial factorisation") {
  for (int r : {2, 3, 5}) {
    int dmax = r == 2 ? 5 : (r == 3 ? 3 : 2);
    std::set<std::vector<int>> got;
    for (const auto& f : enumerate_irreducibles(r, dmax)) got.insert(f.coeffs());
    std::set<std::vector<int>> want;
    for (int d = 1; d <= dmax; ++d)
      for (const auto& f : monics(r, d))
        if (f[0] != 0 && trial_irreducible(f, r)) want.insert(f);
    CHECK(got == want);
  }
}

TEST_CASE("irreducible counts match the necklace formula") {
  for (int r : {2, 3, 5, 7})
    for (int d = 1; d <= 6; ++d) {
      auto all = enumerate_irreducibles(r, d);
      long cnt = 0;
      for (const auto& f : all) cnt += f.degree() == d;
      // t is excluded in degree one
      REQUIRE(cnt == necklace(r, d) - (d == 1 ? 1 : 0));
    }
}

TEST_CASE("reciprocal conjugate") {
  CHECK(reciprocal_conjugate(MonicPoly(2, {1, 1})) == MonicPoly(2, {1, 1}));
  CHECK(reciprocal_conjugate(MonicPoly(3, {2, 1, 1})) == MonicPoly(3, {2, 2, 1}));
  CHECK_THROWS(reciprocal_conjugate(MonicPoly(3, {0, 1, 1})));
  for (int r : {2, 3})
    for (const auto& f : enumerate_irreducibles(r, 3)) {
      auto g = reciprocal_conjugate(f);
      REQUIRE(reciprocal_conjugate(g) == f);
      REQUIRE(g.degree() == f.degree());
      REQUIRE(is_irreducible(g));
    }
}

TEST_CASE("finite field examples") {
  FiniteField f2(2, 1);
  CHECK(f2.q() == 2);
  CHECK(f2.generator() == 1);

  FiniteField f4(2, 2);
  CHECK(f4.modulus() == MonicPoly(2, {1, 1, 1}));
  auto g = f4.generator();
  CHECK(f4.mul(g, g) == f4.add(g, 1));
  CHECK(f4.frobenius(g) == f4.mul(g, g));
  CHECK(f4.frobenius(f4.mul(g, g)) == g);

  for (auto [p, n] : {std::pair{3, 2}, std::pair{2, 4}, std::pair{5, 2}}) {
    FiniteField F(p, n);
    for (std::uint32_t k = 0; k + 1 < F.q(); ++k) REQUIRE(F.discrete_log(F.exp(k)) == k);
    // generator has full order
    std::set<std::uint32_t> powers;
    for (std::uint32_t k = 0; k + 1 < F.q(); ++k) powers.insert(F.power(F.generator(), k));
    CHECK(powers.size() == F.q() - 1);
    for (std::uint32_t a = 1; a < F.q(); ++a) REQUIRE(F.mul(a, F.inverse(a)) == 1);
  }
  CHECK_THROWS(FiniteField(4, 1));
}

TEST_CASE("frobenius is additive of order n") {
  FiniteField F(3, 3);
  for (std::uint32_t a = 0; a < F.q(); ++a) {
    for (std::uint32_t b = 0; b < F.q(); b += 5) REQUIRE(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
    REQUIRE(F.frobenius(F.frobenius(F.frobenius(a))) == a);
  }
}

TEST_CASE("zsigmondy") {
  CHECK(zsigmondy(2, 10) == Integer(11));
  CHECK_FALSE(zsigmondy(2, 6));
  CHECK_FALSE(zsigmondy(3, 2));
  // oracle: largest prime q | p^n - 1 with ord_q(p) = n
  for (std::uint64_t p : {2, 3, 5, 7})
    for (unsigned n = 1; n <= 12; ++n) {
      std::uint64_t N = 1;
      for (unsigned i = 0; i < n; ++i) N *= p;
      if (N > (1ull << 40)) continue;
      std::optional<std::uint64_t> best;
      for (auto [q, e] : factor_u64(N - 1))
        if (mult_order(p, q) == n) best = q;
      auto z = zsigmondy(p, n);
      REQUIRE(z.has_value() == best.has_value());
      if (z) {
        REQUIRE(*z == Integer(static_cast<unsigned long>(*best)));
        REQUIRE(*z % n == 1 % n);
      }
    }
}

TEST_CASE("prime_factors of big integers") {
  Integer n = ipow(2, 64) - 1;
  auto f = prime_factors(n);
  Integer prod = 1;
  for (const auto& q : f) prod *= q;
  CHECK(prod == n);
}
