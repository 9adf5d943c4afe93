#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgv/bigint.hpp"

namespace kgv {

// small number theory
bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);
// (p, k) with n = p^k, or nullopt
std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m);

class MonicPoly {
 public:
  MonicPoly() = default;
  // coefficients constant-first; leading entry must reduce to 1
  MonicPoly(int r, std::vector<int> coeffs);

  int characteristic() const { return r_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<int>& coeffs() const { return c_; }
  int constant() const { return c_.front(); }
  // sum c_i r^i over the non-leading coefficients
  std::uint64_t code() const;
  std::string str() const;

  // ordered by characteristic, degree, then code
  std::strong_ordering operator<=>(const MonicPoly& o) const;
  bool operator==(const MonicPoly& o) const { return r_ == o.r_ && c_ == o.c_; }

 private:
  int r_ = 2;
  std::vector<int> c_{0, 1};
};

MonicPoly linear_poly(int r, int root);  // t - root

// generic coefficient vectors over F_r, constant-first, trimmed
std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int r);
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& monic, int r);
bool poly_divides(const std::vector<int>& monic, const std::vector<int>& a, int r);
std::vector<int> poly_div_exact(std::vector<int> a, const std::vector<int>& monic, int r);

bool is_irreducible(const MonicPoly& f);

constexpr std::uint64_t default_irreducible_cap = 1u << 20;
// monic irreducibles of degree <= max_degree, t excluded, ordered by degree then code
std::vector<MonicPoly> enumerate_irreducibles(int r, int max_degree, std::uint64_t cap = default_irreducible_cap);

MonicPoly reciprocal_conjugate(const MonicPoly& f);

constexpr std::uint32_t default_field_cap = 1u << 20;

class FiniteField {
 public:
  using Elt = std::uint32_t;  // base-p digits = coefficients in the polynomial basis

  FiniteField(int p, int n, std::uint32_t cap = default_field_cap);

  int p() const { return p_; }
  int n() const { return n_; }
  std::uint32_t q() const { return q_; }
  const MonicPoly& modulus() const { return modulus_; }
  Elt generator() const { return exp_[n_ == 0 ? 0 : 1 % (q_ - 1)]; }

  Elt add(Elt a, Elt b) const;
  Elt neg(Elt a) const;
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const;
  Elt inverse(Elt a) const;
  Elt frobenius(Elt a) const { return power(a, p_); }
  Elt power(Elt a, std::uint64_t e) const;
  // generator^k
  Elt exp(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }
  std::uint32_t discrete_log(Elt a) const;

 private:
  Elt mul_slow(Elt a, Elt b) const;

  int p_;
  int n_;
  std::uint32_t q_;
  MonicPoly modulus_;
  std::vector<std::uint32_t> pw_;  // p^i
  std::vector<Elt> exp_;
  std::vector<std::uint32_t> log_;
};

// largest primitive prime divisor of p^n - 1
std::optional<Integer> zsigmondy(std::uint64_t p, unsigned n);

// deterministic-ish prime factorisation of big integers (rho + Miller-Rabin)
std::vector<Integer> prime_factors(Integer n);

}  // namespace kgv
