#pragma once
// exact integer / rational helpers on top of gmpxx

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kgv {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Integer ipow(unsigned long base, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

inline Rational rpow(const Rational& base, long e) {
  Integer n = ipow(Integer(base.get_num()), static_cast<unsigned long>(e < 0 ? -e : e));
  Integer d = ipow(Integer(base.get_den()), static_cast<unsigned long>(e < 0 ? -e : e));
  Rational out = e < 0 ? Rational(d, n) : Rational(n, d);
  out.canonicalize();
  return out;
}

// canonical num/den; the two-argument mpq_class constructor does not reduce
inline Rational frac(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_dec(const Integer& x) { return x.get_str(10); }

inline std::string to_dec(const Rational& x) { return x.get_str(10); }

// throws unless q is an integer
inline Integer exact_integer(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw Error(std::string(what) + ": non-integral value " + q.get_str());
  return q.get_num();
}

inline Integer exact_div(const Integer& a, const Integer& b, const char* what) {
  if (b == 0 || a % b != 0) throw Error(std::string(what) + ": inexact division");
  return a / b;
}

// floor(log2(x)) + 1 for x > 0
inline std::size_t bit_length(const Integer& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

// log2 as double, fine for huge x
inline double log2_approx(const Integer& x) {
  if (x <= 0) throw Error("log2 of non-positive value");
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(m) + static_cast<double>(exp);
}

inline double log2_approx(const Rational& x) { return log2_approx(Integer(x.get_num())) - log2_approx(Integer(x.get_den())); }

inline Integer parse_integer(const std::string& s) {
  // accepts "123" or "b^e"
  auto caret = s.find('^');
  if (caret == std::string::npos) return Integer(s, 10);
  Integer b(s.substr(0, caret), 10);
  unsigned long e = std::stoul(s.substr(caret + 1));
  return ipow(b, e);
}

}  // namespace kgv
