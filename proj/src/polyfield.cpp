#include "kgv/polyfield.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kgv {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

int modinv_small(int a, int p) {
  // p prime, a != 0
  int r = 1;
  int e = p - 2;
  int b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

void trim(std::vector<int>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s && comp; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  if (n < 2) return out;
  for (const Integer& f : prime_factors(Integer(std::to_string(n)))) {
    u64 p = f.get_ui();
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

std::optional<std::pair<u64, int>> prime_power(u64 n) {
  if (n < 2) return std::nullopt;
  auto f = factor_u64(n);
  if (f.size() != 1) return std::nullopt;
  return f.front();
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [p, e] : factor_u64(n)) {
    std::size_t cur = out.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < cur; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- big factorisation ----

namespace {

Integer rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) {
      Integer t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_rec(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    out.push_back(n);
    return;
  }
  Integer d = rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<Integer> prime_factors(Integer n) {
  std::vector<Integer> out;
  if (n < 2) return out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      n /= p;
    }
  }
  factor_rec(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Integer> zsigmondy(u64 p, unsigned n) {
  if (n < 1) throw Error("zsigmondy: n must be positive");
  // cyclotomic value Phi_n(p) via Moebius over divisors
  Integer num = 1, den = 1;
  for (u64 d : divisors(n)) {
    u64 e = n / d;
    int mu = 1;
    for (auto [q, k] : factor_u64(e)) {
      if (k > 1) mu = 0;
      mu = -mu;
    }
    if (e == 1) mu = 1;
    if (mu == 0) continue;
    Integer term = ipow(p, d) - 1;
    (mu > 0 ? num : den) *= term;
  }
  Integer phi = exact_div(num, den, "cyclotomic value");
  std::optional<Integer> best;
  for (const Integer& q : prime_factors(phi)) {
    // primes dividing Phi_n(p) are primitive unless they divide n
    if (mpz_divisible_ui_p(Integer(n).get_mpz_t(), q.get_ui()) && q <= n) continue;
    bool primitive = true;
    for (unsigned r = 1; r < n && primitive; ++r) {
      Integer t = ipow(p, r) - 1;
      if (mpz_divisible_p(t.get_mpz_t(), q.get_mpz_t())) primitive = false;
    }
    if (primitive && (!best || q > *best)) best = q;
  }
  return best;
}

// ---- polynomials ----

MonicPoly::MonicPoly(int r, std::vector<int> coeffs) : r_(r), c_(std::move(coeffs)) {
  if (!is_prime(r)) throw Error("MonicPoly: characteristic must be prime");
  for (int& x : c_) x = ((x % r) + r) % r;
  trim(c_);
  if (c_.size() < 2 || c_.back() != 1) throw Error("MonicPoly: need monic degree >= 1");
}

u64 MonicPoly::code() const {
  u64 out = 0;
  for (int i = degree() - 1; i >= 0; --i) out = out * r_ + c_[i];
  return out;
}

std::string MonicPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    int c = c_[i];
    if (!c) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << 't';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

std::strong_ordering MonicPoly::operator<=>(const MonicPoly& o) const {
  if (auto c = r_ <=> o.r_; c != 0) return c;
  if (auto c = degree() <=> o.degree(); c != 0) return c;
  return code() <=> o.code();
}

MonicPoly linear_poly(int r, int root) { return MonicPoly(r, {((-root) % r + r) % r, 1}); }

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int r) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % r;
  trim(out);
  return out;
}

std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int r) {
  trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int lead = a.back();
    int shift = static_cast<int>(a.size()) - 1 - dm;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - lead * m[i]) % r + r) % r;
    trim(a);
  }
  return a;
}

bool poly_divides(const std::vector<int>& m, const std::vector<int>& a, int r) { return poly_mod(a, m, r).empty(); }

std::vector<int> poly_div_exact(std::vector<int> a, const std::vector<int>& m, int r) {
  trim(a);
  int dm = static_cast<int>(m.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < dm) throw Error("poly_div_exact: degree too small");
  std::vector<int> q(a.size() - dm, 0);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int lead = a.back();
    int shift = static_cast<int>(a.size()) - 1 - dm;
    q[shift] = lead;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - lead * m[i]) % r + r) % r;
    trim(a);
  }
  if (!a.empty()) throw Error("poly_div_exact: nonzero remainder");
  return q;
}

namespace {

std::vector<int> decode(u64 code, int r, int deg) {
  std::vector<int> c(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    c[i] = static_cast<int>(code % r);
    code /= r;
  }
  c[deg] = 1;
  return c;
}

}  // namespace

bool is_irreducible(const MonicPoly& f) {
  int r = f.characteristic();
  int d = f.degree();
  for (int e = 1; 2 * e <= d; ++e) {
    u64 count = 1;
    for (int i = 0; i < e; ++i) count *= r;
    for (u64 code = 0; code < count; ++code)
      if (poly_divides(decode(code, r, e), f.coeffs(), r)) return false;
  }
  return true;
}

std::vector<MonicPoly> enumerate_irreducibles(int r, int max_degree, u64 cap) {
  if (!is_prime(r)) throw Error("enumerate_irreducibles: r must be prime");
  if (max_degree < 1) return {};
  u64 total = 1;
  for (int i = 0; i < max_degree; ++i) {
    total *= r;
    if (total > cap) throw Error("enumerate_irreducibles: r^max_degree exceeds cap");
  }
  std::vector<MonicPoly> all;  // including t, used as trial divisors
  std::vector<MonicPoly> out;
  for (int d = 1; d <= max_degree; ++d) {
    u64 count = 1;
    for (int i = 0; i < d; ++i) count *= r;
    std::vector<MonicPoly> found;
    for (u64 code = 0; code < count; ++code) {
      auto c = decode(code, r, d);
      bool irr = true;
      for (const MonicPoly& g : all) {
        if (2 * g.degree() > d) break;
        if (poly_divides(g.coeffs(), c, r)) {
          irr = false;
          break;
        }
      }
      if (irr) found.emplace_back(r, c);
    }
    for (auto& f : found) {
      all.push_back(f);
      if (f.constant() != 0) out.push_back(f);
    }
  }
  return out;
}

MonicPoly reciprocal_conjugate(const MonicPoly& f) {
  int r = f.characteristic();
  int a0 = f.constant();
  if (a0 == 0) throw Error("reciprocal_conjugate: zero constant term");
  int inv = modinv_small(a0, r);
  std::vector<int> c(f.coeffs().rbegin(), f.coeffs().rend());
  for (int& x : c) x = x * inv % r;
  return MonicPoly(r, c);
}

// ---- fields ----

FiniteField::FiniteField(int p, int n, std::uint32_t cap) : p_(p), n_(n) {
  if (!is_prime(p)) throw Error("make_field: p must be prime");
  if (n < 1) throw Error("make_field: n must be positive");
  u64 q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q > cap) throw Error("make_field: p^n exceeds cap");
  }
  q_ = static_cast<std::uint32_t>(q);
  pw_.resize(n + 1);
  pw_[0] = 1;
  for (int i = 1; i <= n; ++i) pw_[i] = pw_[i - 1] * p;
  if (n == 1) {
    modulus_ = MonicPoly(p, {0, 1});
  } else {
    for (u64 code = 0;; ++code) {
      MonicPoly f(p, decode(code, p, n));
      if (f.constant() != 0 && is_irreducible(f)) {
        modulus_ = f;
        break;
      }
    }
  }
  auto qm1 = factor_u64(q_ - 1);
  Elt g = 1;
  for (;; ++g) {
    if (q_ == 2) break;
    bool ok = true;
    for (auto [l, e] : qm1) {
      Elt x = 1, b = g;
      u64 k = (q_ - 1) / l;
      while (k) {
        if (k & 1) x = mul_slow(x, b);
        b = mul_slow(b, b);
        k >>= 1;
      }
      if (x == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  Elt x = 1;
  for (std::uint32_t k = 0; k < q_ - 1; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x = mul_slow(x, g);
  }
  if (x != 1) throw Error("make_field: generator order mismatch");
}

FiniteField::Elt FiniteField::mul_slow(Elt a, Elt b) const {
  std::vector<int> da(n_), db(n_);
  for (int i = 0; i < n_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  trim(da);
  trim(db);
  auto prod = poly_mod(poly_mul(da, db, p_), modulus_.coeffs(), p_);
  Elt out = 0;
  for (int i = static_cast<int>(prod.size()) - 1; i >= 0; --i) out = out * p_ + prod[i];
  return out;
}

FiniteField::Elt FiniteField::add(Elt a, Elt b) const {
  if (p_ == 2) return a ^ b;
  Elt out = 0;
  for (int i = 0; i < n_; ++i) {
    Elt s = (a % p_ + b % p_) % p_;
    out += s * pw_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

FiniteField::Elt FiniteField::neg(Elt a) const {
  if (p_ == 2) return a;
  Elt out = 0;
  for (int i = 0; i < n_; ++i) {
    Elt s = (p_ - a % p_) % p_;
    out += s * pw_[i];
    a /= p_;
  }
  return out;
}

FiniteField::Elt FiniteField::mul(Elt a, Elt b) const {
  if (a == 0 || b == 0) return 0;
  std::uint64_t s = static_cast<std::uint64_t>(log_[a]) + log_[b];
  return exp_[s % (q_ - 1)];
}

FiniteField::Elt FiniteField::inverse(Elt a) const {
  if (a == 0) throw Error("field inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elt FiniteField::power(Elt a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
}

std::uint32_t FiniteField::discrete_log(Elt a) const {
  if (a == 0 || a >= q_) throw Error("discrete_log of zero or out-of-range element");
  return log_[a];
}

}  // namespace kgv
