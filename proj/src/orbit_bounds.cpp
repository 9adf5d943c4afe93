#include "kgv/orbit_bounds.hpp"

#include <algorithm>

#include "kgv/polyfield.hpp"

namespace kgv {

namespace {

// least k >= kmin with r^k >= bound
int least_power(int r, long long bound, int kmin) {
  int k = kmin;
  Integer v = ipow(r, k);
  while (v < static_cast<long>(bound)) {
    v *= r;
    ++k;
  }
  return k;
}

unsigned long min_pow(int r, int i, long long cap) {
  Integer v = ipow(r, i);
  return v < static_cast<long>(cap) ? v.get_ui() : static_cast<unsigned long>(cap);
}

}  // namespace

Integer d1(int r, int a) {
  if (a < 1 || !is_prime(r)) throw Error("d1: need prime r and a >= 1");
  int k = least_power(r, 2LL * a, 0);
  Integer s = r;
  for (int i = 1; i <= k; ++i) {
    Integer diff = ipow(r, min_pow(r, i, 2LL * a)) - ipow(r, min_pow(r, i - 1, 2LL * a));
    s += exact_div(diff, ipow(r, i), "d1");
  }
  return s;
}

Integer d2(int r, int a) {
  if (a < 1 || !is_prime(r)) throw Error("d2: need prime r and a >= 1");
  int l = least_power(r, a, 1);
  Integer s = ipow(r, 2);
  for (int i = 1; i <= l; ++i) {
    Integer diff = ipow(r, 2 * min_pow(r, i, a)) - ipow(r, 2 * min_pow(r, i - 1, a));
    s += exact_div(diff, ipow(r, i), "d2");
  }
  return s;
}

long long max_multiplicity(long long S, long long Q) {
  if (S < 1) throw Error("max_multiplicity: S must be positive");
  if (Q < S) throw Error("max_multiplicity: infeasible, Q < S");
  long long best = 1;
  for (long long M = 1; M <= S; ++M) {
    Integer lhs = Integer(static_cast<long>(M)) * static_cast<long>(M) + static_cast<long>(S - M);
    if (lhs <= static_cast<long>(Q)) best = M;
    else break;
  }
  return best;
}

long long orbit_bound_from_cycles(const std::vector<long long>& lengths) {
  if (lengths.empty()) throw Error("orbit_bound_from_cycles: empty cycle list");
  for (long long l : lengths)
    if (l < 1) throw Error("orbit_bound_from_cycles: cycle lengths must be positive");
  return static_cast<long long>(lengths.size());
}

Rational eigen_dim_bound(EigenKind kind, int r, int a, long long m) {
  if (m < 1) throw Error("eigen_dim_bound: m must be positive");
  Integer ra = ipow(r, a);
  Rational b = kind == EigenKind::irreducible ? frac(ra + 1, Integer(static_cast<long>(m)))
                                             : Rational(1) + frac(ra - 1, Integer(static_cast<long>(m)));
  b.canonicalize();
  return std::min(b, Rational(ra));
}

Rational rdim_default(int r) {
  switch (r) {
    case 2: return Rational(1, 2);
    case 3: return Rational(5, 9);
    case 5: return Rational(11, 25);
    case 7: return Rational(3, 7);
    default: {
      Rational q = frac(r + 1, 2 * r);
      q.canonicalize();
      return q;
    }
  }
}

Rational rdim_case(const RdimProfile& p) {
  if (!is_prime(p.r) || p.a < 1) throw Error("rdim_case: malformed profile");
  if (p.r != 2 && p.r != 3 && p.r != 5 && p.r != 7) return rdim_default(p.r);
  if (p.other) {
    if (p.i || p.j) throw Error("rdim_case: 'other' profile carries part counts");
    return rdim_default(p.r);
  }
  int i = p.i.value_or(-1);
  int j = p.j.value_or(0);
  switch (p.r) {
    case 2:
      if (!p.i || p.j || i < 1 || i > 4 || 2 * i > p.a || p.a > 8) throw Error("rdim_case: malformed case (i) profile");
      return Rational(1 + (1 << i), 1 << (i + 1));
    case 3:
      if (p.a > 4 || i < 0 || j < 0 || j > 1 || i + j < 1 || i + j > std::min(p.a, 4))
        throw Error("rdim_case: malformed case (ii) profile");
      return Rational(2, 3);
    case 5:
      if (p.j || p.a > 2 || i < 1 || i > 2 || i > p.a) throw Error("rdim_case: malformed case (iii) profile");
      return Rational(3, 5);
    default:
      if (p.j || p.a != 1 || i != 1) throw Error("rdim_case: malformed case (iv) profile");
      return Rational(4, 7);
  }
}

}  // namespace kgv
