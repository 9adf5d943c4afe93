#include "kgv/kgv_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "kgv/group_orders.hpp"
#include "kgv/polyfield.hpp"

namespace kgv {

Integer pow_frac_ceil(const Integer& base, unsigned long num, unsigned long den) {
  if (base < 1) throw Error("pow_frac_ceil: base must be positive");
  if (den < 1) throw Error("pow_frac_ceil: zero denominator");
  unsigned long g = std::gcd(num, den);
  num /= g;
  den /= g;
  Integer b = ipow(base, num);
  if (den == 1) return b;
  Integer root;
  int exact = mpz_root(root.get_mpz_t(), b.get_mpz_t(), den);
  return exact ? root : root + 1;
}

Rational pow_frac_upper(const Integer& base, unsigned long num, unsigned long den, unsigned bits) {
  unsigned long g = std::gcd(num, den);
  num /= g;
  den /= g;
  Integer scaled = ipow(base, num) << static_cast<mp_bitcnt_t>(bits) * den;
  Integer root = pow_frac_ceil(scaled, 1, den);
  return frac(root, Integer(1) << bits);
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_rational(const Rational& q) { return ceil_div(q.get_num(), q.get_den()); }

// ---- cases ----

Integer ExtraspecialCase::V() const { return ipow(qK, ipow(r, a).get_ui()); }

std::string ExtraspecialCase::str() const {
  return "r=" + std::to_string(r) + ",a=" + std::to_string(a) + ",qK=" + std::to_string(qK) + (z4 ? ",z4" : "");
}

bool admissible(int r, unsigned long qK) {
  if (qK < 2 || (qK - 1) % r) return false;
  return prime_power(qK).has_value();
}

ExtraspecialCase make_case(int r, int a, unsigned long qK, bool z4) {
  if (!is_prime(r)) throw Error("extraspecial case: r must be prime");
  if (a < 1) throw Error("extraspecial case: a must be positive");
  auto pp = prime_power(qK);
  if (!pp) throw Error("extraspecial case: |K| must be a prime power");
  if ((qK - 1) % r) throw Error("extraspecial case: r must divide |K|-1");
  if (z4 && (r != 2 || (qK - 1) % 4)) throw Error("extraspecial case: |Z(R)|=4 needs r=2 and 4 | |K|-1");
  ExtraspecialCase c;
  c.r = r;
  c.a = a;
  c.qK = qK;
  c.p = pp->first;
  c.k = pp->second;
  c.z4 = z4;
  return c;
}

std::vector<unsigned long> admissible_fields(int r, unsigned long lo, unsigned long hi) {
  std::vector<unsigned long> out;
  for (unsigned long q = std::max(lo, 2ul); q <= hi; ++q)
    if (admissible(r, q)) out.push_back(q);
  return out;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::e1: return "e1";
    case Variant::e2: return "e2";
    case Variant::e4: return "e4";
    case Variant::f: return "f";
  }
  return "?";
}

namespace {

Rational default_c(int r) {
  return frac(r + 1, 2 * r);
}

Integer pow_q(const Integer& V, const Rational& c) { return pow_frac_ceil(V, c.get_num().get_ui(), c.get_den().get_ui()); }

std::string pow_label(const Rational& c) { return "|V|^" + c.get_str(); }

}  // namespace

BoundReport extraspecial_bound(const ExtraspecialCase& cs, Variant v, const BoundInputs& in) {
  BoundReport rep;
  rep.variant = variant_name(v);
  rep.case_label = cs.str();
  const Integer V = cs.V();
  const Integer ra1 = ipow(cs.r, cs.a + 1);
  auto need = [&](const auto& opt, const char* what) -> decltype(auto) {
    if (!opt) throw Error(std::string("extraspecial_bound: missing input ") + what + " for variant " + variant_name(v));
    return *opt;
  };
  auto add = [&](std::string label, Integer value) { rep.terms.push_back({std::move(label), std::move(value)}); };
  auto head = [&]() {
    if (in.kG) add("k(G)", *in.kG);
    else add("|G|", need(in.G, "|G|"));
  };
  auto tail = [&](const Rational& c) {
    if (in.drop_tail) return;
    Integer P = pow_q(V, c);
    if (in.m) add("m*" + pow_label(c), *in.m * P);
    else add("(|G|/r^(a+1))*" + pow_label(c), ceil_div(need(in.G, "|G|") * P, ra1));
  };
  switch (v) {
    case Variant::e1: {
      Rational c = in.c.value_or(default_c(cs.r));
      const Integer& m = need(in.m, "m");
      add("k(G)", need(in.kG, "k(G)"));
      add("m*|V|/|G|", ceil_div(m * V, need(in.G, "|G|")));
      add("m*(" + pow_label(c) + "-1)", m * (pow_q(V, c) - 1));
      break;
    }
    case Variant::e2: {
      Rational c = in.c.value_or(default_c(cs.r));
      const Integer& G = need(in.G, "|G|");
      add("|G|", G);
      add("|V|/r^(a+1)", ceil_div(V, ra1));
      add("(|G|/r^(a+1))*(" + pow_label(c) + "-1)", ceil_div(G * (pow_q(V, c) - 1), ra1));
      break;
    }
    case Variant::e4: {
      head();
      add("|V|/r^(a+1)", ceil_div(V, ra1));
      Rational c1 = need(in.c1, "c1");
      if (!in.d.empty() && in.d.front() > 0) add("(d1/r^(a+1))*" + pow_label(c1), ceil_div(in.d.front() * pow_q(V, c1), ra1));
      tail(need(in.c2, "c2"));
      break;
    }
    case Variant::f: {
      if (cs.r != 2) throw Error("extraspecial_bound: variant f needs r = 2");
      head();
      add("|V|/2^(a+1)", ceil_div(V, ra1));
      for (std::size_t i = 0; i < in.d.size() && i < 4; ++i) {
        if (in.d[i] == 0) continue;
        Rational c = frac((1u << (i + 1)) + 1, 1u << (i + 2));
        add("(d" + std::to_string(i + 1) + "/2^(a+1))*" + pow_label(c), ceil_div(in.d[i] * pow_q(V, c), ra1));
      }
      tail(Rational(1, 2));
      break;
    }
  }
  rep.total = 0;
  for (const auto& t : rep.terms) rep.total += t.value;
  rep.target = V;
  rep.verdict = rep.total <= rep.target;
  return rep;
}

Integer g_order_bound(const ExtraspecialCase& cs) {
  if (cs.a < 1) throw Error("g_order_bound: a must be positive");
  return Integer(cs.qK - 1) * ipow(cs.r, 2 * cs.a) * order_Sp(cs.a, cs.r) * cs.k;
}

Integer normalizer_order_bound(const ExtraspecialCase& cs) {
  if (cs.a < 1) throw Error("normalizer_order_bound: a must be positive");
  if (cs.r != 2) return ipow(cs.r, 2 * cs.a + 1) * order_Sp(cs.a, cs.r) * cs.k;
  if (cs.z4) return ipow(2, 2 * cs.a + 2) * order_Sp(cs.a, 2) * cs.k;
  Integer o = std::max(order_O(2 * cs.a, 1, 2), order_O(2 * cs.a, -1, 2));
  return ipow(2, 2 * cs.a + 1) * o * cs.k;
}

// ---- d-constants and the pair scan ----

namespace {

const std::map<std::pair<int, int>, std::vector<const char*>>& table_entries_by_column() {
  // (a, r) -> entries at columns 3/4, 5/8, 9/16, 17/32 (r = 2) or the single case column
  static const std::map<std::pair<int, int>, std::vector<const char*>> t{
      {{8, 2}, {"2^31", "2^53", "2^67", "2^72"}}, {{7, 2}, {"2^27", "2^45", "2^55"}}, {{6, 2}, {"2^23", "2^37", "2^43"}},
      {{5, 2}, {"2^19", "2^29"}},                 {{4, 2}, {"2^15", "2^21"}},         {{3, 2}, {"2^11"}},
      {{2, 2}, {"2^7"}},                          {{1, 2}, {}},                       {{4, 3}, {"3^29"}},
      {{3, 3}, {"3^13"}},                         {{2, 3}, {"982"}},                  {{1, 3}, {"10"}},
      {{2, 5}, {"651"}},                          {{1, 5}, {"1"}},                    {{1, 7}, {"1"}},
  };
  return t;
}

}  // namespace

bool is_exceptional_pair(int r, int a) { return table_entries_by_column().count({a, r}) > 0; }

std::set<std::pair<int, int>> printed_exceptional_pairs() {
  std::set<std::pair<int, int>> s;
  for (const auto& [key, v] : table_entries_by_column()) s.insert({key.second, key.first});
  return s;
}

std::vector<Integer> d_constants(int a, int r) {
  auto it = table_entries_by_column().find({a, r});
  if (it == table_entries_by_column().end()) throw Error("d_constants: pair is not exceptional");
  Integer R = r == 2 ? ipow(2, 2 * a + 2) : ipow(r, 2 * a + 1);
  std::vector<Integer> out;
  if (r == 2) {
    out.assign(4, Integer(0));
    for (std::size_t i = 0; i < it->second.size(); ++i) out[i] = R * parse_integer(it->second[i]);
  } else {
    out.push_back(R * parse_integer(it->second.front()));
  }
  return out;
}

namespace {

double log2sum(const std::vector<double>& xs) {
  double mx = -INFINITY;
  for (double x : xs) mx = std::max(mx, x);
  if (mx == -INFINITY) return mx;
  double s = 0;
  for (double x : xs) s += std::exp2(x - mx);
  return mx + std::log2(s);
}

unsigned long least_admissible_above(int r, unsigned long q) {
  for (unsigned long x = q + 1;; ++x)
    if (admissible(r, x)) return x;
}

struct E2Eval {
  double log2_ratio;
  double log2_variable;  // log2 of the part of the ratio that depends on |K|
  bool verdict;
};

E2Eval eval_e2(int r, int a, unsigned long qK, GOrderModel model) {
  Integer G;
  ExtraspecialCase cs = make_case(r, a, qK, false);
  if (model == GOrderModel::field_scalars) {
    G = g_order_bound(cs);
  } else {
    G = normalizer_order_bound(cs);
    if (r == 2 && (qK - 1) % 4 == 0) G = std::max(G, normalizer_order_bound(make_case(r, a, qK, true)));
  }
  const double c = double(r + 1) / (2.0 * r);
  const double lgV = std::pow(double(r), a) * std::log2(double(qK));
  const double lgG = log2_approx(G);
  const double lgra1 = (a + 1) * std::log2(double(r));
  double t1 = lgG - lgV;
  double t2 = -lgra1;
  double t3 = lgG - lgra1 - (1.0 - c) * lgV;
  // per-term rounding allowance; tiny terms may carry a huge allowance and still vanish
  const double e1 = 1e-12 * (lgG + lgV + 1), e2 = 1e-12 * (lgra1 + 1), e3 = 1e-12 * (lgG + lgra1 + lgV + 1);
  E2Eval e{log2sum({t1, t2, t3}), log2sum({t1, t3}), false};
  double hi = log2sum({t1 + e1, t2 + e2, t3 + e3}) + 1e-12;
  double lo = log2sum({t1 - e1, t2 - e2, t3 - e3}) - 1e-12;
  // below 2^2000 the ceilings matter, so evaluate exactly
  if (lgV >= 2000 && hi < 0) e.verdict = true;
  else if (lgV >= 2000 && lo > 0) e.verdict = false;
  else {
    if (lgV > double(1u << 24)) throw Error("exceptional_pairs_scan: undecided point too large for exact check");
    BoundInputs in;
    in.G = G;
    e.verdict = extraspecial_bound(cs, Variant::e2, in).verdict;
  }
  return e;
}

}  // namespace

std::vector<PairScanEntry> exceptional_pairs_scan(int r_max, int a_max, GOrderModel model) {
  std::vector<PairScanEntry> out;
  for (int r = 2; r <= r_max; ++r) {
    if (!is_prime(r)) continue;
    unsigned long q0 = least_admissible_above(r, 1);
    unsigned long q1 = least_admissible_above(r, q0);
    unsigned long q2 = least_admissible_above(r, q1);
    for (int a = 1; a <= a_max; ++a) {
      PairScanEntry e;
      e.r = r;
      e.a = a;
      e.qK = q0;
      E2Eval v0 = eval_e2(r, a, q0, model);
      e.log2_ratio = v0.log2_ratio;
      e.verdict = v0.verdict;
      double prev = v0.log2_variable;
      for (unsigned long q : {q1, q2}) {
        E2Eval vi = eval_e2(r, a, q, model);
        e.next_log2_ratios.push_back(vi.log2_ratio);
        if (!(vi.log2_variable < prev)) e.ratio_decreasing = false;
        prev = vi.log2_variable;
      }
      out.push_back(e);
    }
  }
  return out;
}

// ---- printed chains ----

const std::vector<PrintedChain>& printed_chains() {
  auto P = [](unsigned long b, unsigned long e) { return ipow(b, e); };
  static const std::vector<PrintedChain> chains{
      {8, 2, Variant::f, {P(2, 40), P(2, 62), P(2, 76), P(2, 81)}, {}, {}, false, {}, false, 3, false},
      {7, 2, Variant::f, {P(2, 35), P(2, 53), P(2, 63)}, {}, {}, false, {}, false, 3, false},
      {4, 3, Variant::e4, {P(3, 33)}, Rational(2, 3), Rational(5, 9), false, {}, false, 4, false},
      {6, 2, Variant::f, {P(2, 34), P(2, 52), P(2, 62)}, {}, {}, false, 1ul << 50, false, 5, false},
      {5, 2, Variant::f, {P(2, 25), P(2, 35)}, {}, {}, false, {}, false, 17, false},
      {3, 3, Variant::e4, {P(3, 16)}, Rational(2, 3), Rational(5, 9), false, {}, false, 13, false},
      {2, 5, Variant::e4, {651 * P(5, 2)}, Rational(3, 5), Rational(1, 2), false, {}, false, 11, false},
      {4, 2, Variant::f, {P(2, 20), P(2, 26)}, {}, {}, false, {}, false, 41, false},
      {2, 3, Variant::e4, {Integer(8838)}, Rational(2, 3), Rational(5, 9), false, {}, false, 31, false},
      {3, 2, Variant::f, {P(2, 15)}, {}, {}, false, {}, false, 191, false},
      {1, 7, Variant::e4, {Integer(7)}, Rational(4, 7), Rational(1, 2), false, 98, false, 8, false},
      {1, 5, Variant::e4, {Integer(5)}, Rational(3, 5), Rational(1, 2), false, 50, false, 11, false},
      {1, 3, Variant::e4, {}, Rational(2, 3), Rational(2, 3), true, 9, false, 13, false},
      {1, 2, Variant::f, {}, {}, {}, true, 6, false, 13, false},
      // 44k |V|^(3/4) stands for both the d-term and the tail
      {2, 2, Variant::e4, {Integer(44)}, Rational(3, 4), Rational(1, 2), false, {}, true, 243, true},
  };
  return chains;
}

const PrintedChain& printed_chain(int a, int r) {
  for (const auto& c : printed_chains())
    if (c.a == a && c.r == r) return c;
  throw Error("printed_chain: no chain for a=" + std::to_string(a) + ", r=" + std::to_string(r));
}

Integer a1_kG_bound(const ExtraspecialCase& cs) {
  if (cs.a != 1) throw Error("a1_kG_bound: a must be 1");
  // Nagao: k(G) <= k(R) k(G/R), G/R inside (Sp(2,r) or O^eps(2,2)) . k
  if (cs.r == 3) return Integer(11 * 7) * cs.k;
  if (cs.r == 2) return Integer(cs.z4 ? 10 : 5) * 3 * cs.k;
  throw Error("a1_kG_bound: only r = 2, 3 use a k(G) head");
}

BoundReport chain_report(const PrintedChain& ch, const ExtraspecialCase& cs) {
  BoundInputs in;
  in.G = normalizer_order_bound(cs);
  if (ch.head_kG) in.kG = a1_kG_bound(cs);
  if (ch.m_per_k) in.m = Integer(*ch.m_per_k) * cs.k;
  const Integer ra1 = ipow(ch.r, ch.a + 1);
  for (const auto& c : ch.coefficients) {
    Integer d = c * ra1;
    if (ch.drop_tail) d *= cs.k;  // the (2,2) chain prints 44k
    in.d.push_back(d);
  }
  in.c1 = ch.c1;
  in.c2 = ch.c2;
  in.drop_tail = ch.drop_tail;
  return extraspecial_bound(cs, ch.variant, in);
}

BoundReport chain_report(const PrintedChain& ch, unsigned long qK) {
  BoundReport best = chain_report(ch, make_case(ch.r, ch.a, qK, false));
  if (ch.r == 2 && (qK - 1) % 4 == 0) {
    BoundReport z = chain_report(ch, make_case(ch.r, ch.a, qK, true));
    if (z.total > best.total) best = z;
  }
  return best;
}

const std::vector<PrintedCase>& printed_cases() {
  static const std::vector<PrintedCase> c{
      {6, 2, {3}, 5, 120},
      {5, 2, {3, 5, 7, 9, 11}, 17, 119},
      {3, 3, {4, 7}, 13, 82},
      {4, 2, {3, 5, 7, 9, 17, 25, 27}, 41, 82},
      {3, 2, {3, 5, 7, 9, 25, 27, 49, 81, 125}, 191, 58},
      {2, 3, {4, 16, 25}, 31, 44},
      {2, 2, {3, 5, 9, 25, 27, 81, 125, 243}, 251, 32},
  };
  return c;
}

namespace {

std::set<unsigned long> case_prime_set(int a, int r) {
  static const std::map<std::pair<int, int>, std::set<unsigned long>> printed{
      {{5, 2}, {2, 3, 5, 7, 11, 17, 31}}, {{3, 3}, {2, 3, 5, 7, 13}}, {{4, 2}, {2, 3, 5, 7, 17}},
      {{2, 3}, {2, 3, 5}},                {{3, 2}, {2, 3, 5, 7}},     {{2, 2}, {2, 3, 5}},
  };
  auto it = printed.find({a, r});
  if (it != printed.end()) return it->second;
  std::set<unsigned long> s{static_cast<unsigned long>(r), 2};
  for (const auto& p : prime_factors(order_Sp(a, r))) s.insert(p.get_ui());
  return s;
}

}  // namespace

CaseReport case_report(int a, int r, unsigned long scan_limit) {
  if (!is_exceptional_pair(r, a)) throw Error("case_report: pair is not exceptional");
  const PrintedChain& ch = printed_chain(a, r);
  CaseReport rep;
  rep.a = a;
  rep.r = r;
  rep.prime_set = case_prime_set(a, r);
  auto fields = admissible_fields(r, 2, scan_limit);
  std::vector<BoundReport> reports;
  std::optional<std::size_t> last_fail;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    reports.push_back(chain_report(ch, fields[i]));
    if (!reports.back().verdict) last_fail = i;
  }
  std::size_t thr = last_fail ? *last_fail + 1 : 0;
  if (thr >= fields.size()) throw Error("case_report: scan limit too small");
  rep.threshold_qK = fields[thr];
  rep.cap = 0;
  for (std::size_t i = 0; i < thr; ++i) {
    auto pp = *prime_power(fields[i]);
    FieldVerdict fv;
    fv.qK = fields[i];
    fv.verdict = reports[i].verdict;
    fv.prime_filtered = !rep.prime_set.count(pp.first) && pp.second % pp.first != 0;
    fv.log2_total = log2_approx(reports[i].total);
    rep.below.push_back(fv);
    if (!fv.prime_filtered) {
      rep.exceptional_fields.push_back(fields[i]);
      rep.cap = std::max(rep.cap, reports[i].total);
    }
  }
  rep.log2_cap = rep.cap > 0 ? log2_approx(rep.cap) : 0;
  for (const auto& pc : printed_cases())
    if (pc.a == a && pc.r == r) {
      rep.printed_cap_exp = pc.cap_exp;
      rep.cap_ok = rep.cap <= ipow(2, pc.cap_exp);
    }
  return rep;
}

// ---- auxiliary ----

Integer aux_class_bounds(AuxKind kind, const AuxInputs& in) {
  switch (kind) {
    case AuxKind::nagao:
      return in.kN * in.kXN;
    case AuxKind::gallagher_index:
      return in.index * in.kX;
    case AuxKind::sqrt_root:
      return pow_frac_ceil(in.X * in.kX, 1, 2);
    case AuxKind::m_a6: {
      // r^a k 2^s with 2^s the least power of two above sqrt(|Sp(12,2)| kX)
      Integer s = pow_frac_ceil(order_Sp(6, 2) * in.kX, 1, 2);
      Integer pow2 = 1;
      while (pow2 < s) pow2 *= 2;
      return ipow(2, 6) * in.k * pow2;
    }
    case AuxKind::m_a1: {
      static const std::map<std::pair<int, int>, int> t{{{7, 1}, 98}, {{5, 1}, 50}, {{3, 1}, 9}, {{2, 1}, 6}, {{2, 2}, 44}};
      auto it = t.find({in.r, in.a});
      if (it == t.end()) throw Error("m_a1: no stored constant for this pair");
      return Integer(it->second) * in.k;
    }
  }
  return 0;
}

// ---- section 5 ----

unsigned long log2_ceil_64(unsigned n) {
  if (n < 2) throw Error("log2_ceil_64: n must be at least 2");
  Integer x = ipow(n, 64);
  unsigned long b = bit_length(x);
  return mpz_popcount(x.get_mpz_t()) == 1 ? b - 1 : b;
}

namespace {

struct NTerms {
  Integer n_hi;  // ceil n^(3 + 3L/64)
  Integer n_lo;  // ceil n^(1 + 3L/64)
  double lg_hi, lg_lo;
};

NTerms n_terms(unsigned n) {
  unsigned long L = log2_ceil_64(n);
  NTerms t;
  t.n_hi = pow_frac_ceil(n, 192 + 3 * L, 64);
  t.n_lo = pow_frac_ceil(n, 64 + 3 * L, 64);
  t.lg_hi = log2_approx(t.n_hi);
  t.lg_lo = log2_approx(t.n_lo);
  return t;
}

BoundReport section5_exact(unsigned n, unsigned long p, int k, const NTerms& nt) {
  Integer qK = ipow(p, k);
  Integer V = ipow(qK, n);
  BoundReport rep;
  rep.variant = "e3";
  rep.case_label = "n=" + std::to_string(n) + ",p=" + std::to_string(p) + ",k=" + std::to_string(k);
  rep.terms.push_back({"p^k*k*n^(3+3log2n)", qK * k * nt.n_hi});
  rep.terms.push_back({"|V|/n", ceil_div(V, n)});
  rep.terms.push_back({"p^k*k*n^(1+3log2n)*|V|^3/4", qK * k * nt.n_lo * pow_frac_ceil(V, 3, 4)});
  rep.total = 0;
  for (const auto& t : rep.terms) rep.total += t.value;
  Integer floor_target = Integer(1) << 1344;
  rep.target = std::max(V, floor_target);
  rep.verdict = rep.total <= rep.target;
  return rep;
}

}  // namespace

BoundReport section5_bound(unsigned n, unsigned long p, int k) {
  if (n < 2 || !is_prime(p) || k < 1) throw Error("section5_bound: need n >= 2, prime p, k >= 1");
  return section5_exact(n, p, k, n_terms(n));
}

Section5Scan scan_section5(unsigned n_max, unsigned long qK_max, unsigned jobs) {
  Section5Scan out;
  out.n_max = n_max;
  out.qK_max = qK_max;
  struct PP {
    unsigned long q, p;
    int k;
  };
  std::vector<PP> pps;
  {
    std::vector<bool> comp(qK_max + 1, false);
    for (unsigned long p = 2; p <= qK_max; ++p) {
      if (comp[p]) continue;
      for (unsigned long j = p * p; j <= qK_max; j += p) comp[j] = true;
      unsigned long q = p;
      for (int k = 1;; ++k) {
        pps.push_back({q, p, k});
        if (q > qK_max / p) break;
        q *= p;
      }
    }
    std::sort(pps.begin(), pps.end(), [](const PP& x, const PP& y) { return x.q < y.q; });
  }
  struct PerN {
    std::size_t points = 0, exact = 0;
    std::vector<Section5Point> bad;
    Integer max_total = 0;
    Section5Point argmax;
  };
  std::vector<PerN> per(n_max + 1);
  std::atomic<unsigned> next{2};
  auto worker = [&]() {
    for (;;) {
      unsigned n = next.fetch_add(1);
      if (n > n_max) return;
      PerN& res = per[n];
      unsigned long rad = 1;
      for (auto [pr, e] : factor_u64(n)) rad *= pr;
      NTerms nt = n_terms(n);
      const double lgn = std::log2(double(n));
      for (const PP& pp : pps) {
        if ((pp.q - 1) % rad) continue;
        ++res.points;
        const double lgq = std::log2(double(pp.q));
        const double lgV = n * lgq;
        const double lgk = std::log2(double(pp.k));
        bool exact = lgV < 1345.0;
        if (!exact) {
          const double eps = 1e-6;
          double u1 = lgq + lgk + nt.lg_hi + eps;
          double u2 = lgV - lgn + eps;
          double u3 = lgq + lgk + nt.lg_lo + 0.75 * lgV + eps;
          double total = log2sum({u1, u2, u3});
          double target = std::max(lgV, 1344.0);
          if (total > target - 1e-6) exact = true;
        }
        if (!exact) continue;
        ++res.exact;
        BoundReport rep = section5_exact(n, pp.p, pp.k, nt);
        if (!rep.verdict) res.bad.push_back({n, pp.p, pp.k});
        Integer V = ipow(Integer(pp.q), n);
        if (V < (Integer(1) << 1344) && rep.total > res.max_total) {
          res.max_total = rep.total;
          res.argmax = {n, pp.p, pp.k};
        }
      }
    }
  };
  unsigned nt = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  out.max_total = 0;
  for (unsigned n = 2; n <= n_max; ++n) {
    const PerN& r = per[n];
    out.points += r.points;
    out.exact_points += r.exact;
    out.violations += r.bad.size();
    out.violating.insert(out.violating.end(), r.bad.begin(), r.bad.end());
    if (r.max_total > out.max_total) {
      out.max_total = r.max_total;
      out.argmax = r.argmax;
    }
  }
  out.log2_max_total = out.max_total > 0 ? log2_approx(out.max_total) : 0;
  return out;
}

// ---- meta-cyclic ----

const char* lemma_name(MetacyclicLemma l) {
  switch (l) {
    case MetacyclicLemma::d1_case: return "d1_case";
    case MetacyclicLemma::l5: return "l5";
    case MetacyclicLemma::l7: return "l7";
    case MetacyclicLemma::l8: return "l8";
    case MetacyclicLemma::l9: return "l9";
  }
  return "?";
}

namespace {

unsigned least_prime_divisor(unsigned d) {
  for (unsigned q = 2; q <= d; ++q)
    if (d % q == 0) return q;
  return d;
}

}  // namespace

bool metacyclic_applicable(MetacyclicLemma lemma, const MetacyclicParams& mp) {
  Integer pn1 = ipow(mp.p, mp.n) - 1;
  if (mp.m == 0 || !mpz_divisible_ui_p(pn1.get_mpz_t(), mp.m) || mp.d == 0 || mp.n % mp.d) return false;
  switch (lemma) {
    case MetacyclicLemma::d1_case: return mp.d == 1;
    case MetacyclicLemma::l5:
    case MetacyclicLemma::l7: return mp.d > 1;
    case MetacyclicLemma::l8: return mp.d > 1 && mp.m < mp.d && zsigmondy(mp.p, mp.n).has_value();
    case MetacyclicLemma::l9: return mp.d > 1 && mp.m == 1;
  }
  return false;
}

Rational metacyclic_bound(MetacyclicLemma lemma, const MetacyclicParams& mp) {
  if (!is_prime(mp.p) || mp.n < 1) throw Error("metacyclic_bound: need prime p and n >= 1");
  if (!metacyclic_applicable(lemma, mp))
    throw Error(std::string("metacyclic_bound: preconditions of ") + lemma_name(lemma) + " fail");
  const Integer pn = ipow(mp.p, mp.n);
  const Rational pn1(pn - 1);
  const Rational m(Integer(mp.m));
  const Rational d(Integer(mp.d));
  if (lemma == MetacyclicLemma::d1_case) return pn1 / m + m;
  const unsigned q = least_prime_divisor(mp.d);
  const Rational q2(Integer(q) * q);
  const Rational tail = Rational(pn) * m / pn1 + d * Rational(ipow(mp.p, mp.n / q));
  Rational l5 = (q2 - 1) / q2 * d * Rational(ipow(mp.p, mp.n / mp.d) - 1) + d * pn1 / (q2 * m);
  switch (lemma) {
    case MetacyclicLemma::l5: return l5;
    case MetacyclicLemma::l7: return l5 + tail;
    case MetacyclicLemma::l8: {
      Rational pp(*zsigmondy(mp.p, mp.n));
      return d * pn1 / (m * pp) + pn1 / (m * d) - pn1 / (m * d * pp) + tail;
    }
    case MetacyclicLemma::l9: {
      Rational s = 0;
      for (unsigned r = 1; r <= mp.d; ++r)
        if (mp.d % r == 0) s += d / Rational(Integer(r) * r) * Rational(ipow(mp.p, mp.n * r / mp.d));
      return s + 2 + d * Rational(ipow(mp.p, mp.n / q));
    }
    default: break;
  }
  return 0;
}

Rational imprimitive_bound(int t, const Integer& V) {
  if (t < 2) throw Error("imprimitive_bound: t must be at least 2");
  if (t == 2) {
    return frac(2 * V, 3);
  }
  // least x with 3 x^2 >= V^2
  Integer x = pow_frac_ceil(ceil_div(V * V, 3), 1, 2);
  while (3 * (x - 1) * (x - 1) >= V * V && x > 0) --x;
  while (3 * x * x < V * V) ++x;
  return Rational(x);
}

}  // namespace kgv
