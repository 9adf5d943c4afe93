#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgv/bigint.hpp"

namespace kgv {

// least integer >= base^(num/den)
Integer pow_frac_ceil(const Integer& base, unsigned long num, unsigned long den);
// dyadic upper approximation of base^(num/den) with `bits` fractional bits; never above pow_frac_ceil
Rational pow_frac_upper(const Integer& base, unsigned long num, unsigned long den, unsigned bits);

Integer ceil_div(const Integer& a, const Integer& b);
Integer ceil_rational(const Rational& q);

struct ExtraspecialCase {
  int r = 2;
  int a = 1;
  unsigned long qK = 3;
  unsigned long p = 3;
  int k = 1;
  bool z4 = false;

  Integer V() const;  // qK^(r^a)
  std::string str() const;
};

// validates r | qK - 1 (and 4 | qK - 1 when z4)
ExtraspecialCase make_case(int r, int a, unsigned long qK, bool z4 = false);
bool admissible(int r, unsigned long qK);
// admissible field sizes in [lo, hi]
std::vector<unsigned long> admissible_fields(int r, unsigned long lo, unsigned long hi);

struct BoundTerm {
  std::string label;
  Integer value;
};

struct BoundReport {
  std::string variant;
  std::string case_label;
  std::vector<BoundTerm> terms;
  Integer total;
  Integer target;
  bool verdict = false;
};

enum class Variant { e1, e2, e4, f };
const char* variant_name(Variant v);

struct BoundInputs {
  std::optional<Integer> G;   // |G| bound
  std::optional<Integer> kG;  // k(G) bound; replaces the |G| head term when set
  std::optional<Integer> m;   // max k(Stab); replaces (|G|/r^(a+1)) in the tail when set
  std::optional<Rational> c;  // e1 / e2 exponent, default (r+1)/2r
  std::optional<Rational> c1, c2;
  std::vector<Integer> d;     // e4: {d1}; f: {d1..d4}
  bool drop_tail = false;     // printed chains that fold the tail into the d-terms
};

BoundReport extraspecial_bound(const ExtraspecialCase& cs, Variant v, const BoundInputs& in);

// (qK-1) r^(2a) |Sp(2a,r)| k
Integer g_order_bound(const ExtraspecialCase& cs);
// |R| |A/R| k with A/R in Sp(2a,r), or in O^eps(2a,2) when r = 2 and |Z(R)| = 2;
// maximised over the |Z(R)| values the field allows
Integer normalizer_order_bound(const ExtraspecialCase& cs);

std::vector<Integer> d_constants(int a, int r);
bool is_exceptional_pair(int r, int a);

struct PairScanEntry {
  int r = 0, a = 0;
  unsigned long qK = 0;
  double log2_ratio = 0;        // log2(total / |V|)
  bool verdict = false;
  std::vector<double> next_log2_ratios;  // at the next two admissible fields
  bool ratio_decreasing = true;
};

enum class GOrderModel { field_scalars, centre_aware };

std::vector<PairScanEntry> exceptional_pairs_scan(int r_max = 50, int a_max = 12,
                                                  GOrderModel model = GOrderModel::field_scalars);
std::set<std::pair<int, int>> printed_exceptional_pairs();

// ---- per-case chains ----

struct PrintedChain {
  int a = 0, r = 0;
  Variant variant = Variant::f;
  std::vector<Integer> coefficients;  // as printed, i.e. d_i / r^(a+1)
  std::optional<Rational> c1, c2;
  bool head_kG = false;
  std::optional<unsigned long> m_per_k;  // m <= m_per_k * k
  bool drop_tail = false;
  unsigned long printed_threshold_qK = 0;  // |V| threshold = qK^(r^a)
  bool strict_threshold = false;           // printed as "> qK^(r^a)"
};

const std::vector<PrintedChain>& printed_chains();
const PrintedChain& printed_chain(int a, int r);

// k(G) input used by the a = 1 chains
Integer a1_kG_bound(const ExtraspecialCase& cs);

BoundReport chain_report(const PrintedChain& ch, const ExtraspecialCase& cs);
// worst case over the |Z(R)| values the field allows
BoundReport chain_report(const PrintedChain& ch, unsigned long qK);

struct FieldVerdict {
  unsigned long qK = 0;
  bool verdict = false;
  bool prime_filtered = false;  // characteristic outside the |G| prime set
  double log2_total = 0;
};

struct CaseReport {
  int a = 0, r = 0;
  unsigned long threshold_qK = 0;  // |V|_0 = threshold_qK^(r^a)
  std::vector<unsigned long> exceptional_fields;
  Integer cap;             // max evaluated bound over the exceptional fields
  double log2_cap = 0;
  std::optional<int> printed_cap_exp;  // Theorem constant 2^e
  bool cap_ok = true;
  std::set<unsigned long> prime_set;
  std::vector<FieldVerdict> below;  // every admissible field under the threshold
};

CaseReport case_report(int a, int r, unsigned long scan_limit = 2000);

struct PrintedCase {
  int a, r;
  std::vector<unsigned long> fields;
  unsigned long threshold_qK;
  int cap_exp;
};
const std::vector<PrintedCase>& printed_cases();

// ---- auxiliary ----

enum class AuxKind { nagao, gallagher_index, sqrt_root, m_a6, m_a1 };
struct AuxInputs {
  Integer kN, kXN;       // nagao
  Integer index, kX;     // gallagher_index, sqrt_root (kX)
  Integer X;             // sqrt_root
  Integer k = 1;         // m_a6, m_a1
  int r = 2, a = 1;      // m_a1
};
Integer aux_class_bounds(AuxKind kind, const AuxInputs& in);

// ---- section 5 ----

struct Section5Point {
  unsigned n = 0;
  unsigned long p = 0;
  int k = 0;
};

BoundReport section5_bound(unsigned n, unsigned long p, int k);
// least L with 2^L >= n^64
unsigned long log2_ceil_64(unsigned n);

struct Section5Scan {
  unsigned n_max = 0;
  unsigned long qK_max = 0;
  std::size_t points = 0;
  std::size_t exact_points = 0;
  std::size_t violations = 0;
  std::vector<Section5Point> violating;
  Integer max_total;  // over points with |V| < 2^1344
  Section5Point argmax;
  double log2_max_total = 0;
};

Section5Scan scan_section5(unsigned n_max, unsigned long qK_max, unsigned jobs = 1);

// ---- meta-cyclic and imprimitive ----

enum class MetacyclicLemma { d1_case, l5, l7, l8, l9 };
const char* lemma_name(MetacyclicLemma l);
struct MetacyclicParams {
  unsigned long p = 2;
  unsigned n = 1;
  unsigned long m = 1;
  unsigned d = 1;
};
Rational metacyclic_bound(MetacyclicLemma lemma, const MetacyclicParams& mp);
// true when the lemma's preconditions hold for the parameters
bool metacyclic_applicable(MetacyclicLemma lemma, const MetacyclicParams& mp);

Rational imprimitive_bound(int t, const Integer& V);

}  // namespace kgv
