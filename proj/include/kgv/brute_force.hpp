#pragma once
// explicit finite groups acting on F_p^n: closure, class counts, k(GV), censuses

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgv/bigint.hpp"
#include "kgv/element_counts.hpp"
#include "kgv/polyfield.hpp"

namespace kgv {

// n x n over F_p packed into 256 bits; entries never straddle a word.
// For p = 2 row i occupies bits [i n, i n + n).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int p, int n);  // zero matrix
  static Matrix Identity(int p, int n);
  static Matrix from_rows(int p, const std::vector<std::vector<int>>& rows);

  int p() const { return p_; }
  int n() const { return n_; }
  int operator()(int i, int j) const;
  void set(int i, int j, int v);

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix transpose() const;
  std::optional<Matrix> inverse() const;
  int rank() const;
  bool is_identity() const { return *this == Identity(p_, n_); }

  // vectors are coded sum v_i p^i; apply is M v, apply_row is f M
  std::uint32_t apply(std::uint32_t v) const;
  std::uint32_t apply_row(std::uint32_t f) const;

  std::vector<std::vector<int>> rows() const;
  std::string str() const;

  bool operator==(const Matrix& o) const { return p_ == o.p_ && n_ == o.n_ && w_ == o.w_; }
  bool operator<(const Matrix& o) const { return w_ < o.w_; }
  std::size_t hash() const;

 private:
  int bits() const;
  int per_word() const { return 64 / bits(); }
  std::uint8_t p_ = 2;
  std::uint8_t n_ = 0;
  std::array<std::uint64_t, 4> w_{};
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

// vector helpers for F_p^n coded as integers
std::uint32_t vec_add(std::uint32_t a, std::uint32_t b, int p, int n);
std::vector<int> vec_digits(std::uint32_t v, int p, int n);
std::uint32_t vec_code(const std::vector<int>& d, int p);
std::uint32_t ipow_u32(std::uint32_t b, int e);

// ---- operation policies ----

struct MatrixOps {
  int p = 2;
  int n = 0;
  using Elt = Matrix;
  using Hash = MatrixHash;
  Elt identity() const { return Matrix::Identity(p, n); }
  Elt mul(const Elt& a, const Elt& b) const { return a * b; }
  Elt inv(const Elt& a) const;
  std::uint32_t points() const { return ipow_u32(p, n); }
  std::uint32_t act(const Elt& g, std::uint32_t v) const { return g.apply(v); }
  // contragredient action on row functionals: f -> f g^-1
  std::uint32_t act_dual(const Elt& g, std::uint32_t f) const { return inv(g).apply_row(f); }
  bool dual_fixes(const Elt& g, std::uint32_t f) const { return g.apply_row(f) == f; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return vec_add(a, b, p, n); }
  std::vector<std::uint32_t> basis() const;
  std::string str(const Elt& g) const { return g.str(); }
};

// x -> w^k x^(p^l) on F_(p^n), w the field generator
struct Semilinear {
  std::uint32_t k = 0;
  std::uint32_t l = 0;
  bool operator==(const Semilinear& o) const { return k == o.k && l == o.l; }
  bool operator<(const Semilinear& o) const { return k != o.k ? k < o.k : l < o.l; }
};

struct SemilinearHash {
  std::size_t operator()(const Semilinear& s) const { return std::hash<std::uint64_t>()((std::uint64_t(s.k) << 8) | s.l); }
};

class SemilinearOps {
 public:
  using Elt = Semilinear;
  using Hash = SemilinearHash;
  SemilinearOps(int p, int n);
  const FiniteField& field() const { return *F_; }
  std::uint32_t order_S() const { return F_->q() - 1; }
  Elt identity() const { return {0, 0}; }
  Elt mul(const Elt& a, const Elt& b) const;
  Elt inv(const Elt& a) const;
  std::uint32_t points() const { return F_->q(); }
  std::uint32_t act(const Elt& g, std::uint32_t v) const;
  // beta -> w^-k sigma^l(beta), the action on characters v -> psi(Tr(beta v))
  std::uint32_t act_dual(const Elt& g, std::uint32_t b) const;
  bool dual_fixes(const Elt& g, std::uint32_t b) const { return act_dual(g, b) == b; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return F_->add(a, b); }
  std::vector<std::uint32_t> basis() const;
  std::string str(const Elt& g) const { return "(" + std::to_string(g.k) + "," + std::to_string(g.l) + ")"; }
  // matrix of the F_p-linear map on the polynomial basis
  Matrix matrix(const Elt& g) const;

 private:
  std::shared_ptr<const FiniteField> F_;
  int n_;
  std::vector<std::uint32_t> ppow_;             // p^l mod (q-1)
  std::vector<std::vector<std::uint32_t>> frob_;  // frob_[l][v] = v^(p^l)
};

constexpr std::size_t default_closure_cap = 2000000;

template <class Ops>
class FiniteGroup {
 public:
  using Elt = typename Ops::Elt;
  struct ConjClass {
    std::size_t rep;
    std::size_t size;
  };

  FiniteGroup(Ops ops, std::vector<Elt> gens, std::size_t cap = default_closure_cap) : ops_(std::move(ops)) {
    for (auto& g : gens)
      if (!(g == ops_.identity())) gens_.push_back(g);
    close(cap);
  }

  // a closed element list; generators chosen greedily in list order
  static FiniteGroup from_elements(Ops ops, const std::vector<Elt>& elts) {
    FiniteGroup g(ops, {}, 1);
    for (const auto& x : elts) {
      if (g.contains(x)) continue;
      g.gens_.push_back(x);
      g.close(elts.size());
    }
    if (g.order() != elts.size()) throw Error("from_elements: element list is not a group");
    return g;
  }

  const Ops& ops() const { return ops_; }
  std::size_t order() const { return elts_.size(); }
  const std::vector<Elt>& elements() const { return elts_; }
  const std::vector<Elt>& generators() const { return gens_; }
  bool contains(const Elt& x) const { return index_.count(x) > 0; }
  std::size_t index_of(const Elt& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw Error("element not in group");
    return it->second;
  }

  // conjugation orbits swept by generators, in element order
  std::vector<ConjClass> classes() const {
    std::vector<Elt> ginv;
    for (const auto& s : gens_) ginv.push_back(ops_.inv(s));
    std::vector<bool> seen(elts_.size(), false);
    std::vector<ConjClass> out;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < elts_.size(); ++i) {
      if (seen[i]) continue;
      seen[i] = true;
      std::size_t size = 0;
      stack.assign(1, i);
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        ++size;
        for (std::size_t j = 0; j < gens_.size(); ++j) {
          std::size_t y = index_of(ops_.mul(ops_.mul(ginv[j], elts_[x]), gens_[j]));
          if (!seen[y]) {
            seen[y] = true;
            stack.push_back(y);
          }
        }
      }
      out.push_back({i, size});
    }
    return out;
  }
  std::size_t class_count() const { return classes().size(); }

  std::size_t element_order(const Elt& x) const {
    std::size_t o = 1;
    Elt y = x;
    while (!(y == ops_.identity())) {
      y = ops_.mul(y, x);
      ++o;
    }
    return o;
  }

 private:
  void close(std::size_t cap) {
    elts_.clear();
    index_.clear();
    elts_.push_back(ops_.identity());
    index_.emplace(elts_.back(), 0);
    for (std::size_t i = 0; i < elts_.size(); ++i) {
      for (const auto& s : gens_) {
        Elt y = ops_.mul(elts_[i], s);
        if (index_.count(y)) continue;
        if (elts_.size() >= cap) throw Error("closure: cap of " + std::to_string(cap) + " elements exceeded");
        index_.emplace(y, elts_.size());
        elts_.push_back(std::move(y));
      }
    }
  }

  Ops ops_;
  std::vector<Elt> gens_;
  std::vector<Elt> elts_;
  std::unordered_map<Elt, std::size_t, typename Ops::Hash> index_;
};

using FiniteMatrixGroup = FiniteGroup<MatrixOps>;
using SemilinearGroup = FiniteGroup<SemilinearOps>;

FiniteMatrixGroup closure(const std::vector<Matrix>& gens, int p, int n, std::size_t cap = default_closure_cap);

// orbits of the generators on points, by action or dual action; representatives are orbit minima
template <class Ops>
std::vector<std::uint32_t> orbit_representatives(const FiniteGroup<Ops>& g, bool dual) {
  const Ops& ops = g.ops();
  std::uint32_t N = ops.points();
  std::vector<bool> seen(N, false);
  std::vector<std::uint32_t> reps, stack;
  for (std::uint32_t v = 0; v < N; ++v) {
    if (seen[v]) continue;
    reps.push_back(v);
    seen[v] = true;
    stack.assign(1, v);
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      for (const auto& s : g.generators()) {
        std::uint32_t y = dual ? ops.act_dual(s, x) : ops.act(s, x);
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  return reps;
}

template <class Ops>
std::vector<typename Ops::Elt> dual_stabilizer(const FiniteGroup<Ops>& g, std::uint32_t f) {
  std::vector<typename Ops::Elt> out;
  for (const auto& x : g.elements())
    if (g.ops().dual_fixes(x, f)) out.push_back(x);
  return out;
}

enum class KgvMethod { lgt, direct };
constexpr std::size_t default_direct_cap = 100000;

// k(GV) as a sum of k(Stab) over dual orbits
template <class Ops>
std::size_t kgv_lgt(const FiniteGroup<Ops>& g) {
  std::size_t total = 0;
  for (std::uint32_t f : orbit_representatives(g, true)) {
    if (f == 0) {
      total += g.class_count();
      continue;
    }
    auto st = dual_stabilizer(g, f);
    total += FiniteGroup<Ops>::from_elements(g.ops(), st).class_count();
  }
  return total;
}

// affine maps x -> g x + v over a base group, elements coded as (index of g, v)
template <class Ops>
struct AffineOps {
  const FiniteGroup<Ops>* base = nullptr;
  using Elt = std::pair<std::size_t, std::uint32_t>;
  struct Hash {
    std::size_t operator()(const Elt& e) const { return std::hash<std::uint64_t>()((std::uint64_t(e.first) << 32) | e.second); }
  };
  Elt identity() const { return {0, 0}; }
  Elt mul(const Elt& a, const Elt& b) const {
    const auto& ops = base->ops();
    const auto& ga = base->elements()[a.first];
    return {base->index_of(ops.mul(ga, base->elements()[b.first])), ops.add(a.second, ops.act(ga, b.second))};
  }
  Elt inv(const Elt& a) const {
    const auto& ops = base->ops();
    auto gi = ops.inv(base->elements()[a.first]);
    return {base->index_of(gi), negate(ops.act(gi, a.second))};
  }
  std::uint32_t negate(std::uint32_t w) const {
    const auto& ops = base->ops();
    std::uint32_t x = w;
    for (;;) {
      std::uint32_t y = ops.add(x, w);
      if (y == 0) return x;
      x = y;
    }
  }
};

template <class Ops>
std::size_t kgv_direct(const FiniteGroup<Ops>& g, std::size_t cap = default_direct_cap) {
  std::size_t size = g.order() * std::size_t(g.ops().points());
  if (size > cap) throw Error("kgv_count(direct): |G||V| = " + std::to_string(size) + " exceeds cap " + std::to_string(cap));
  AffineOps<Ops> ao{&g};
  std::vector<typename AffineOps<Ops>::Elt> gens;
  for (const auto& s : g.generators()) gens.push_back({g.index_of(s), 0});
  for (std::uint32_t b : g.ops().basis()) gens.push_back({0, b});
  return FiniteGroup<AffineOps<Ops>>(ao, gens, cap + 1).class_count();
}

template <class Ops>
std::size_t kgv_count(const FiniteGroup<Ops>& g, KgvMethod method, std::size_t direct_cap = default_direct_cap) {
  return method == KgvMethod::lgt ? kgv_lgt(g) : kgv_direct(g, direct_cap);
}

// ---- Jordan data and censuses ----

GlDatum jordan_class_datum(const Matrix& x);

struct TypeHistogram {
  std::map<GlDatum, std::uint64_t> counts;
  // r = 2 involutions with B(v, xv) = 0 for all v (blocks on totally singular subspaces)
  std::map<GlDatum, std::uint64_t> totally_singular;
  std::uint64_t total() const;
};

// census by class representatives; form is the Gram matrix used for the r = 2 refinement
TypeHistogram type_histogram(const FiniteMatrixGroup& g, const std::optional<Matrix>& form = std::nullopt);

// standard alternating form [[0, I], [-I, 0]] on e_1..e_m, f_1..f_m
Matrix symplectic_form(int m, int p);
Matrix transvection(const std::vector<int>& v, int p);
std::vector<Matrix> sp_generators(int m, int p);
std::vector<Matrix> sl2_generators(int p);
std::vector<Matrix> gl_generators(int n, int p);

// number of <x>-orbits on F_p^n
std::uint64_t cyclic_orbit_count(const Matrix& x);
// unipotent with Jordan blocks of the given sizes
Matrix unipotent_jordan(int p, const std::vector<int>& blocks);

// ---- meta-cyclic subgroups of GL(1,p^n).n ----

struct MetacyclicSpec {
  int p = 2;
  int n = 1;
  std::uint64_t m = 1;
  int d = 1;
  std::uint64_t k = 0;
  std::uint64_t order() const;
  std::string str() const;
  bool operator==(const MetacyclicSpec& o) const { return p == o.p && n == o.n && m == o.m && d == o.d && k == o.k; }
};

SemilinearGroup metacyclic_group(const MetacyclicSpec& s);
std::vector<MetacyclicSpec> metacyclic_enumerate(int p, int n, std::uint32_t q_cap = 1024);
// least k over conjugates in GL(1,p^n).n
std::uint64_t metacyclic_canonical_k(const MetacyclicSpec& s);

struct MetacyclicViolation {
  MetacyclicSpec spec;
  std::uint64_t kGV = 0;
  std::uint64_t V = 0;
  std::size_t instances = 1;  // raw specs in the conjugacy class
};

struct LemmaCheck {
  std::string lemma;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

struct MetacyclicReport {
  std::uint32_t q_max = 0;
  std::size_t specs = 0;
  std::size_t raw_violations = 0;
  std::vector<MetacyclicViolation> violations;  // one per conjugacy class
  std::vector<LemmaCheck> lemmas;               // d1_case, l5, l7, l8, l9
  bool l5_tight_2212 = false;
  // the expected outcome: exactly the two p^n = 4 classes, clean lemmas
  bool ok() const;
};

MetacyclicReport verify_metacyclic_theorem(std::uint32_t q_max, unsigned jobs = 1);

// ---- normalizers and small lemma checks ----

FiniteMatrixGroup normalizer_in_gl(const FiniteMatrixGroup& target, std::size_t cap = 1000000);
std::vector<Matrix> quaternion_generators(int p);
std::vector<Matrix> dihedral8_generators(int p);

// max over subgroups R <= H <= N_GL(R) and non-trivial dual lambda of k(Stab_H(lambda))
struct A1Rederivation {
  int p = 3;
  std::string R;
  std::size_t subgroups = 0;
  std::size_t max_m = 0;
};
std::vector<A1Rederivation> rederive_a1_r2(const std::vector<int>& primes = {3, 5, 7});

struct SmallLemmaReport {
  std::vector<LemmaCheck> checks;
  bool ok() const;
};
SmallLemmaReport verify_small_lemmas(std::uint32_t q_max = 64);

// generator files: {"p":..,"n":..,"generators":[[[row],..],..]}
std::vector<Matrix> load_generator_file(const std::string& path, int& p, int& n);

}  // namespace kgv
