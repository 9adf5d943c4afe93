#include "kgv/brute_force.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kgv/kgv_bounds.hpp"
#include "kgv/partitions.hpp"

namespace kgv {

// ---- matrices ----

namespace {

int inv_mod(int a, int p) { return static_cast<int>(powmod(static_cast<std::uint64_t>(a), p - 2, p)); }

using Dense = std::array<int, 256>;

}  // namespace

int Matrix::bits() const {
  if (p_ == 2) return 1;
  int b = 0;
  while ((1 << b) < p_) ++b;
  return b;
}

Matrix::Matrix(int p, int n) {
  if (!is_prime(p) || p > 255) throw Error("Matrix: p must be a prime below 256");
  if (n < 0 || n > 16) throw Error("Matrix: dimension out of range");
  p_ = static_cast<std::uint8_t>(p);
  n_ = static_cast<std::uint8_t>(n);
  int per = per_word();
  if ((n * n + per - 1) / per > 4) throw Error("Matrix: " + std::to_string(n) + "x" + std::to_string(n) + " over F_" + std::to_string(p) + " does not fit");
}

Matrix Matrix::Identity(int p, int n) {
  Matrix m(p, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(int p, const std::vector<std::vector<int>>& rows) {
  int n = static_cast<int>(rows.size());
  Matrix m(p, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw Error("Matrix: rows must form a square matrix");
    for (int j = 0; j < n; ++j) m.set(i, j, ((rows[i][j] % p) + p) % p);
  }
  return m;
}

int Matrix::operator()(int i, int j) const {
  int b = bits(), per = 64 / b, e = i * n_ + j;
  return static_cast<int>((w_[e / per] >> ((e % per) * b)) & ((1u << b) - 1));
}

void Matrix::set(int i, int j, int v) {
  int b = bits(), per = 64 / b, e = i * n_ + j;
  std::uint64_t mask = ((std::uint64_t(1) << b) - 1) << ((e % per) * b);
  w_[e / per] = (w_[e / per] & ~mask) | (std::uint64_t(v % p_) << ((e % per) * b));
}

namespace {

Dense unpack(const Matrix& m) {
  Dense d{};
  int n = m.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i * n + j] = m(i, j);
  return d;
}

Matrix pack(const Dense& d, int p, int n) {
  Matrix m(p, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, d[i * n + j]);
  return m;
}

}  // namespace

Matrix Matrix::operator*(const Matrix& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw Error("Matrix: shape mismatch");
  const int n = n_;
  if (p_ == 2 && n * n <= 64) {
    // row bitsets: row i of AB is the xor of rows j of B with A_ij = 1
    const std::uint64_t rmask = n == 64 ? ~0ull : ((1ull << n) - 1);
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i) {
      std::uint64_t arow = (w_[0] >> (i * n)) & rmask, acc = 0;
      while (arow) {
        int j = __builtin_ctzll(arow);
        arow &= arow - 1;
        acc ^= (o.w_[0] >> (j * n)) & rmask;
      }
      out |= acc << (i * n);
    }
    Matrix m(2, n);
    m.w_[0] = out;
    return m;
  }
  Dense a = unpack(*this), b = unpack(o), c{};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int x = a[i * n + k];
      if (!x) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] += x * b[k * n + j];
    }
  for (int e = 0; e < n * n; ++e) c[e] %= p_;
  return pack(c, p_, n);
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix m(p_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.set(i, j, ((*this)(i, j) + o(i, j)) % p_);
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix m(p_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.set(i, j, ((*this)(i, j) - o(i, j) + p_) % p_);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(p_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.set(j, i, (*this)(i, j));
  return m;
}

std::optional<Matrix> Matrix::inverse() const {
  const int n = n_, p = p_;
  Dense a = unpack(*this), b{};
  for (int i = 0; i < n; ++i) b[i * n + i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r * n + c]) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    for (int j = 0; j < n; ++j) {
      std::swap(a[piv * n + j], a[c * n + j]);
      std::swap(b[piv * n + j], b[c * n + j]);
    }
    int s = inv_mod(a[c * n + c], p);
    for (int j = 0; j < n; ++j) {
      a[c * n + j] = a[c * n + j] * s % p;
      b[c * n + j] = b[c * n + j] * s % p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || !a[r * n + c]) continue;
      int f = a[r * n + c];
      for (int j = 0; j < n; ++j) {
        a[r * n + j] = ((a[r * n + j] - f * a[c * n + j]) % p + p) % p;
        b[r * n + j] = ((b[r * n + j] - f * b[c * n + j]) % p + p) % p;
      }
    }
  }
  return pack(b, p, n);
}

int Matrix::rank() const {
  const int n = n_, p = p_;
  Dense a = unpack(*this);
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (a[r * n + c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[rank * n + j]);
    int s = inv_mod(a[rank * n + c], p);
    for (int r = rank + 1; r < n; ++r) {
      int f = a[r * n + c] * s % p;
      if (!f) continue;
      for (int j = 0; j < n; ++j) a[r * n + j] = ((a[r * n + j] - f * a[rank * n + j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::uint32_t ipow_u32(std::uint32_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    if (r > 0xffffffffull) throw Error("ipow_u32: overflow");
  }
  return static_cast<std::uint32_t>(r);
}

std::vector<int> vec_digits(std::uint32_t v, int p, int n) {
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = static_cast<int>(v % p);
    v /= p;
  }
  return d;
}

std::uint32_t vec_code(const std::vector<int>& d, int p) {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + static_cast<std::uint32_t>(d[i]);
  return v;
}

std::uint32_t vec_add(std::uint32_t a, std::uint32_t b, int p, int n) {
  if (p == 2) return a ^ b;
  std::uint32_t out = 0, pw = 1;
  for (int i = 0; i < n; ++i) {
    out += pw * ((a % p + b % p) % p);
    a /= p;
    b /= p;
    pw *= p;
  }
  return out;
}

std::uint32_t Matrix::apply(std::uint32_t v) const {
  auto x = vec_digits(v, p_, n_);
  std::vector<int> y(n_, 0);
  for (int i = 0; i < n_; ++i) {
    int s = 0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s % p_;
  }
  return vec_code(y, p_);
}

std::uint32_t Matrix::apply_row(std::uint32_t f) const {
  auto x = vec_digits(f, p_, n_);
  std::vector<int> y(n_, 0);
  for (int j = 0; j < n_; ++j) {
    int s = 0;
    for (int i = 0; i < n_; ++i) s += x[i] * (*this)(i, j);
    y[j] = s % p_;
  }
  return vec_code(y, p_);
}

std::vector<std::vector<int>> Matrix::rows() const {
  std::vector<std::vector<int>> r(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

std::string Matrix::str() const {
  std::string s = "[";
  for (int i = 0; i < n_; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < n_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
    s += "]";
  }
  return s + "]";
}

std::size_t Matrix::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (std::uint64_t(p_) << 8) ^ n_;
  for (auto w : w_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

Matrix MatrixOps::inv(const Matrix& a) const {
  auto r = a.inverse();
  if (!r) throw Error("MatrixOps: singular matrix in a group");
  return *r;
}

std::vector<std::uint32_t> MatrixOps::basis() const {
  std::vector<std::uint32_t> b;
  for (int i = 0; i < n; ++i) b.push_back(ipow_u32(p, i));
  return b;
}

FiniteMatrixGroup closure(const std::vector<Matrix>& gens, int p, int n, std::size_t cap) {
  for (const auto& g : gens) {
    if (g.p() != p || g.n() != n) throw Error("closure: generators must share (p, n)");
    if (!g.inverse()) throw Error("closure: singular generator");
  }
  return FiniteMatrixGroup(MatrixOps{p, n}, gens, cap);
}

// ---- semilinear maps ----

SemilinearOps::SemilinearOps(int p, int n) : F_(std::make_shared<FiniteField>(p, n)), n_(n) {
  const std::uint32_t qm1 = F_->q() - 1;
  std::uint64_t pw = 1 % std::max<std::uint32_t>(qm1, 1);
  for (int l = 0; l < n; ++l) {
    ppow_.push_back(static_cast<std::uint32_t>(pw));
    pw = pw * p % std::max<std::uint32_t>(qm1, 1);
  }
  frob_.resize(n);
  for (int l = 0; l < n; ++l) {
    frob_[l].resize(F_->q());
    for (std::uint32_t v = 0; v < F_->q(); ++v) frob_[l][v] = l == 0 ? v : F_->frobenius(frob_[l - 1][v]);
  }
}

Semilinear SemilinearOps::mul(const Semilinear& a, const Semilinear& b) const {
  const std::uint64_t qm1 = F_->q() - 1;
  return {static_cast<std::uint32_t>((a.k + std::uint64_t(b.k) * ppow_[a.l]) % qm1), (a.l + b.l) % n_};
}

Semilinear SemilinearOps::inv(const Semilinear& a) const {
  const std::uint64_t qm1 = F_->q() - 1;
  std::uint32_t l = (n_ - a.l) % n_;
  std::uint64_t t = std::uint64_t(a.k) * ppow_[l] % qm1;
  return {static_cast<std::uint32_t>((qm1 - t) % qm1), l};
}

std::uint32_t SemilinearOps::act(const Semilinear& g, std::uint32_t v) const { return F_->mul(F_->exp(g.k), frob_[g.l][v]); }

std::uint32_t SemilinearOps::act_dual(const Semilinear& g, std::uint32_t b) const {
  const std::uint32_t qm1 = F_->q() - 1;
  return F_->mul(F_->exp((qm1 - g.k % qm1) % qm1), frob_[g.l][b]);
}

std::vector<std::uint32_t> SemilinearOps::basis() const {
  std::vector<std::uint32_t> b;
  for (int i = 0; i < n_; ++i) b.push_back(ipow_u32(F_->p(), i));
  return b;
}

Matrix SemilinearOps::matrix(const Semilinear& g) const {
  const int p = F_->p();
  Matrix m(p, n_);
  for (int j = 0; j < n_; ++j) {
    auto col = vec_digits(act(g, ipow_u32(p, j)), p, n_);
    for (int i = 0; i < n_; ++i) m.set(i, j, col[i]);
  }
  return m;
}

// ---- Jordan data ----

namespace {

Matrix poly_at(const MonicPoly& f, const Matrix& x) {
  const int p = x.p(), n = x.n();
  Matrix y(p, n);
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    y = y * x;
    for (int d = 0; d < n; ++d) y.set(d, d, (y(d, d) + c[i]) % p);
  }
  return y;
}

}  // namespace

GlDatum jordan_class_datum(const Matrix& x) {
  const int p = x.p(), n = x.n();
  if (!x.inverse()) throw Error("jordan_class_datum: singular matrix");
  GlDatum out;
  int accounted = 0;
  for (const auto& f : enumerate_irreducibles(p, n)) {
    if (accounted == n) break;
    if (f.degree() > n - accounted) break;
    Matrix y = poly_at(f, x), pw = Matrix::Identity(p, n);
    int prev = 0;
    std::vector<int> conj;
    for (;;) {
      pw = pw * y;
      int nul = n - pw.rank();
      if (nul == prev) break;
      conj.push_back((nul - prev) / f.degree());
      prev = nul;
    }
    if (!conj.empty()) {
      out.emplace(f, dual(Partition(conj)));
      accounted += prev;
    }
  }
  if (accounted != n) throw Error("jordan_class_datum: incomplete factorisation");
  return out;
}

std::uint64_t TypeHistogram::total() const {
  std::uint64_t s = 0;
  for (const auto& [k, v] : counts) s += v;
  return s;
}

TypeHistogram type_histogram(const FiniteMatrixGroup& g, const std::optional<Matrix>& form) {
  TypeHistogram h;
  const int p = g.ops().p, n = g.ops().n;
  const Matrix I = Matrix::Identity(p, n);
  for (const auto& cl : g.classes()) {
    const Matrix& x = g.elements()[cl.rep];
    GlDatum d = jordan_class_datum(x);
    h.counts[d] += cl.size;
    if (form && p == 2 && !(x == I) && x * x == I) {
      // B(v, xv) = 0 for all v: the size-2 blocks pair up on totally singular subspaces.
      // (the image of x - 1 is always totally singular here, so that test says nothing)
      Matrix y = *form * (x - I);
      bool alt = true;
      for (int i = 0; i < n; ++i) alt = alt && y(i, i) == 0;
      if (alt) h.totally_singular[d] += cl.size;
    }
  }
  return h;
}

Matrix symplectic_form(int m, int p) {
  Matrix J(p, 2 * m);
  for (int i = 0; i < m; ++i) {
    J.set(i, m + i, 1);
    J.set(m + i, i, p - 1);
  }
  return J;
}

Matrix transvection(const std::vector<int>& v, int p) {
  // x -> x + B(x, v) v with B(x, y) = x^T J y
  const int n = static_cast<int>(v.size());
  if (n % 2) throw Error("transvection: odd dimension");
  Matrix J = symplectic_form(n / 2, p);
  std::vector<int> Jv(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Jv[i] = (Jv[i] + J(i, j) * v[j]) % p;
  Matrix T = Matrix::Identity(p, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) T.set(i, j, (T(i, j) + v[i] * Jv[j]) % p);
  return T;
}

std::vector<Matrix> sp_generators(int m, int p) {
  std::vector<Matrix> out;
  auto unit = [&](std::initializer_list<int> idx) {
    std::vector<int> v(2 * m, 0);
    for (int i : idx) v[i] = 1;
    return v;
  };
  for (int i = 0; i < m; ++i) {
    out.push_back(transvection(unit({i}), p));
    out.push_back(transvection(unit({m + i}), p));
  }
  for (int i = 0; i + 1 < m; ++i) out.push_back(transvection(unit({i, i + 1}), p));
  return out;
}

std::vector<Matrix> sl2_generators(int p) { return {Matrix::from_rows(p, {{1, 1}, {0, 1}}), Matrix::from_rows(p, {{1, 0}, {1, 1}})}; }

std::vector<Matrix> gl_generators(int n, int p) {
  std::vector<Matrix> out;
  for (int i = 0; i + 1 < n; ++i) {
    Matrix a = Matrix::Identity(p, n), b = Matrix::Identity(p, n);
    a.set(i, i + 1, 1);
    b.set(i + 1, i, 1);
    out.push_back(a);
    out.push_back(b);
  }
  if (p > 2) {
    FiniteField F(p, 1);
    Matrix d = Matrix::Identity(p, n);
    d.set(0, 0, static_cast<int>(F.generator()));
    out.push_back(d);
  }
  return out;
}

std::uint64_t cyclic_orbit_count(const Matrix& x) {
  const std::uint32_t N = ipow_u32(x.p(), x.n());
  std::vector<bool> seen(N, false);
  std::uint64_t cycles = 0;
  for (std::uint32_t v = 0; v < N; ++v) {
    if (seen[v]) continue;
    ++cycles;
    for (std::uint32_t w = v; !seen[w]; w = x.apply(w)) seen[w] = true;
  }
  return cycles;
}

Matrix unipotent_jordan(int p, const std::vector<int>& blocks) {
  int n = 0;
  for (int b : blocks) n += b;
  Matrix m = Matrix::Identity(p, n);
  int off = 0;
  for (int b : blocks) {
    for (int i = 0; i + 1 < b; ++i) m.set(off + i, off + i + 1, 1);
    off += b;
  }
  return m;
}

// ---- meta-cyclic ----

std::uint64_t MetacyclicSpec::order() const { return static_cast<std::uint64_t>(d) * ((ipow_u32(p, n) - 1) / m); }

std::string MetacyclicSpec::str() const {
  return "p=" + std::to_string(p) + ",n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",d=" + std::to_string(d) + ",k=" + std::to_string(k);
}

SemilinearGroup metacyclic_group(const MetacyclicSpec& s) {
  SemilinearOps ops(s.p, s.n);
  const std::uint32_t qm1 = ops.order_S();
  std::vector<Semilinear> gens{{static_cast<std::uint32_t>(s.m % qm1), 0},
                               {static_cast<std::uint32_t>(s.k % qm1), static_cast<std::uint32_t>((s.n / s.d) % s.n)}};
  SemilinearGroup g(ops, gens);
  if (g.order() != s.order()) throw Error("metacyclic_group: order mismatch for " + s.str());
  return g;
}

std::vector<MetacyclicSpec> metacyclic_enumerate(int p, int n, std::uint32_t q_cap) {
  if (!is_prime(p) || n < 1) throw Error("metacyclic_enumerate: need prime p, n >= 1");
  const std::uint64_t q = ipow_u32(p, n);
  if (q > q_cap) throw Error("metacyclic_enumerate: p^n = " + std::to_string(q) + " exceeds cap " + std::to_string(q_cap));
  std::vector<MetacyclicSpec> out;
  std::set<std::vector<std::uint64_t>> seen;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    const std::uint64_t S = (q - 1) / (ipow_u32(p, n / d) - 1);
    for (std::uint64_t m : divisors(q - 1)) {
      for (std::uint64_t k = 0; k < m; ++k) {
        if ((k * S) % m) continue;
        MetacyclicSpec s{p, n, m, d, k};
        auto g = metacyclic_group(s);
        std::vector<std::uint64_t> fp;
        for (const auto& x : g.elements()) fp.push_back(std::uint64_t(x.k) * 64 + x.l);
        std::sort(fp.begin(), fp.end());
        if (seen.insert(std::move(fp)).second) out.push_back(s);
      }
    }
  }
  return out;
}

std::uint64_t metacyclic_canonical_k(const MetacyclicSpec& s) {
  // conjugation by a: k -> k - (p^(n/d) - 1); by b: k -> k p
  const std::uint64_t m = s.m;
  const std::uint64_t step = (ipow_u32(s.p, s.n / s.d) - 1) % m;
  std::vector<bool> seen(m, false);
  std::vector<std::uint64_t> stack{s.k % m};
  seen[s.k % m] = true;
  std::uint64_t best = s.k % m;
  while (!stack.empty()) {
    std::uint64_t x = stack.back();
    stack.pop_back();
    best = std::min(best, x);
    for (std::uint64_t y : {(x + step) % m, (x * s.p) % m}) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return best;
}

bool MetacyclicReport::ok() const {
  if (violations.size() != 2) return false;
  for (const auto& v : violations)
    if (v.V != 4 || v.kGV != 5) return false;
  for (const auto& l : lemmas)
    if (!l.failures.empty()) return false;
  return l5_tight_2212;
}

namespace {

std::vector<std::pair<int, int>> prime_powers_upto(std::uint32_t q_max) {
  std::vector<std::pair<std::uint32_t, std::pair<int, int>>> v;
  for (std::uint32_t q = 2; q <= q_max; ++q)
    if (auto pp = prime_power(q)) v.push_back({q, {static_cast<int>(pp->first), pp->second}});
  std::vector<std::pair<int, int>> out;
  for (auto& x : v) out.push_back(x.second);
  return out;
}

const std::vector<MetacyclicLemma> kLemmas{MetacyclicLemma::d1_case, MetacyclicLemma::l5, MetacyclicLemma::l7,
                                           MetacyclicLemma::l8, MetacyclicLemma::l9};

struct FieldResult {
  std::size_t specs = 0;
  std::vector<MetacyclicViolation> raw;
  std::vector<LemmaCheck> lemmas;
  bool tight = false;
};

FieldResult check_field(int p, int n) {
  FieldResult res;
  for (auto l : kLemmas) res.lemmas.push_back({lemma_name(l), 0, {}});
  const std::uint64_t q = ipow_u32(p, n);
  for (const auto& s : metacyclic_enumerate(p, n)) {
    ++res.specs;
    auto g = metacyclic_group(s);
    const std::uint64_t kG = g.class_count();
    const std::uint64_t kGV = kgv_lgt(g);
    if (kGV > q) res.raw.push_back({s, kGV, q, 1});
    MetacyclicParams mp{static_cast<unsigned long>(p), static_cast<unsigned>(n), static_cast<unsigned long>(s.m),
                        static_cast<unsigned>(s.d)};
    for (std::size_t i = 0; i < kLemmas.size(); ++i) {
      auto lemma = kLemmas[i];
      if (!metacyclic_applicable(lemma, mp)) continue;
      Rational bound = metacyclic_bound(lemma, mp);
      LemmaCheck& lc = res.lemmas[i];
      ++lc.checked;
      bool pass;
      std::string lhs;
      if (lemma == MetacyclicLemma::d1_case) {
        pass = Rational(static_cast<unsigned long>(kGV)) == bound;
        lhs = "k(GV)=" + std::to_string(kGV) + " == ";
      } else if (lemma == MetacyclicLemma::l5) {
        pass = Rational(static_cast<unsigned long>(kG)) <= bound;
        lhs = "k(G)=" + std::to_string(kG) + " <= ";
      } else {
        pass = Rational(static_cast<unsigned long>(kGV)) <= bound;
        lhs = "k(GV)=" + std::to_string(kGV) + " <= ";
      }
      if (!pass) lc.failures.push_back(s.str() + ": " + lhs + bound.get_str());
      if (lemma == MetacyclicLemma::l5 && p == 2 && n == 2 && s.m == 1 && s.d == 2 && kG == 3 && bound == 3) res.tight = true;
    }
  }
  return res;
}

}  // namespace

MetacyclicReport verify_metacyclic_theorem(std::uint32_t q_max, unsigned jobs) {
  if (q_max > 1024) throw Error("verify_metacyclic_theorem: q_max above 1024");
  MetacyclicReport rep;
  rep.q_max = q_max;
  auto fields = prime_powers_upto(q_max);
  std::vector<FieldResult> results(fields.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= fields.size()) return;
      results[i] = check_field(fields[i].first, fields[i].second);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto l : kLemmas) rep.lemmas.push_back({lemma_name(l), 0, {}});
  std::map<std::tuple<int, int, std::uint64_t, int, std::uint64_t>, MetacyclicViolation> classes;
  for (const auto& r : results) {
    rep.specs += r.specs;
    rep.raw_violations += r.raw.size();
    rep.l5_tight_2212 = rep.l5_tight_2212 || r.tight;
    for (std::size_t i = 0; i < r.lemmas.size(); ++i) {
      rep.lemmas[i].checked += r.lemmas[i].checked;
      rep.lemmas[i].failures.insert(rep.lemmas[i].failures.end(), r.lemmas[i].failures.begin(), r.lemmas[i].failures.end());
    }
    for (auto v : r.raw) {
      v.spec.k = metacyclic_canonical_k(v.spec);
      auto key = std::make_tuple(v.spec.p, v.spec.n, v.spec.m, v.spec.d, v.spec.k);
      auto it = classes.find(key);
      if (it == classes.end()) classes.emplace(key, v);
      else ++it->second.instances;
    }
  }
  for (auto& [k, v] : classes) rep.violations.push_back(v);
  return rep;
}

// ---- normalizers ----

FiniteMatrixGroup normalizer_in_gl(const FiniteMatrixGroup& target, std::size_t cap) {
  const int p = target.ops().p, n = target.ops().n;
  const std::uint64_t total = ipow(p, n * n).get_ui();
  if (Integer(ipow(p, n * n)) > static_cast<unsigned long>(cap))
    throw Error("normalizer_in_gl: p^(n^2) = " + ipow(p, n * n).get_str() + " exceeds cap " + std::to_string(cap));
  std::vector<Matrix> members;
  for (std::uint64_t c = 0; c < total; ++c) {
    Matrix g(p, n);
    std::uint64_t x = c;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g.set(i, j, static_cast<int>(x % p));
        x /= p;
      }
    auto gi = g.inverse();
    if (!gi) continue;
    bool ok = true;
    for (const auto& t : target.generators())
      if (!target.contains(g * t * *gi)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(g);
  }
  return FiniteMatrixGroup::from_elements(target.ops(), members);
}

std::vector<Matrix> quaternion_generators(int p) {
  if (p == 2 || !is_prime(p)) throw Error("quaternion_generators: need an odd prime");
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      if ((a * a + b * b + 1) % p == 0)
        return {Matrix::from_rows(p, {{0, 1}, {p - 1, 0}}), Matrix::from_rows(p, {{a, b}, {b, (p - a) % p}})};
  throw Error("quaternion_generators: no solution");
}

std::vector<Matrix> dihedral8_generators(int p) {
  if (p == 2 || !is_prime(p)) throw Error("dihedral8_generators: need an odd prime");
  return {Matrix::from_rows(p, {{0, 1}, {p - 1, 0}}), Matrix::from_rows(p, {{1, 0}, {0, p - 1}})};
}

namespace {

std::size_t max_stabilizer_classes(const FiniteMatrixGroup& h) {
  std::size_t best = 0;
  for (std::uint32_t f : orbit_representatives(h, true)) {
    if (f == 0) continue;
    best = std::max(best, FiniteMatrixGroup::from_elements(h.ops(), dual_stabilizer(h, f)).class_count());
  }
  return best;
}

std::vector<Matrix> sorted_elements(const FiniteMatrixGroup& g) {
  auto v = g.elements();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::vector<A1Rederivation> rederive_a1_r2(const std::vector<int>& primes) {
  std::vector<A1Rederivation> out;
  for (int p : primes) {
    std::vector<std::pair<std::string, std::vector<Matrix>>> rs{{"Q8", quaternion_generators(p)}, {"D8", dihedral8_generators(p)}};
    if ((p - 1) % 4 == 0) {
      auto g = quaternion_generators(p);
      FiniteField F(p, 1);
      int z = static_cast<int>(F.exp((p - 1) / 4));
      g.push_back(Matrix::from_rows(p, {{z, 0}, {0, z}}));
      rs.push_back({"C4oQ8", g});
    }
    for (auto& [name, gens] : rs) {
      A1Rederivation rd;
      rd.p = p;
      rd.R = name;
      auto R = closure(gens, p, 2);
      auto N = normalizer_in_gl(R);
      std::set<std::vector<Matrix>> seen{sorted_elements(R)};
      std::vector<std::vector<Matrix>> queue{R.generators()};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        auto H = closure(queue[i], p, 2);
        ++rd.subgroups;
        rd.max_m = std::max(rd.max_m, max_stabilizer_classes(H));
        std::set<Matrix> covered(H.elements().begin(), H.elements().end());
        for (const auto& x : N.elements()) {
          if (covered.count(x)) continue;
          auto g2 = queue[i];
          g2.push_back(x);
          auto H2 = closure(g2, p, 2);
          for (const auto& y : H2.elements()) covered.insert(y);
          if (seen.insert(sorted_elements(H2)).second) queue.push_back(g2);
        }
      }
      out.push_back(rd);
    }
  }
  return out;
}

// ---- small lemmas ----

bool SmallLemmaReport::ok() const {
  for (const auto& c : checks)
    if (!c.failures.empty() || c.checked == 0) return false;
  return true;
}

namespace {

unsigned least_prime(unsigned d) {
  for (unsigned q = 2; q <= d; ++q)
    if (d % q == 0) return q;
  return d;
}

struct Checks {
  LemmaCheck centralizer{"centralizer", 0, {}};
  LemmaCheck inertia{"inertia", 0, {}};
  LemmaCheck brauer{"brauer", 0, {}};
  LemmaCheck nagao{"nagao", 0, {}};
  LemmaCheck gallagher{"gallagher", 0, {}};
  LemmaCheck sqrt_root{"sqrt_root", 0, {}};
  LemmaCheck lgt_direct{"lgt_direct", 0, {}};
  LemmaCheck a1{"a1_r2_m_le_6", 0, {}};
};

template <class Ops>
void generic_checks(Checks& c, const FiniteGroup<Ops>& g, const std::string& label) {
  auto v = orbit_representatives(g, false).size();
  auto w = orbit_representatives(g, true).size();
  ++c.brauer.checked;
  if (v != w) c.brauer.failures.push_back(label + ": " + std::to_string(v) + " orbits on V, " + std::to_string(w) + " on the dual");
  const std::size_t kG = g.class_count();
  const std::size_t lgt = kgv_lgt(g);
  ++c.nagao.checked;
  if (lgt > kG * g.ops().points()) c.nagao.failures.push_back(label + ": k(GV) > |V| k(G)");
  if (g.order() * g.ops().points() <= default_direct_cap) {
    ++c.lgt_direct.checked;
    std::size_t direct = kgv_direct(g);
    if (direct != lgt) c.lgt_direct.failures.push_back(label + ": lgt " + std::to_string(lgt) + " != direct " + std::to_string(direct));
  }
}

}  // namespace

SmallLemmaReport verify_small_lemmas(std::uint32_t q_max) {
  Checks c;
  for (auto [p, n] : prime_powers_upto(q_max)) {
    const std::uint32_t q = ipow_u32(p, n);
    MetacyclicSpec full{p, n, 1, n, 0};
    auto X = metacyclic_group(full);
    const std::size_t kX = X.class_count();
    for (const auto& s : metacyclic_enumerate(p, n)) {
      auto g = metacyclic_group(s);
      const auto& ops = g.ops();
      const std::string label = s.str();
      generic_checks(c, g, label);
      const std::size_t kG = g.class_count();
      ++c.nagao.checked;
      if (kG > (q - 1) / s.m * s.d) c.nagao.failures.push_back(label + ": k(G) > |S cap G| d");
      ++c.gallagher.checked;
      if (kG * g.order() > X.order() * kX) c.gallagher.failures.push_back(label + ": k(G) > (X:G) k(X)");
      ++c.sqrt_root.checked;
      if (kG * kG > X.order() * kX) c.sqrt_root.failures.push_back(label + ": k(G)^2 > |X| k(X)");
      if (s.d > 1) {
        const unsigned ql = least_prime(s.d);
        for (const auto& x : g.elements()) {
          if (x == ops.identity()) continue;
          std::uint64_t fixed = 0;
          for (std::uint32_t v = 0; v < q; ++v) fixed += ops.act(x, v) == v;
          ++c.centralizer.checked;
          Integer lhs = ipow(Integer(static_cast<unsigned long>(fixed)), ql);
          if (lhs > static_cast<unsigned long>(q))
            c.centralizer.failures.push_back(label + " g=" + ops.str(x) + ": |C_V(g)| = " + std::to_string(fixed));
        }
      }
      for (std::uint32_t f : orbit_representatives(g, true)) {
        if (f == 0) continue;
        auto st = dual_stabilizer(g, f);
        ++c.inertia.checked;
        bool cyclic = false;
        auto H = SemilinearGroup::from_elements(ops, st);
        for (const auto& x : st)
          if (H.element_order(x) == st.size()) cyclic = true;
        if (!cyclic || st.size() > static_cast<std::size_t>(s.d))
          c.inertia.failures.push_back(label + " lambda=" + std::to_string(f) + ": stabilizer of order " + std::to_string(st.size()));
      }
    }
  }
  // explicit matrix instances
  std::vector<std::pair<std::string, FiniteMatrixGroup>> inst;
  inst.emplace_back("GL(2,3)", closure(gl_generators(2, 3), 3, 2));
  inst.emplace_back("SL(2,3)", closure(sl2_generators(3), 3, 2));
  inst.emplace_back("Sp(2,5)", closure(sp_generators(1, 5), 5, 2));
  inst.emplace_back("Sp(4,2)", closure(sp_generators(2, 2), 2, 4));
  inst.emplace_back("Q8<GL(2,3)", closure(quaternion_generators(3), 3, 2));
  for (const auto& [label, g] : inst) generic_checks(c, g, label);
  for (const auto& rd : rederive_a1_r2()) {
    ++c.a1.checked;
    if (rd.max_m > 6) c.a1.failures.push_back("p=" + std::to_string(rd.p) + " R=" + rd.R + ": m = " + std::to_string(rd.max_m));
  }
  SmallLemmaReport rep;
  rep.checks = {c.centralizer, c.inertia, c.brauer, c.nagao, c.gallagher, c.sqrt_root, c.lgt_direct, c.a1};
  return rep;
}

std::vector<Matrix> load_generator_file(const std::string& path, int& p, int& n) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open generator file " + path);
  nlohmann::json j;
  try {
    in >> j;
    p = j.at("p").get<int>();
    n = j.at("n").get<int>();
    std::vector<Matrix> gens;
    for (const auto& g : j.at("generators")) {
      auto rows = g.get<std::vector<std::vector<int>>>();
      if (static_cast<int>(rows.size()) != n) throw Error("generator file: wrong dimension");
      gens.push_back(Matrix::from_rows(p, rows));
      if (!gens.back().inverse()) throw Error("generator file: singular generator " + gens.back().str());
    }
    return gens;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed generator file " + path + ": " + e.what());
  }
}

}  // namespace kgv
