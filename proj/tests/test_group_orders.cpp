#include "doctest.h"
#include "kgv/group_orders.hpp"
#include "kgv/polyfield.hpp"

#include <functional>

using namespace kgv;

namespace {

using Mat = std::vector<std::vector<int>>;

// run f on every n x n matrix over F_p
void each_matrix(int p, int n, const std::function<void(const Mat&)>& f) {
  long total = 1;
  for (int i = 0; i < n * n; ++i) total *= p;
  Mat m(n, std::vector<int>(n));
  for (long code = 0; code < total; ++code) {
    long x = code;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        m[i][j] = static_cast<int>(x % p);
        x /= p;
      }
    f(m);
  }
}

std::vector<int> apply(const Mat& m, const std::vector<int>& v, int p) {
  std::vector<int> out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = (out[i] + m[i][j] * v[j]) % p;
  return out;
}

std::vector<std::vector<int>> all_vectors(int p, int n) {
  std::vector<std::vector<int>> out;
  long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  for (long code = 0; code < total; ++code) {
    std::vector<int> v(n);
    long x = code;
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<int>(x % p);
      x /= p;
    }
    out.push_back(v);
  }
  return out;
}

// a map preserving a non-degenerate form is injective, so invertibility needs a check only for the zero form
long count_preserving(int p, int n, const std::function<int(const std::vector<int>&, const std::vector<int>&)>& form,
                      bool quadratic, const std::function<int(const std::vector<int>&)>& Q = {}) {
  auto vs = all_vectors(p, n);
  long count = 0;
  each_matrix(p, n, [&](const Mat& m) {
    std::vector<std::vector<int>> img;
    for (const auto& v : vs) img.push_back(apply(m, v, p));
    // injective
    std::vector<bool> hit(vs.size(), false);
    for (const auto& w : img) {
      long c = 0, pw = 1;
      for (int x : w) {
        c += x * pw;
        pw *= p;
      }
      if (hit[c]) return;
      hit[c] = true;
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (quadratic) {
        if (Q(img[i]) != Q(vs[i])) return;
      } else {
        for (std::size_t j = 0; j < vs.size(); ++j)
          if (form(img[i], img[j]) != form(vs[i], vs[j])) return;
      }
    }
    ++count;
  });
  return count;
}

int alt_form(const std::vector<int>& u, const std::vector<int>& v, int p) {
  int m = static_cast<int>(u.size()) / 2, s = 0;
  for (int i = 0; i < m; ++i) s += u[i] * v[i + m] - u[i + m] * v[i];
  return ((s % p) + p) % p;
}

}  // namespace

TEST_CASE("spec examples") {
  CHECK(order_Sp(1, 3) == 24);
  CHECK(order_Sp(0, 7) == 1);
  CHECK(classical_order({Family::O_plus_even, 1, 3}) == 4);
  CHECK(classical_order({Family::O_minus_even, 1, 3}) == 8);
  CHECK(classical_order({Family::O_odd, 0, 5}) == 2);
  CHECK(order_GL(0, 3) == 1);
  CHECK(order_U(0, 3) == 1);
}

TEST_CASE("Sp order equals the displayed product for m <= 8") {
  for (unsigned long q : {2ul, 3ul, 5ul, 7ul})
    for (int m = 0; m <= 8; ++m) {
      Integer want = ipow(q, m * m);
      for (int i = 1; i <= m; ++i) want *= ipow(q, 2 * i) - 1;
      REQUIRE(order_Sp(m, q) == want);
    }
}

TEST_CASE("orthogonal orders divide GL orders") {
  for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 9ul})
    for (int m = 1; m <= 5; ++m) {
      Integer gl = order_GL(2 * m, q);
      REQUIRE(gl % order_O(2 * m, 1, q) == 0);
      REQUIRE(gl % order_O(2 * m, -1, q) == 0);
      if (q % 2) REQUIRE(order_GL(2 * m + 1, q) % order_O(2 * m + 1, 1, q) == 0);
      REQUIRE(order_O(2 * m + 1, 1, q) == order_O(2 * m + 1, -1, q));
    }
}

TEST_CASE("brute force: GL and Sp in dimension <= 4") {
  for (int p : {2, 3}) {
    long gl2 = 0;
    each_matrix(p, 2, [&](const Mat& m) { gl2 += ((m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p + p) % p != 0; });
    CHECK(order_GL(2, p) == gl2);
    auto sp = [p](const std::vector<int>& u, const std::vector<int>& v) { return alt_form(u, v, p); };
    CHECK(order_Sp(1, p) == count_preserving(p, 2, sp, false));
  }
  auto sp2 = [](const std::vector<int>& u, const std::vector<int>& v) { return alt_form(u, v, 2); };
  CHECK(order_Sp(2, 2) == count_preserving(2, 4, sp2, false));
}

TEST_CASE("brute force: orthogonal groups") {
  auto none = [](const std::vector<int>&, const std::vector<int>&) { return 0; };
  // F_3: xy and x^2 + y^2 (-1 is a non-square)
  CHECK(order_O(2, 1, 3) == count_preserving(3, 2, none, true, [](const std::vector<int>& v) { return v[0] * v[1] % 3; }));
  CHECK(order_O(2, -1, 3) == count_preserving(3, 2, none, true, [](const std::vector<int>& v) { return (v[0] * v[0] + v[1] * v[1]) % 3; }));
  // F_2: xy and x^2 + xy + y^2
  CHECK(order_O(2, 1, 2) == count_preserving(2, 2, none, true, [](const std::vector<int>& v) { return v[0] * v[1] % 2; }));
  CHECK(order_O(2, -1, 2) ==
        count_preserving(2, 2, none, true, [](const std::vector<int>& v) { return (v[0] + v[0] * v[1] + v[1]) % 2; }));
  CHECK(order_O(4, 1, 2) ==
        count_preserving(2, 4, none, true, [](const std::vector<int>& v) { return (v[0] * v[1] + v[2] * v[3]) % 2; }));
  CHECK(order_O(4, -1, 2) == count_preserving(2, 4, none, true, [](const std::vector<int>& v) {
          return (v[0] * v[1] + v[2] + v[2] * v[3] + v[3]) % 2;
        }));
  CHECK(order_O(3, 1, 3) == count_preserving(3, 3, none, true, [](const std::vector<int>& v) {
          return (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]) % 3;
        }));
  CHECK(order_O(1, 1, 3) == 2);
}

TEST_CASE("brute force: unitary groups over F_4") {
  FiniteField F(2, 2);
  auto conj = [&](std::uint32_t a) { return F.frobenius(a); };
  for (int m : {1, 2}) {
    std::vector<std::uint32_t> e(m * m, 0);
    long total = 1;
    for (int i = 0; i < m * m; ++i) total *= 4;
    long count = 0;
    for (long code = 0; code < total; ++code) {
      long x = code;
      for (auto& c : e) {
        c = static_cast<std::uint32_t>(x % 4);
        x /= 4;
      }
      // M^* M = I with M^* the conjugate transpose
      bool ok = true;
      for (int i = 0; i < m && ok; ++i)
        for (int j = 0; j < m && ok; ++j) {
          std::uint32_t s = 0;
          for (int k = 0; k < m; ++k) s = F.add(s, F.mul(conj(e[k * m + i]), e[k * m + j]));
          ok = s == (i == j ? 1u : 0u);
        }
      count += ok;
    }
    CHECK(order_U(m, 2) == count);
  }
}

TEST_CASE("labels and parsing") {
  CHECK(parse_family("Sp") == Family::Sp);
  CHECK(std::string(family_name(Family::GL)) == "GL");
  CHECK_THROWS(parse_family("nope"));
  GroupLabel g{Family::Sp, 2, 3};
  CHECK(g.dimension() == 4);
  CHECK(g.str() == "Sp(4,3)");
}
