#include "doctest.h"
#include "kgv/partitions.hpp"

#include <set>

using namespace kgv;

namespace {

// transpose by listing the cells (row, col) of the Young diagram
Partition transpose_cells(const Partition& mu) {
  std::vector<int> cols;
  for (std::size_t row = 0; row < mu.length(); ++row)
    for (int col = 0; col < mu.parts()[row]; ++col) {
      if (static_cast<int>(cols.size()) <= col) cols.push_back(0);
      ++cols[col];
    }
  return Partition(cols);
}

// Euler pentagonal recurrence
std::vector<long long> partition_numbers(int N) {
  std::vector<long long> p(N + 1, 0);
  p[0] = 1;
  for (int n = 1; n <= N; ++n) {
    long long s = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > n) break;
      long long sign = (k % 2) ? 1 : -1;
      s += sign * p[n - g1];
      if (g2 <= n) s += sign * p[n - g2];
    }
    p[n] = s;
  }
  return p;
}

}  // namespace

TEST_CASE("partition normalises its parts") {
  Partition p{1, 3, 0, 2, 1};
  CHECK(p.parts() == std::vector<int>{3, 2, 1, 1});
  CHECK(p.size() == 7);
  CHECK(p.multiplicity(1) == 2);
  CHECK(p.multiplicity(4) == 0);
  CHECK(Partition().empty());
}

TEST_CASE("dual examples") {
  CHECK(dual(Partition()) == Partition());
  CHECK(dual(Partition{2, 2}) == Partition{2, 2});
  CHECK(dual(Partition{2, 1, 1}) == transpose_cells(Partition{2, 1, 1}));
  CHECK(dual(Partition{2, 1, 1}) == Partition{3, 1});
}

TEST_CASE("dual agrees with cell transpose and is an involution up to 30") {
  for (int N = 0; N <= 30; ++N)
    for (const auto& mu : enumerate_partitions(N)) {
      REQUIRE(dual(mu) == transpose_cells(mu));
      REQUIRE(dual(dual(mu)) == mu);
    }
}

TEST_CASE("stats examples") {
  auto s = stats(Partition{2, 2});
  CHECK(s.size == 4);
  CHECK(s.odd_parts == 0);
  CHECK(s.n == 2);
  CHECK(s.multiplicities.at(2) == 2);

  s = stats(Partition{2, 1, 1});
  CHECK(s.size == 4);
  CHECK(s.odd_parts == 2);
  CHECK(s.n == 3);
  CHECK(s.multiplicities.at(2) == 1);
  CHECK(s.multiplicities.at(1) == 2);

  s = stats(Partition());
  CHECK(s.size == 0);
  CHECK(s.odd_parts == 0);
  CHECK(s.n == 0);
}

TEST_CASE("n(mu) equals sum (i-1) mu_i up to 30") {
  for (int N = 0; N <= 30; ++N)
    for (const auto& mu : enumerate_partitions(N)) {
      long long other = 0;
      for (std::size_t i = 0; i < mu.length(); ++i) other += static_cast<long long>(i) * mu.parts()[i];
      REQUIRE(stats(mu).n == other);
    }
}

TEST_CASE("enumerate_partitions counts and uniqueness") {
  CHECK(enumerate_partitions(0).size() == 1);
  CHECK(enumerate_partitions(0)[0].empty());
  CHECK(enumerate_partitions(4).size() == 5);
  CHECK(enumerate_partitions(10).size() == 42);
  auto pn = partition_numbers(40);
  for (int N = 0; N <= 40; N += (N < 30 ? 1 : 5)) {
    auto all = enumerate_partitions(N);
    REQUIRE(static_cast<long long>(all.size()) == pn[N]);
    std::set<Partition> uniq(all.begin(), all.end());
    REQUIRE(uniq.size() == all.size());
    for (const auto& mu : all) REQUIRE(mu.size() == N);
  }
  CHECK_THROWS(enumerate_partitions(41));
}

TEST_CASE("validate_signed parity and sign keys") {
  CHECK(validate_signed(FormFamily::symplectic, {Partition{1, 1}, {}}));
  CHECK_FALSE(validate_signed(FormFamily::symplectic, {Partition{1}, {}}));
  CHECK_FALSE(validate_signed(FormFamily::orthogonal, {Partition{2}, {}}));
  // even sizes carry a sign in the symplectic family
  CHECK(validate_signed(FormFamily::symplectic, {Partition{2}, {{2, 1}}}));
  CHECK_FALSE(validate_signed(FormFamily::symplectic, {Partition{2}, {}}));
  CHECK_FALSE(validate_signed(FormFamily::symplectic, {Partition{2}, {{2, 1}, {4, -1}}}));
  CHECK(validate_signed(FormFamily::orthogonal, {Partition{1}, {{1, -1}}}));
}

TEST_CASE("sign_choices enumerates every decoration") {
  // (2,2,1,1): one even size, so two decorations
  CHECK(sign_choices(FormFamily::symplectic, Partition{2, 2, 1, 1}).size() == 2);
  CHECK(sign_choices(FormFamily::symplectic, Partition{4, 2}).size() == 4);
  CHECK(sign_choices(FormFamily::symplectic, Partition{1}).empty());
  for (const auto& sp : sign_choices(FormFamily::orthogonal, Partition{3, 1, 2, 2}))
    CHECK(validate_signed(FormFamily::orthogonal, sp));
}
