#include "doctest.h"
#include "kgv/brute_force.hpp"
#include "kgv/element_counts.hpp"

using namespace kgv;

namespace {

ClassDatum datum(int m, int q, std::initializer_list<std::pair<MonicPoly, SignedPartition>> parts) {
  ClassDatum d;
  d.group = {Family::Sp, m, static_cast<unsigned long>(q)};
  for (const auto& [f, sp] : parts) d.assignment[f] = sp;
  return d;
}

MonicPoly tm1(int r) { return linear_poly(r, 1); }
MonicPoly tp1(int r) { return linear_poly(r, r - 1); }

// direct count over SL(2,p) = Sp(2,p): elements x != I with (x-1)^2 = 0, split by
// whether B(v,(x-1)v) is a square for v outside ker(x-1)
std::pair<long, long> sl2_unipotents_by_square_class(int p) {
  long sq = 0, nsq = 0;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d) {
          if (((a * d - b * c) % p + p) % p != 1) continue;
          int n00 = (a + p - 1) % p, n01 = b, n10 = c, n11 = (d + p - 1) % p;
          if (!n00 && !n01 && !n10 && !n11) continue;
          // N^2 = 0
          if ((n00 * n00 + n01 * n10) % p || (n00 * n01 + n01 * n11) % p || (n10 * n00 + n11 * n10) % p ||
              (n10 * n01 + n11 * n11) % p)
            continue;
          int v0 = 1, v1 = 0;
          if ((n00 * v0 + n01 * v1) % p == 0 && (n10 * v0 + n11 * v1) % p == 0) v0 = 0, v1 = 1;
          int w0 = (n00 * v0 + n01 * v1) % p, w1 = (n10 * v0 + n11 * v1) % p;
          int B = ((v0 * w1 - v1 * w0) % p + p) % p;
          bool square = false;
          for (int s = 1; s < p; ++s) square |= s * s % p == B;
          (square ? sq : nsq)++;
        }
  return {sq, nsq};
}

}  // namespace

TEST_CASE("validate_class_datum examples") {
  CHECK(validate_class_datum(datum(1, 3, {{tp1(3), {Partition{1, 1}, {}}}})));
  CHECK_FALSE(validate_class_datum(datum(1, 3, {{tp1(3), {Partition{1}, {}}}})));
  CHECK_FALSE(validate_class_datum(datum(1, 2, {{tp1(2), {Partition{2}, {{2, 1}}}}})));
  // dimension must add up to 2a
  CHECK_FALSE(validate_class_datum(datum(2, 3, {{tp1(3), {Partition{1, 1}, {}}}})));
  // t is never assigned
  CHECK_FALSE(validate_class_datum(datum(1, 3, {{MonicPoly(3, {0, 1}), {Partition{1, 1}, {}}}})));
}

TEST_CASE("wall_count examples") {
  CHECK(wall_count(datum(1, 3, {{tp1(3), {Partition{1, 1}, {}}}})) == 1);
  auto [sq, nsq] = sl2_unipotents_by_square_class(3);
  CHECK(sq + nsq == 8);
  CHECK(wall_count(datum(1, 3, {{tm1(3), {Partition{2}, {{2, 1}}}}})) == 4);
  CHECK(wall_count(datum(1, 3, {{tm1(3), {Partition{2}, {{2, -1}}}}})) == 4);
  CHECK(sq == 4);
  auto [sq5, nsq5] = sl2_unipotents_by_square_class(5);
  CHECK(wall_count(datum(1, 5, {{tm1(5), {Partition{2}, {{2, 1}}}}})) == sq5);
  CHECK(wall_count(datum(1, 5, {{tm1(5), {Partition{2}, {{2, -1}}}}})) == nsq5);

  // centraliser Sp(2,5) x Sp(2,5)
  Integer want = order_Sp(2, 5) / (order_Sp(1, 5) * order_Sp(1, 5));
  CHECK(want == 650);
  CHECK(wall_count(datum(2, 5, {{tp1(5), {Partition{1, 1}, {}}}, {tm1(5), {Partition{1, 1}, {}}}})) == want);
  CHECK_THROWS(wall_count(datum(1, 3, {{tp1(3), {Partition{1}, {}}}})));
}

TEST_CASE("unitary argument is the half degree") {
  // t^2+1 over F_3 is self-reciprocal: the elements of order 4 in SL(2,3)
  long order4 = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if ((a * d - b * c + 9) % 3 == 1 && (a + d) % 3 == 0) ++order4;
  auto d = datum(1, 3, {{MonicPoly(3, {1, 0, 1}), {Partition{1}, {}}}});
  CHECK(wall_count(d, UnitaryArgument::half_degree) == order4);
  // the other reading is not even integral here
  CHECK_THROWS(wall_count(d, UnitaryArgument::full_degree));
  // Sp(4,2): t^2+t+1 with one block; frozen from the census
  GlDatum gd{{MonicPoly(2, {1, 1, 1}), Partition{1}}, {tp1(2), Partition{1, 1}}};
  auto hist = type_histogram(closure(sp_generators(2, 2), 2, 4));
  CHECK(sp2_datum_count(2, gd) == hist.counts.at(gd));
  GlDatum sq{{MonicPoly(2, {1, 1, 1}), Partition{1, 1}}};
  CHECK(sign_summed_count({Family::Sp, 2, 2}, sq, UnitaryArgument::half_degree) == hist.counts.at(sq));
  CHECK_THROWS(sign_summed_count({Family::Sp, 2, 2}, sq, UnitaryArgument::full_degree));
}

TEST_CASE("fg_unipotent_count examples") {
  CHECK(fg_unipotent_count(2, 2, Partition{2, 1, 1}) == 15);
  CHECK(fg_unipotent_count(2, 2, Partition{2, 2}) == 60);
  CHECK(fg_unipotent_count(2, 2, Partition{3, 1}) == 0);
  CHECK(fg_unipotent_count(2, 2, Partition{1, 1, 1, 1}) == 1);
}

TEST_CASE("unipotent totals match Steinberg's r^(2a^2)") {
  for (int r : {2, 3, 5})
    for (int a = 1; a <= 4; ++a) {
      Integer s = 0;
      for (const auto& mu : enumerate_partitions(2 * a)) s += fg_unipotent_count(a, r, mu);
      REQUIRE(s == ipow(r, 2 * a * a));
    }
}

TEST_CASE("fg count equals the sign sum of Wall counts for r = 3") {
  for (int a : {1, 2})
    for (const auto& mu : enumerate_partitions(2 * a)) {
      GlDatum d{{tm1(3), mu}};
      Integer fg = fg_unipotent_count(a, 3, mu);
      if (sign_choices(FormFamily::symplectic, mu).empty()) {
        CHECK(fg == 0);
        continue;
      }
      CHECK(sign_summed_count({Family::Sp, a, 3}, d) == fg);
    }
}

TEST_CASE("family_count examples") {
  CHECK(family_count(FamilyKind::type_i, {2, 2, 1, 0}) == 60);
  CHECK(family_count(FamilyKind::type_ii, {3, 1, 0, 1}) == 8);
  CHECK(family_count(FamilyKind::type_ii, {3, 1, 1, 0}) == 1);
  CHECK(family_count(FamilyKind::type_iii_iv, {5, 2, 1, 0}) == 650);
  CHECK(family_count(FamilyKind::type_iii_iv, {5, 1, 1, 0}) == 1);
  CHECK(family_count(FamilyKind::type_iii_iv, {7, 1, 1, 0}) == 1);
  CHECK_THROWS(family_count(FamilyKind::type_i, {2, 3, 2, 0}));
  CHECK_THROWS(family_count(FamilyKind::type_ii, {3, 5, 1, 0}));
}

TEST_CASE("type_i is the fg count of (2^(2i),1^(2a-4i))") {
  for (int i = 1; i <= 4; ++i)
    for (int a = 2 * i; a <= 8; ++a) {
      std::vector<int> parts(2 * i, 2);
      parts.resize(2 * i + 2 * a - 4 * i, 1);
      REQUIRE(family_count(FamilyKind::type_i, {2, a, i, 0}) == fg_unipotent_count(a, 2, Partition(parts)));
    }
}

TEST_CASE("type_ii for Sp(4,3) adds to 891") {
  Integer s = 0;
  for (const auto& p : type_ii_params(2)) s += family_count(FamilyKind::type_ii, p);
  CHECK(s == 90 + 1 + 80 + 720);
  // 90 = |Sp(4,3)| / |Sp(2,3)|^2
  CHECK(family_count(FamilyKind::type_ii, {3, 2, 1, 0}) == order_Sp(2, 3) / (order_Sp(1, 3) * order_Sp(1, 3)));
}

TEST_CASE("total_class_sum recovers the group order") {
  CHECK(total_class_sum({Family::Sp, 1, 3}) == 24);
  CHECK(total_class_sum({Family::Sp, 1, 5}) == 120);
  CHECK(total_class_sum({Family::Sp, 1, 7}) == 336);
  CHECK(total_class_sum({Family::Sp, 2, 3}) == 51840);
  CHECK(total_class_sum({Family::Sp, 2, 5}) == order_Sp(2, 5));
}

TEST_CASE("Sp(2a,2) datum counts add up to the order") {
  for (int a : {1, 2, 3}) {
    Integer s = 0;
    for (const auto& d : enumerate_sp_data(a, 2)) s += sp2_datum_count(a, d);
    CHECK(s == order_Sp(a, 2));
  }
}

TEST_CASE("census agreement on small groups") {
  for (int p : {3, 5, 7}) {
    auto g = closure(sp_generators(1, p), p, 2);
    auto h = type_histogram(g);
    CHECK(h.total() == g.order());
    for (const auto& [d, c] : h.counts) REQUIRE(sign_summed_count({Family::Sp, 1, static_cast<unsigned long>(p)}, d) == c);
  }
  auto g = closure(sp_generators(2, 2), 2, 4);
  auto h = type_histogram(g);
  for (const auto& [d, c] : h.counts) REQUIRE(sp2_datum_count(2, d) == c);
  CHECK(h.counts.size() == enumerate_sp_data(2, 2).size());
}

TEST_CASE("table") {
  CountTable t = section3_table();
  CHECK(t.all_pass());
  CHECK(t.at(2, 5, Rational(3, 5)).computed == 651);
  CHECK(t.at(2, 5, Rational(3, 5)).stored == "651");
  CHECK(t.at(1, 3, Rational(2, 3)).computed == 9);
  CHECK(t.at(1, 3, Rational(2, 3)).stored_value == 10);
  CHECK(t.at(2, 3, Rational(2, 3)).computed == 891);
  CHECK(t.at(2, 3, Rational(2, 3)).stored_value == 982);
  CHECK(t.at(1, 5, Rational(3, 5)).computed == 1);
  CHECK(t.at(1, 7, Rational(4, 7)).computed == 1);
  CHECK(t.at(8, 2, Rational(3, 4)).stored == "2^31");
  // the literal j = 0 reading of type_ii lands on the printed entries
  REQUIRE(t.at(1, 3, Rational(2, 3)).literal);
  CHECK(*t.at(1, 3, Rational(2, 3)).literal == 10);
  CHECK(*t.at(2, 3, Rational(2, 3)).literal == 982);

  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      if (t.cells[i][j].kind == TableCell::Kind::entry) REQUIRE(t.cells[i][j].computed <= t.cells[i][j].stored_value);

  CountTable bad = section3_table({{2, 5, Rational(3, 5), "650"}});
  CHECK_FALSE(bad.all_pass());
  CHECK_FALSE(bad.at(2, 5, Rational(3, 5)).verdict);
}

TEST_CASE("table csv follows the row and column order") {
  std::string csv = table_csv(section3_table());
  CHECK(csv.rfind("group,3/7,11/25,1/2", 0) == 0);
  CHECK(csv.find("\"Sp(4,5)\",,*,,,,,,651|651") != std::string::npos);
  CHECK(csv.find("\"Sp(16,2)\"") < csv.find("\"Sp(2,2)\""));
}
