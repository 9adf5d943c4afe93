#include "doctest.h"
#include "kgv/brute_force.hpp"

#include <fstream>
#include <set>

using namespace kgv;

namespace {

// class count by conjugating every element by every element
template <class Ops>
std::size_t classes_all_pairs(const FiniteGroup<Ops>& g) {
  const auto& ops = g.ops();
  std::vector<bool> seen(g.order(), false);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    ++k;
    for (const auto& h : g.elements()) seen[g.index_of(ops.mul(ops.mul(ops.inv(h), g.elements()[i]), h))] = true;
  }
  return k;
}

// Burnside: orbits = average number of fixed points
template <class Ops>
std::size_t burnside(const FiniteGroup<Ops>& g, bool dual) {
  std::size_t fixed = 0;
  for (const auto& x : g.elements())
    for (std::uint32_t v = 0; v < g.ops().points(); ++v) fixed += (dual ? g.ops().act_dual(x, v) : g.ops().act(x, v)) == v;
  return fixed / g.order();
}

}  // namespace

TEST_CASE("matrix arithmetic") {
  Matrix a = Matrix::from_rows(3, {{1, 2}, {0, 1}});
  Matrix b = Matrix::from_rows(3, {{2, 0}, {1, 1}});
  CHECK((a * b).rows() == std::vector<std::vector<int>>{{1, 2}, {1, 1}});
  CHECK((a + b).rows() == std::vector<std::vector<int>>{{0, 2}, {1, 2}});
  CHECK((a - b).rows() == std::vector<std::vector<int>>{{2, 2}, {2, 0}});
  CHECK(a.transpose()(1, 0) == 2);
  REQUIRE(a.inverse());
  CHECK((a * *a.inverse()).is_identity());
  CHECK(Matrix::from_rows(3, {{1, 2}, {2, 1}}).rank() == 1);
  CHECK_FALSE(Matrix::from_rows(3, {{1, 2}, {2, 1}}).inverse());
  // v = e_1 is coded 1, e_2 is coded 3
  CHECK(a.apply(3) == vec_code({2, 1}, 3));
  CHECK(a.apply_row(1) == vec_code({1, 2}, 3));
  Matrix big = Matrix::Identity(2, 16);
  big.set(0, 15, 1);
  CHECK(big(0, 15) == 1);
  CHECK((big * big).is_identity());
}

TEST_CASE("closure examples") {
  CHECK(closure(sl2_generators(3), 3, 2).order() == 24);
  CHECK(closure({}, 3, 2).order() == 1);
  CHECK(closure(gl_generators(2, 3), 3, 2).order() == 48);
  CHECK(closure(sp_generators(2, 3), 3, 4).order() == 51840);
  CHECK_THROWS(closure(gl_generators(2, 5), 5, 2, 100));
}

TEST_CASE("class counts") {
  auto sl23 = closure(sl2_generators(3), 3, 2);
  CHECK(sl23.class_count() == 7);
  CHECK(classes_all_pairs(sl23) == 7);
  std::size_t total = 0;
  for (const auto& c : sl23.classes()) total += c.size;
  CHECK(total == 24);
  auto gl22 = closure(gl_generators(2, 2), 2, 2);
  CHECK(gl22.order() == 6);
  std::multiset<std::size_t> sizes;
  for (const auto& c : gl22.classes()) sizes.insert(c.size);
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
  // abelian: diagonal matrices over F_5
  auto diag = closure({Matrix::from_rows(5, {{2, 0}, {0, 1}}), Matrix::from_rows(5, {{1, 0}, {0, 3}})}, 5, 2);
  CHECK(diag.order() == 16);
  CHECK(diag.class_count() == 16);
  for (auto g : {closure(gl_generators(2, 3), 3, 2), closure(sp_generators(2, 2), 2, 4)})
    CHECK(g.class_count() == classes_all_pairs(g));
}

TEST_CASE("k(GV)") {
  auto triv = closure({}, 3, 2);
  CHECK(kgv_count(triv, KgvMethod::lgt) == 9);
  CHECK(kgv_count(triv, KgvMethod::direct) == 9);
  auto gl23 = closure(gl_generators(2, 3), 3, 2);
  CHECK(kgv_count(gl23, KgvMethod::lgt) == 11);
  CHECK(kgv_count(gl23, KgvMethod::direct) == 11);
  SemilinearGroup gamma(SemilinearOps(2, 2), {Semilinear{1, 0}, Semilinear{0, 1}});
  CHECK(gamma.order() == 6);
  CHECK(kgv_count(gamma, KgvMethod::lgt) == 5);
  CHECK(kgv_count(gamma, KgvMethod::direct) == 5);
  CHECK_THROWS(kgv_count(closure(sp_generators(2, 3), 3, 4), KgvMethod::direct));
  for (auto g : {closure(sl2_generators(3), 3, 2), closure(sl2_generators(5), 5, 2), closure(gl_generators(3, 2), 2, 3)})
    CHECK(kgv_count(g, KgvMethod::lgt) == kgv_count(g, KgvMethod::direct));
}

TEST_CASE("orbit counts on V and on the dual agree") {
  for (auto g : {closure(sl2_generators(3), 3, 2), closure(gl_generators(3, 2), 2, 3),
                 closure({Matrix::from_rows(3, {{1, 1}, {0, 1}})}, 3, 2)}) {
    auto v = orbit_representatives(g, false).size();
    auto d = orbit_representatives(g, true).size();
    CHECK(v == d);
    CHECK(v == burnside(g, false));
    CHECK(d == burnside(g, true));
  }
}

TEST_CASE("jordan_class_datum") {
  int p = 3;
  auto tm1 = linear_poly(p, 1), tp1 = linear_poly(p, p - 1);
  CHECK(jordan_class_datum(Matrix::Identity(3, 2)) == GlDatum{{tm1, Partition{1, 1}}});
  CHECK(jordan_class_datum(Matrix::from_rows(3, {{2, 0}, {0, 2}})) == GlDatum{{tp1, Partition{1, 1}}});
  CHECK(jordan_class_datum(transvection({1, 0, 0, 0}, 2)) == GlDatum{{linear_poly(2, 1), Partition{2, 1, 1}}});
  CHECK(jordan_class_datum(unipotent_jordan(3, {3, 1})) == GlDatum{{tm1, Partition{3, 1}}});
  // companion of t^2 + 1
  CHECK(jordan_class_datum(Matrix::from_rows(3, {{0, 2}, {1, 0}})) == GlDatum{{MonicPoly(3, {1, 0, 1}), Partition{1}}});
}

TEST_CASE("census of Sp(4,2) and Sp(4,3)") {
  auto g = closure(sp_generators(2, 2), 2, 4);
  auto h = type_histogram(g, symplectic_form(2, 2));
  CHECK(h.total() == 720);
  auto t1 = linear_poly(2, 1);
  CHECK(h.counts.at({{t1, Partition{2, 1, 1}}}) == 15);
  CHECK(h.counts.at({{t1, Partition{2, 2}}}) == 60);
  CHECK(h.totally_singular.at({{t1, Partition{2, 2}}}) <= 128);
  // transvections: (x-1)v = B(v,u)u, so B(v,(x-1)v) = B(v,u)^2 is not always 0
  CHECK(h.totally_singular.count({{t1, Partition{2, 1, 1}}}) == 0);

  auto g3 = closure(sp_generators(2, 3), 3, 4);
  auto h3 = type_histogram(g3);
  CHECK(h3.total() == 51840);
  GlDatum split{{linear_poly(3, 1), Partition{1, 1}}, {linear_poly(3, 2), Partition{1, 1}}};
  CHECK(h3.counts.at(split) == 51840 / (24 * 24));
}

TEST_CASE("cyclic orbits") {
  CHECK(cyclic_orbit_count(unipotent_jordan(2, {4})) == 6);
  CHECK(cyclic_orbit_count(unipotent_jordan(2, {1, 1})) == 4);
  CHECK(cyclic_orbit_count(unipotent_jordan(3, {2})) == 5);
}

TEST_CASE("meta-cyclic enumeration") {
  auto e22 = metacyclic_enumerate(2, 2);
  std::set<std::uint64_t> orders;
  for (const auto& s : e22) orders.insert(s.order());
  CHECK(orders.count(6));
  CHECK(orders.count(3));
  CHECK(orders.count(2));
  // subgroups of S_3: 1, three of order 2, one of order 3, S_3
  CHECK(e22.size() == 6);
  CHECK(metacyclic_enumerate(3, 1).size() == 2);
  auto e51 = metacyclic_enumerate(5, 1);
  std::set<std::uint64_t> ms;
  for (const auto& s : e51) ms.insert(s.m);
  CHECK(ms == std::set<std::uint64_t>{1, 2, 4});
  // distinct element sets
  for (auto [p, n] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 4}}) {
    std::set<std::vector<Semilinear>> sets;
    for (const auto& s : metacyclic_enumerate(p, n)) {
      auto els = metacyclic_group(s).elements();
      std::sort(els.begin(), els.end());
      REQUIRE(metacyclic_group(s).order() == s.order());
      sets.insert(els);
    }
    CHECK(sets.size() == metacyclic_enumerate(p, n).size());
  }
}

TEST_CASE("d = 1 specs give k(GV) = (p^n-1)/m + m") {
  for (auto [p, n] : {std::pair{7, 1}, std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 4}, std::pair{13, 1}})
    for (const auto& s : metacyclic_enumerate(p, n)) {
      if (s.d != 1) continue;
      std::uint64_t q = ipow_u32(p, n);
      REQUIRE(kgv_count(metacyclic_group(s), KgvMethod::lgt) == (q - 1) / s.m + s.m);
    }
}

TEST_CASE("meta-cyclic theorem at small q") {
  auto r4 = verify_metacyclic_theorem(4);
  CHECK(r4.violations.size() == 2);
  for (const auto& v : r4.violations) {
    CHECK(v.V == 4);
    CHECK(v.kGV == 5);
  }
  std::set<std::uint64_t> gv;
  for (const auto& v : r4.violations) gv.insert(v.spec.order() * v.V);
  CHECK(gv == std::set<std::uint64_t>{8, 24});
  CHECK(r4.ok());
  auto r3 = verify_metacyclic_theorem(3);
  CHECK(r3.violations.empty());
  CHECK_FALSE(r3.ok());
  auto r64 = verify_metacyclic_theorem(64, 2);
  CHECK(r64.violations.size() == 2);
  CHECK(r64.l5_tight_2212);
  for (const auto& l : r64.lemmas) {
    CAPTURE(l.lemma);
    CHECK(l.checked > 0);
    CHECK(l.failures.empty());
  }
}

TEST_CASE("normalizers") {
  auto q8 = closure(quaternion_generators(3), 3, 2);
  CHECK(q8.order() == 8);
  CHECK(normalizer_in_gl(q8).order() == 48);
  auto scal = closure({Matrix::from_rows(3, {{2, 0}, {0, 2}})}, 3, 2);
  CHECK(normalizer_in_gl(scal).order() == 48);
  auto q85 = closure(quaternion_generators(5), 5, 2);
  CHECK(normalizer_in_gl(q85).order() == 96);
  CHECK(closure(dihedral8_generators(3), 3, 2).order() == 8);
}

TEST_CASE("small lemmas") {
  auto rep = verify_small_lemmas(16);
  CHECK(rep.ok());
  for (const auto& c : rep.checks) {
    CAPTURE(c.lemma);
    CHECK(c.failures.empty());
  }
}

TEST_CASE("generator files") {
  int p = 0, n = 0;
  auto gens = load_generator_file(std::string(KGV_DATA_DIR) + "/agl23.json", p, n);
  CHECK(p == 3);
  CHECK(n == 2);
  auto g = closure(gens, p, n);
  CHECK(g.order() == 48);
  CHECK(kgv_count(g, KgvMethod::lgt) == 11);
  std::string bad = "/tmp/kgv_bad_gens.json";
  std::ofstream(bad) << R"({"p":4,"n":1,"generators":[[[1]]]})";
  CHECK_THROWS(load_generator_file(bad, p, n));
  std::ofstream(bad) << R"({"p":3,"n":2,"generators":[[[1,0],[0,0]]]})";
  CHECK_THROWS(load_generator_file(bad, p, n));
  CHECK_THROWS(load_generator_file("/nonexistent.json", p, n));
}
