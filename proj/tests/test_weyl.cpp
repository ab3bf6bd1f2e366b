#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace kmh;

TEST_CASE("group order and words in A2") {
  auto s = fx::a2();
  CHECK(oracle::group_order(*s.datum, 100) == 6);
  auto w0 = s.weyl->from_word({0, 1, 0});
  CHECK(w0 == s.weyl->from_word({1, 0, 1}));
  CHECK(w0.length() == 3);
  CHECK(w0.word == Word{0, 1, 0});
  auto words = s.weyl->all_reduced_words(w0);
  std::sort(words.begin(), words.end());
  CHECK(words == std::vector<Word>{{0, 1, 0}, {1, 0, 1}});
  CHECK(s.weyl->from_word({0, 0}).length() == 0);
  CHECK(s.weyl->bruhat_interval(w0).size() == 6);
}

TEST_CASE("stored words are reduced and match oracle lengths") {
  for (auto s : {fx::a2(), fx::affine_a1(), fx::witness3()}) {
    auto lens = oracle::lengths_up_to(*s.datum, 5);
    for (const auto& [m, l] : lens) {
      (void)m;
      CHECK(l <= 5);
    }
    for (const auto& w : oracle::all_words(s.datum->n(), 5)) {
      auto e = s.weyl->from_word(w);
      Mat m = oracle::word_matrix(*s.datum, w);
      CHECK(e.y == m);
      CHECK(e.length() == lens.at(m));
      CHECK(oracle::word_matrix(*s.datum, e.word) == m);
    }
  }
}

TEST_CASE("length subadditivity and concatenation") {
  auto s = fx::affine_a1();
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> letter(0, 1), len(0, 6);
  for (int t = 0; t < 300; ++t) {
    Word a, b;
    for (int k = len(rng); k > 0; --k) a.push_back(letter(rng));
    for (int k = len(rng); k > 0; --k) b.push_back(letter(rng));
    auto ea = s.weyl->from_word(a), eb = s.weyl->from_word(b);
    auto ab = s.weyl->multiply(ea, eb);
    CHECK(ab.length() <= ea.length() + eb.length());
    Word cat = ea.word;
    cat.insert(cat.end(), eb.word.begin(), eb.word.end());
    bool reduced = s.weyl->from_word(cat).length() == cat.size();
    CHECK((ab.length() == ea.length() + eb.length()) == reduced);
    CHECK(s.weyl->multiply(ab, s.weyl->inverse(eb)) == ea);
  }
}

TEST_CASE("bruhat order against subword search") {
  for (auto [s, L] : {std::pair{fx::a2(), size_t{5}}, std::pair{fx::affine_a1(), size_t{4}}}) {
    std::vector<WeylElement> elems;
    std::set<Mat> seen;
    for (const auto& w : oracle::all_words(s.datum->n(), L)) {
      auto e = s.weyl->from_word(w);
      if (seen.insert(e.y).second) elems.push_back(e);
    }
    for (const auto& u : elems)
      for (const auto& w : elems) CHECK(s.weyl->bruhat_leq(u, w) == oracle::bruhat_subword(*s.datum, u.y, w.word));
  }
}

TEST_CASE("reduced words of affine elements") {
  auto s = fx::affine_a1();
  auto w = s.weyl->from_word({0, 1, 0, 1});
  CHECK(s.weyl->all_reduced_words(w) == std::vector<Word>{{0, 1, 0, 1}});
  auto t = fx::witness3();
  auto e = t.weyl->from_word({0, 2, 1});
  auto words = t.weyl->all_reduced_words(e);
  std::sort(words.begin(), words.end());
  CHECK(words == std::vector<Word>{{0, 2, 1}, {2, 0, 1}});
  CHECK_THROWS_AS(t.weyl->all_reduced_words(t.weyl->from_word({0, 2, 1, 0, 2}), 1), BudgetExceeded);
}

TEST_CASE("orbits") {
  auto s = fx::a2();
  auto o = s.weyl->orbit_enumerate({1, 1}, OrbitCaps{});
  CHECK(o.complete);
  CHECK(o.points == std::vector<Vec>{{-1, -1}, {-1, 0}, {0, -1}, {0, 1}, {1, 0}, {1, 1}});
  auto aff = fx::affine_a1();
  auto c = aff.weyl->orbit_enumerate(fx::kC, OrbitCaps{});
  CHECK(c.complete);
  CHECK(c.points == std::vector<Vec>{fx::kC});
  OrbitCaps caps;
  caps.max_count = 5;
  auto d = aff.weyl->orbit_enumerate(fx::kD, caps);
  CHECK_FALSE(d.complete);
  CHECK(d.points.size() == 5);
}

TEST_CASE("serial and parallel orbit enumeration agree") {
  auto s = fx::make({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  std::mt19937 rng(5);
  std::uniform_int_distribution<Int> c(-2, 2);
  for (int t = 0; t < 20; ++t) {
    Vec l(s.datum->rank_y());
    for (auto& x : l) x = c(rng);
    OrbitCaps caps;
    caps.max_length = 7;
    caps.max_count = 20000;
    auto a = s.weyl->orbit_enumerate(l, caps);
    auto b = s.weyl->orbit_enumerate_serial(l, caps);
    CHECK(a.points == b.points);
    CHECK(a.complete == b.complete);
  }
}

TEST_CASE("dominant representatives") {
  auto s = fx::a2();
  auto r = s.weyl->dominant_representative({-1, -1});
  CHECK(r.dominant == Vec{1, 1});
  CHECK(r.status == TitsStatus::InTitsCone);
  CHECK(r.minimizer.length() == 3);
  CHECK(s.weyl->act(r.minimizer, Vec{1, 1}) == Vec{-1, -1});
  auto aff = fx::affine_a1();
  CHECK(aff.weyl->tits_status(fx::kD) == TitsStatus::InTitsCone);
  CHECK(aff.weyl->tits_status(vscale(-1, fx::kD)) == TitsStatus::NotInTitsCone);
  CHECK(aff.weyl->tits_status(fx::kC) == TitsStatus::InTitsCone);
  auto m = fx::mixed3();
  CHECK(m.weyl->tits_status({-1, 0, -1}) == TitsStatus::InTitsCone);
  CHECK(m.weyl->tits_status({1, 0, 1}) != TitsStatus::InTitsCone);
}

TEST_CASE("dominance bound on orbit points") {
  for (auto s : {fx::a2(), fx::affine_a1(), fx::witness3(), fx::mixed3()}) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<Int> c(-2, 2);
    for (int t = 0; t < 25; ++t) {
      Vec l(s.datum->rank_y());
      for (auto& x : l) x = c(rng);
      auto r = s.weyl->dominant_representative(l, 200);
      if (r.status != TitsStatus::InTitsCone) continue;
      OrbitCaps caps;
      caps.max_length = 6;
      caps.max_count = 2000;
      for (const auto& p : s.weyl->orbit_enumerate(l, caps).points)
        CHECK(dominance_leq(*s.datum, p, r.dominant));
    }
  }
}

TEST_CASE("dominant of a sum is bounded by the sum of dominants") {
  auto s = fx::affine_a1();
  std::mt19937 rng(23);
  std::uniform_int_distribution<Int> c(-3, 3);
  int tested = 0;
  for (int t = 0; t < 200; ++t) {
    Vec l{c(rng), c(rng), c(rng)}, m{c(rng), c(rng), c(rng)};
    if (s.weyl->tits_status(l) != TitsStatus::InTitsCone || s.weyl->tits_status(m) != TitsStatus::InTitsCone)
      continue;
    auto lm = s.weyl->dominant_representative(vadd(l, m)).dominant;
    auto bound = vadd(s.weyl->dominant_representative(l).dominant, s.weyl->dominant_representative(m).dominant);
    CHECK(dominance_leq(*s.datum, lm, bound));
    ++tested;
  }
  CHECK(tested > 20);
}

TEST_CASE("finite orbit test") {
  auto s = fx::a2();
  CHECK(s.weyl->orbit_is_finite({2, 1}));
  auto aff = fx::affine_a1();
  CHECK(aff.weyl->orbit_is_finite(fx::kC));
  CHECK_FALSE(aff.weyl->orbit_is_finite(fx::kD));
  for (Int cap : {8, 16, 32}) {
    OrbitCaps caps;
    caps.max_count = static_cast<size_t>(cap);
    CHECK_FALSE(aff.weyl->orbit_enumerate(fx::kD, caps).complete);
  }
  CHECK_THROWS(aff.weyl->orbit_is_finite(vscale(-1, fx::kD)));
}

TEST_CASE("matrix equality matches word normal forms") {
  auto s = fx::witness3();
  std::map<Mat, Word> nf;
  for (const auto& w : oracle::all_words(3, 4)) {
    auto e = s.weyl->from_word(w);
    auto [it, fresh] = nf.emplace(e.y, e.word);
    if (!fresh) CHECK(it->second == e.word);
  }
}

TEST_CASE("infinite orbit witness") {
  auto s = fx::witness3();
  auto r = infinite_orbit_witness(*s.weyl, {0, 1}, Vec{-1, -1, 0});
  CHECK(r.k == 2);
  CHECK(r.w.word == Word{2});
  CHECK(r.image == Vec{-1, -1, -1});
  OrbitCaps caps;
  caps.generators = {0, 1};
  caps.max_count = 200;
  CHECK_FALSE(s.weyl->orbit_enumerate(r.image, caps).complete);
  CHECK_FALSE(s.weyl->orbit_enumerate(s.datum->coroot(2), caps).complete);
  auto u = face_point(*s.datum, {0, 1});
  CHECK(s.datum->pair(0, u) == 0);
  CHECK(s.datum->pair(1, u) == 0);
  CHECK(s.datum->pair(2, u) > 0);
  CHECK_NOTHROW(infinite_orbit_witness(*s.weyl, {0, 1}));
  try {
    infinite_orbit_witness(*fx::a2().weyl, {0});
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(e.name() == "FaceIsSpherical");
  }
  try {
    infinite_orbit_witness(*fx::affine_a1().weyl, {0, 1});
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(e.name() == "FaceIsMinimal");
  }
}
