#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace kmh;

namespace {

using Table = std::map<CosetLabel, LaurentPoly>;

BLElement combine(const ParahoricAlgebra& P, const Table& t) {
  BLElement out;
  for (const auto& [label, c] : t) out.add(P.coset_sum(P.double_coset(label.lambda, label.w)), c);
  return out;
}

// X_{D1} X_{D2} == P_F * sum a_D X_D
void check_reconstruction(const ParahoricAlgebra& P, const DoubleCoset& d1, const DoubleCoset& d2) {
  const auto& h = P.hecke();
  auto t = P.product(d1, d2);
  CHECK(h.mul(P.coset_sum(d1), P.coset_sum(d2)) == h.scale(combine(P, t), P.poincare()));
}

std::vector<DoubleCoset> cosets(const fx::Setup& s, const ParahoricAlgebra& P, Int r, size_t max_len) {
  std::set<CosetLabel> labels;
  std::vector<DoubleCoset> out;
  std::vector<WId> ws;
  for (const auto& w : std::vector<Word>{{}, {0}, {1}, {0, 1}, {1, 0}})
    if (w.size() <= max_len && std::all_of(w.begin(), w.end(), [&](int i) { return static_cast<size_t>(i) < s.datum->n(); }))
      ws.push_back(fx::wid(s, w));
  Vec lam(s.datum->rank_y(), -r);
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == lam.size()) {
      if (s.weyl->tits_status(lam) != TitsStatus::InTitsCone) return;
      for (WId w : ws) {
        auto d = P.double_coset(lam, w);
        if (labels.insert(d.label).second) out.push_back(d);
      }
      return;
    }
    for (Int x = -r; x <= r; ++x) {
      lam[k] = x;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("face types") {
  CHECK(face_type(*fx::a2().datum, {0}).spherical);
  CHECK_FALSE(face_type(*fx::witness3().datum, {0, 1}).spherical);
  auto iw = face_type(*fx::affine_a1().datum, {});
  CHECK(iw.spherical);
  CHECK(iw.j_pos == std::vector<size_t>{0, 1});
  CHECK_THROWS_WITH(ParahoricAlgebra(fx::affine_a1().hecke, face_type(*fx::affine_a1().datum, {0, 1})),
                    doctest::Contains("NonSpherical"));
}

TEST_CASE("double cosets") {
  auto s = fx::a1();
  ParahoricAlgebra P(s.hecke, face_type(*s.datum, {0}));
  CHECK(P.wf().size() == 2);
  CHECK(P.poincare().to_string(s.hecke->classes().names) == "s0^2 + 1");
  CHECK(P.double_coset({0}, 0).elements.size() == 2);
  auto d = P.double_coset({1}, 0);
  CHECK(d.elements.size() == 4);
  CHECK(d.label.lambda == Vec{1});
  CHECK(P.double_coset({-1}, fx::wid(s, {0})).label == d.label);
  auto aff = fx::affine_a1();
  ParahoricAlgebra I(aff.hecke, face_type(*aff.datum, {}));
  CHECK(I.double_coset(fx::kD, fx::wid(aff, {1})).elements.size() == 1);
  CHECK(I.poincare().is_one());
}

TEST_CASE("identity law and the square of the identity coset") {
  auto s = fx::a1();
  ParahoricAlgebra P(s.hecke, face_type(*s.datum, {0}));
  auto f = P.double_coset({0}, 0);
  auto x = P.coset_sum(f);
  CHECK(s.hecke->mul(x, x) == s.hecke->scale(x, P.poincare()));
  auto ff = P.product(f, f);
  REQUIRE(ff.size() == 1);
  CHECK(ff.begin()->first == f.label);
  CHECK(ff.begin()->second.is_one());
  for (auto [setup, j] : {std::pair{fx::a1(), std::vector<size_t>{0}}, std::pair{fx::affine_a1(), std::vector<size_t>{}},
                          std::pair{fx::affine_a1(), std::vector<size_t>{0}}, std::pair{fx::a2(), std::vector<size_t>{1}}}) {
    ParahoricAlgebra Q(setup.hecke, face_type(*setup.datum, j));
    auto id = Q.double_coset(Vec(setup.datum->rank_y(), 0), 0);
    for (const auto& d : cosets(setup, Q, 1, 2)) {
      Table expect{{d.label, setup.hecke->scalar(1)}};
      CHECK(Q.product(id, d) == expect);
      CHECK(Q.product(d, id) == expect);
    }
  }
}

TEST_CASE("products reconstruct and divide") {
  for (auto [setup, j] : {std::pair{fx::a1(), std::vector<size_t>{0}}, std::pair{fx::affine_a1(), std::vector<size_t>{}},
                          std::pair{fx::affine_a1(), std::vector<size_t>{1}}}) {
    ParahoricAlgebra Q(setup.hecke, face_type(*setup.datum, j));
    auto cs = cosets(setup, Q, 1, 1);
    for (size_t a = 0; a < cs.size(); a += 2)
      for (size_t b = 0; b < cs.size(); b += 3) check_reconstruction(Q, cs[a], cs[b]);
  }
}

TEST_CASE("Iwahori constants are the finite product") {
  auto s = fx::affine_a1();
  ParahoricAlgebra I(s.hecke, face_type(*s.datum, {}));
  const auto& h = *s.hecke;
  auto d1 = I.double_coset(vadd(fx::kD, s.datum->coroot(0)), fx::wid(s, {1}));
  auto d2 = I.double_coset(fx::kD, fx::wid(s, {0}));
  auto prod = h.mul(h.basis(d1.label.lambda, d1.label.w, h.sigma_w(d1.label.w)),
                    h.basis(d2.label.lambda, d2.label.w, h.sigma_w(d2.label.w)));
  auto t = I.product(d1, d2);
  BLElement recon;
  for (const auto& [l, c] : t) recon.add(l.lambda, l.w, c * h.sigma_w(l.w));
  CHECK(recon == prod);
}

TEST_CASE("spherical A1 algebra is commutative") {
  auto s = fx::a1();
  ParahoricAlgebra P(s.hecke, face_type(*s.datum, {0}));
  for (Int a = -3; a <= 3; ++a)
    for (Int b = -3; b <= 3; ++b) {
      auto x = P.double_coset({a}, 0), y = P.double_coset({b}, 0);
      CHECK(P.product(x, y) == P.product(y, x));
    }
  auto d1 = P.double_coset({1}, 0);
  auto sq = P.product(d1, d1);
  const auto& names = s.hecke->classes().names;
  REQUIRE(sq.size() == 3);
  CHECK(sq.at(P.double_coset({0}, 0).label).to_string(names) == "s0^4 + s0^2");
  CHECK(sq.at(d1.label).to_string(names) == "s0*s0' - s0*s0'^-1");
  CHECK(sq.at(P.double_coset({2}, 0).label).to_string(names) == "s0^2");
}

TEST_CASE("parahoric products are associative") {
  auto s = fx::a1();
  ParahoricAlgebra P(s.hecke, face_type(*s.datum, {0}));
  auto apply = [&](const Table& t, const DoubleCoset& d, bool left) {
    Table out;
    for (const auto& [l, c] : t) {
      auto dl = P.double_coset(l.lambda, l.w);
      for (const auto& [m, e] : left ? P.product(d, dl) : P.product(dl, d)) {
        auto& slot = out[m];
        slot = slot.nvars() ? slot + c * e : c * e;
      }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  };
  for (Int a = 0; a <= 2; ++a)
    for (Int b = 0; b <= 2; ++b)
      for (Int c = 0; c <= 1; ++c) {
        auto x = P.double_coset({a}, 0), y = P.double_coset({b}, 0), z = P.double_coset({c}, 0);
        CHECK(apply(P.product(x, y), z, false) == apply(P.product(y, z), x, true));
      }
}

TEST_CASE("tree orbit sizes") {
  const std::vector<std::string> names{"q", "q'"};
  CHECK(tree_orbit_size(1).is_one());
  CHECK(tree_orbit_size(2).to_string(names) == "q'");
  CHECK(tree_orbit_size(4).to_string(names) == "q*q'^2");
  for (unsigned l = 1; l <= 6; ++l) {
    CHECK(tree_orbit_size(l, 2, 2) == BigInt(1) << (l - 1));
    CHECK(tree_orbit_size(l).eval_at({3, 5}) == Rational(tree_orbit_size(l, 3, 5)));
  }
  CHECK(tree_orbit_size(5, 3, 5) == 5 * 3 * 5 * 3);
}

TEST_CASE("non-spherical failure stream") {
  auto s = fx::witness3();
  auto fs = nonspherical_failure_stream(*s.weyl, {0, 1}, 3);
  CHECK(fs.witness.w.word == Word{2});
  REQUIRE(fs.elements.size() == 3);
  CHECK(fs.elements[0].wf.length() == 0);
  CHECK(fs.elements[0].point == fs.witness.image);
  std::set<Vec> pts;
  for (const auto& e : fs.elements) {
    CHECK(e.verified);
    pts.insert(e.point);
  }
  CHECK(pts.size() == 3);
  CHECK(nonspherical_failure_stream(*s.weyl, {0, 1}, 1).elements.size() == 1);
  CHECK_THROWS_WITH(nonspherical_failure_stream(*s.weyl, {2}, 3), doctest::Contains("FaceIsSpherical"));
}

TEST_CASE("coset sums are bi-invariant") {
  for (auto [setup, j] : {std::pair{fx::a2(), std::vector<size_t>{1}}, std::pair{fx::affine_a1(), std::vector<size_t>{0}}}) {
    ParahoricAlgebra Q(setup.hecke, face_type(*setup.datum, j));
    const auto& h = *setup.hecke;
    for (const auto& d : cosets(setup, Q, 1, 1)) {
      auto x = Q.coset_sum(d);
      for (size_t i : j) {
        auto ti = h.H(Word{static_cast<int>(i)});
        auto sig = h.sigma_w(fx::wid(setup, {static_cast<int>(i)}));
        CHECK(h.scale(h.mul(ti, x), sig) == h.scale(x, sig.pow(2)));
        CHECK(h.scale(h.mul(x, ti), sig) == h.scale(x, sig.pow(2)));
      }
    }
  }
}
