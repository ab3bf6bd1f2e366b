#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "kmhecke/json_io.hpp"

using namespace kmh;

TEST_CASE("polynomials round-trip") {
  auto s = LaurentPoly::var(2, 0, 2) - LaurentPoly::var(2, 1, -3).scaled(7) + LaurentPoly::constant(2, 1);
  Json j = poly_to_json(s);
  CHECK(poly_from_json(j, 2) == s);
  CHECK(poly_from_json(Json(5), 2) == LaurentPoly::constant(2, 5));
  CHECK(poly_to_json(LaurentPoly::sigma_diff(1, 0)).dump() == "[[[-1],-1],[[1],1]]");
}

TEST_CASE("root data round-trip") {
  for (auto s : {fx::a2(), fx::affine_a1(), fx::mixed3()}) {
    Json j = datum_to_json(*s.datum);
    RootDatum back = datum_from_json(j);
    CHECK(back.rank_y() == s.datum->rank_y());
    CHECK(back.data().coroots == s.datum->data().coroots);
    CHECK(back.data().roots == s.datum->data().roots);
  }
  RootDatum d = datum_from_json(read_json_text(R"({"gcm": [[2, -2], [-2, 2]]})"));
  CHECK(d.rank_y() == 3);
  std::vector<std::string> keys;
  Json dj = datum_to_json(d);
  for (auto it = dj.begin(); it != dj.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"gcm", "rank_y", "coroots", "roots"});
}

TEST_CASE("BL elements round-trip") {
  auto s = fx::affine_a1();
  std::mt19937 rng(67);
  for (int t = 0; t < 30; ++t) {
    auto x = fx::random_element(s, rng, 3, 3);
    CHECK(bl_from_json(*s.hecke, bl_to_json(*s.hecke, x)) == x);
  }
  auto a2 = fx::a2();
  auto one = bl_to_json(*a2.hecke, a2.hecke->one());
  CHECK(one.dump() == R"([{"lambda":[0,0],"word":[],"coeff":[[[0],1]]}])");
}

TEST_CASE("truncated elements round-trip") {
  auto s = fx::affine_a1();
  CompletedAlgebra C(s.hecke);
  BLElement x = s.hecke->mul(s.hecke->H(Word{0}), s.hecke->Z(fx::kD));
  auto t = C.truncate(x, Region{{fx::kD}, 2, true});
  auto back = truncated_from_json(C, truncated_to_json(*s.hecke, t));
  CHECK(back.coeffs == t.coeffs);
  CHECK(back.region.gens == t.region.gens);
  CHECK(back.region.height == t.region.height);
  CHECK(back.cert.gens == t.cert.gens);
  CHECK(back.cert.saturated == t.cert.saturated);
  CHECK(back.cert.wpart == t.cert.wpart);
  CHECK(back.complete == t.complete);
  auto fin = truncated_from_json(C, bl_to_json(*s.hecke, x));
  CHECK(fin.complete);
  CHECK(fin.coeffs == x);
}

TEST_CASE("malformed input is a parse error") {
  auto name = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const DomainError& e) {
      return e.name();
    }
    return std::string();
  };
  CHECK(name([] { read_json_text("{oops"); }) == "ParseError");
  CHECK(name([] { vec_from_json(Json::parse("[1, \"x\"]")); }) == "ParseError");
  CHECK(name([] { mat_from_json(Json::parse("[[1, 2], 3]")); }) == "ParseError");
  CHECK(name([] { datum_from_json(Json::parse("{\"rank_y\": 2}")); }) == "ParseError");
  auto s = fx::a2();
  CHECK(name([&] { bl_from_json(*s.hecke, Json::parse(R"([{"lambda":[0],"word":[],"coeff":1}])")); }) == "ParseError");
}
