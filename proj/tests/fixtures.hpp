#pragma once

#include <memory>
#include <optional>
#include <random>

#include "kmhecke/completed.hpp"
#include "kmhecke/parahoric.hpp"

namespace fx {

using namespace kmh;

struct Setup {
  DatumPtr datum;
  WeylPtr weyl;
  HeckePtr hecke;
};

inline Setup make(const Mat& a, const std::optional<RealizationData>& r = std::nullopt) {
  Setup s;
  s.datum = std::make_shared<const RootDatum>(build_realization(validate_gcm(a), r));
  s.weyl = std::make_shared<const WeylGroup>(s.datum);
  s.hecke = std::make_shared<const HeckeAlgebra>(s.weyl);
  return s;
}

// A1 with Y = Z alpha^vee.
inline Setup a1() { return make({{2}}); }
// A2 with Y = Q^vee.
inline Setup a2() { return make({{2, -1}, {-1, 2}}, RealizationData{2, {{1, 0}, {0, 1}}, {{2, -1}, {-1, 2}}}); }
// Affine A1, default realization of rank 3: c = (1,1,0), d = (0,0,1).
inline Setup affine_a1() { return make({{2, -2}, {-2, 2}}); }
// Affine A1 with both simple roots primitive on Y.
inline Setup affine_a1_primitive() {
  return make({{2, -2}, {-2, 2}}, RealizationData{3, {{1, 0, 0}, {0, 1, 0}}, {{2, -2, 1}, {-2, 2, 1}}});
}
// 3x3 with an affine sub-diagram on {0,1}, Y = Q^vee.
inline Setup witness3() {
  return make({{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}},
              RealizationData{3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{2, -2, 0}, {-2, 2, -1}, {0, -1, 2}}});
}
// Indefinite block {0,2} plus an isolated A1 on {1}, Y = Q^vee.
inline Setup mixed3() {
  return make({{2, 0, -2}, {0, 2, 0}, {-5, 0, 2}},
              RealizationData{3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{2, 0, -5}, {0, 2, 0}, {-2, 0, 2}}});
}

inline const Vec kC{1, 1, 0};
inline const Vec kD{0, 0, 1};

inline WId wid(const Setup& s, const Word& w) { return s.weyl->id_of(s.weyl->from_word(w)); }

inline LaurentPoly one(const Setup& s) { return s.hecke->scalar(1); }

// Random finite BL element: support <= 3, |lambda|_inf <= lam, words of length <= len.
inline BLElement random_element(const Setup& s, std::mt19937& rng, Int lam, size_t len, bool positive_only = false) {
  std::uniform_int_distribution<Int> coord(-lam, lam);
  std::uniform_int_distribution<size_t> nterms(1, 3), wl(0, len), letter(0, s.datum->n() - 1);
  std::uniform_int_distribution<int> cf(-2, 2), ex(-1, 1);
  BLElement e;
  size_t k = nterms(rng);
  while (e.terms.size() < k) {
    Vec l(s.datum->rank_y());
    for (auto& x : l) x = coord(rng);
    if (positive_only && s.weyl->tits_status(l) != TitsStatus::InTitsCone) continue;
    Word w;
    for (size_t t = wl(rng); t > 0; --t) w.push_back(static_cast<int>(letter(rng)));
    Exponent expo(s.hecke->nvars(), 0);
    for (auto& x : expo) x = ex(rng);
    int c = cf(rng);
    if (c == 0) c = 1;
    e.add(l, wid(s, w), LaurentPoly::monomial(s.hecke->nvars(), expo, c));
  }
  return e;
}

}  // namespace fx
