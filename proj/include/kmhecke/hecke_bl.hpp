#pragma once

#include <map>
#include <memory>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kmhecke/coeff_ring.hpp"
#include "kmhecke/weyl.hpp"

namespace kmh {

using BLKey = std::pair<Vec, WId>;  // Z^lambda H_w

// Finite combination sum a_{lambda,w} Z^lambda H_w with no zero coefficients.
struct BLElement {
  std::map<BLKey, LaurentPoly> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const Vec& lambda, WId w, const LaurentPoly& c);
  void add(const BLElement& o, const LaurentPoly& c);
  void add(const BLElement& o);
  LaurentPoly coeff(const Vec& lambda, WId w) const;
  bool operator==(const BLElement& o) const { return terms == o.terms; }
  bool operator!=(const BLElement& o) const { return !(*this == o); }
};

class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(WeylPtr weyl);

  const WeylGroup& weyl() const { return *weyl_; }
  const WeylPtr& weyl_ptr() const { return weyl_; }
  const RootDatum& datum() const { return weyl_->datum(); }
  const ParamClasses& classes() const { return classes_; }
  size_t nvars() const { return classes_.count(); }

  LaurentPoly scalar(const BigInt& c) const { return LaurentPoly::constant(nvars(), c); }
  BLElement zero() const { return {}; }
  BLElement one() const { return basis(Vec(datum().rank_y(), 0), WeylGroup::kIdentity); }
  BLElement basis(const Vec& lambda, WId w) const;
  BLElement basis(const Vec& lambda, WId w, const LaurentPoly& c) const;
  BLElement Z(const Vec& lambda) const { return basis(lambda, WeylGroup::kIdentity); }
  BLElement H(WId w) const { return basis(Vec(datum().rank_y(), 0), w); }
  BLElement H(const Word& word) const { return H(weyl_->id_of(weyl_->from_word(word))); }

  // H_i * Z^nu in the basis, from the defining commutation relation by exact division.
  BLElement commute(size_t i, const Vec& nu) const;
  // H_i * a.
  BLElement apply_Hi(size_t i, const BLElement& a) const;
  // H_u * Z^mu H_v (memoized, thread-safe).
  BLElement basis_product(WId u, const Vec& mu, WId v) const;
  struct BasisQuery {
    WId u;
    Vec mu;
    WId v;
  };
  // Batched basis products; the serial form is the reference.
  std::vector<BLElement> basis_product_batch(const std::vector<BasisQuery>& qs) const;
  std::vector<BLElement> basis_product_batch_serial(const std::vector<BasisQuery>& qs) const;
  BLElement mul(const BLElement& a, const BLElement& b) const;
  BLElement scale(const BLElement& a, const LaurentPoly& c) const;
  // Z^mu * a.
  BLElement shift(const Vec& mu, const BLElement& a) const;

  // R_w(lambda) over all reduced words of w.
  std::set<Vec> r_window(WId w, const Vec& lambda) const;
  static void r_segment(const RootDatum& d, size_t i, const Vec& lambda, std::set<Vec>& out);

  // Throws TitsConeUndecided.
  bool is_in_H(const BLElement& a, size_t budget = kDefaultTitsBudget) const;

  // Product of sigma_i along a reduced word of w.
  LaurentPoly sigma_w(WId w) const;

  std::string to_string(const BLElement& a) const;
  // Terms sorted by (lambda, reduced word).
  std::vector<std::pair<BLKey, LaurentPoly>> sorted_terms(const BLElement& a) const;

 private:
  WeylPtr weyl_;
  ParamClasses classes_;

  struct KeyHash {
    size_t operator()(const std::pair<std::pair<WId, WId>, Vec>& k) const noexcept {
      return VecHash{}(k.second) ^ (std::hash<uint64_t>{}((uint64_t(k.first.first) << 32) | k.first.second) * 31);
    }
  };
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::pair<std::pair<WId, WId>, Vec>, BLElement, KeyHash> cache_;
};

using HeckePtr = std::shared_ptr<const HeckeAlgebra>;

}  // namespace kmh
