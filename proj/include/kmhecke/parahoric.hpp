#pragma once

#include <map>
#include <vector>

#include "kmhecke/hecke_bl.hpp"

namespace kmh {

struct FaceType {
  std::vector<size_t> j_zero, j_pos;
  bool spherical = true;
};

FaceType face_type(const RootDatum& d, const std::vector<size_t>& j_zero);

// Element tau_lambda w of Y x| W^v.
struct AffineElement {
  Vec lambda;
  WId w = WeylGroup::kIdentity;
  bool operator<(const AffineElement& o) const { return lambda != o.lambda ? lambda < o.lambda : w < o.w; }
  bool operator==(const AffineElement& o) const { return lambda == o.lambda && w == o.w; }
};

struct CosetLabel {
  Int drop = 0;  // h(lambda^{++} - lambda)
  Word word;
  Vec lambda;
  WId w = WeylGroup::kIdentity;
  bool operator<(const CosetLabel& o) const {
    if (drop != o.drop) return drop < o.drop;
    if (word.size() != o.word.size()) return word.size() < o.word.size();
    if (word != o.word) return word < o.word;
    return lambda < o.lambda;
  }
  bool operator==(const CosetLabel& o) const { return lambda == o.lambda && w == o.w; }
};

struct DoubleCoset {
  CosetLabel label;
  std::vector<AffineElement> elements;  // sorted
};

class ParahoricAlgebra {
 public:
  // Throws NonSpherical.
  ParahoricAlgebra(HeckePtr hecke, FaceType face);

  const FaceType& face() const { return face_; }
  const HeckeAlgebra& hecke() const { return *hecke_; }
  const std::vector<WId>& wf() const { return wf_; }

  // Throws NotInTitsCone.
  DoubleCoset double_coset(const Vec& lambda, WId w) const;
  // X_D = e_F * T_{label} * e_F / P(stabilizer), with e_F = sum of T_x over W_F and T_w = sigma_w H_w.
  // Throws NotDivisible.
  BLElement coset_sum(const DoubleCoset& d) const;
  const BLElement& idempotent() const { return e_; }
  const LaurentPoly& poincare() const { return poincare_; }

  // Structure constants of X_{D1} * X_{D2} = P_F * sum a_D X_D. Throws NotDivisible.
  std::map<CosetLabel, LaurentPoly> product(const DoubleCoset& d1, const DoubleCoset& d2) const;

 private:
  HeckePtr hecke_;
  FaceType face_;
  std::vector<WId> wf_;
  LaurentPoly poincare_;
  BLElement e_;
};

// Alternating q' q q' ... with l-1 factors, as a polynomial in (q, q').
LaurentPoly tree_orbit_size(unsigned l);
BigInt tree_orbit_size(unsigned l, const BigInt& q, const BigInt& q_prime);

struct FailureElement {
  WeylElement wf;   // element of W_F
  Vec point;        // wf.w.u
  bool verified = false;
};

struct FailureStream {
  WitnessResult witness;
  std::vector<FailureElement> elements;
};

// Throws FaceIsSpherical, FaceIsMinimal.
FailureStream nonspherical_failure_stream(const WeylGroup& W, const std::vector<size_t>& j_zero, size_t k);

}  // namespace kmh
