#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kmhecke/hecke_bl.hpp"

namespace kmh {

// {lambda : lambda <= g - q for some generator g, q in Q^vee_+, h(q) <= height},
// intersected with Y^+ when positive_only is set.
struct Region {
  std::vector<Vec> gens;
  Int height = 0;
  bool positive_only = true;
};

// supp lies in the union of (g - Q^vee_+) over gens; when `saturated` is present
// every support point also has lambda^{++} <= some kappa; supp_W lies in wpart.
struct AFCertificate {
  std::vector<Vec> gens;
  std::optional<std::vector<Vec>> saturated;
  std::vector<WId> wpart{WeylGroup::kIdentity};
};

// Coefficients exact on `region` (everywhere when `complete`).
struct TruncatedElement {
  Region region;
  AFCertificate cert;
  BLElement coeffs;
  bool complete = false;
};

struct SourceRegions {
  Region a, b;
};

using EFunction = std::map<Vec, LaurentPoly>;

enum class CenterVerdict { Central, NotCentral, Inconclusive };
const char* verdict_name(CenterVerdict v);

struct CenterResult {
  CenterVerdict verdict = CenterVerdict::Inconclusive;
  std::string probe;     // witness probe for NotCentral
  Vec lambda;            // witness coordinate
  WId w = WeylGroup::kIdentity;
  LaurentPoly left, right;  // a*x and x*a at the coordinate
  Int verified_height = -1;
  std::string detail;
};

class CompletedAlgebra {
 public:
  explicit CompletedAlgebra(HeckePtr hecke, size_t tits_budget = kDefaultTitsBudget);

  const HeckeAlgebra& hecke() const { return *hecke_; }
  const WeylGroup& weyl() const { return hecke_->weyl(); }
  const RootDatum& datum() const { return hecke_->datum(); }

  // Sorted enumeration. Throws TitsConeUndecided.
  std::vector<Vec> region_enumerate(const Region& r) const;
  bool in_region(const Region& r, const Vec& lambda) const;
  bool in_tits_cone(const Vec& lambda) const;

  TruncatedElement from_finite(const BLElement& x) const;
  // Restriction of a finite element to a region, keeping its global certificate.
  TruncatedElement truncate(const BLElement& x, const Region& r) const;

  SourceRegions compute_source_region(const Region& target, const AFCertificate& a, const AFCertificate& b,
                                      size_t u_cap) const;
  AFCertificate product_certificate(const AFCertificate& a, const AFCertificate& b) const;

  // Exact coefficients of a*b on target. Throws InsufficientSource, CapExceeded, UnsaturatedCertificate.
  TruncatedElement mul(const TruncatedElement& a, const TruncatedElement& b, const Region& target,
                       size_t u_cap) const;
  TruncatedElement mul_serial(const TruncatedElement& a, const TruncatedElement& b, const Region& target,
                              size_t u_cap) const;

  TruncatedElement act_left(const Vec& mu, const TruncatedElement& a) const;
  TruncatedElement act_right(const Vec& mu, const TruncatedElement& a, const Region& target, size_t u_cap) const;

  // Throws NotDominant.
  TruncatedElement e_function_expand(const EFunction& f, const Region& target) const;

  // Probes: H_i for all i and Z^mu for mu in probe_mus (defaults to the region generators).
  CenterResult center_test(const TruncatedElement& a, const std::optional<std::vector<Vec>>& probe_mus,
                           size_t u_cap) const;

  // Membership of lambda in Y^f + Y^inf_in. Throws TitsConeUndecided, NotInTitsCone.
  bool center_of_H_classify(const Vec& lambda) const;

 private:
  struct Plan;
  Plan make_plan(const Region& target, const TruncatedElement* a, const TruncatedElement* b,
                 const AFCertificate& ca, const AFCertificate& cb, size_t u_cap) const;
  std::vector<Vec> mu_candidates(const Vec& nu, WId u, const TruncatedElement* b, const AFCertificate& cb) const;
  TruncatedElement mul_impl(const TruncatedElement& a, const TruncatedElement& b, const Region& target,
                            size_t u_cap, bool parallel) const;
  std::optional<Int> drop_below(const std::vector<Vec>& gens, const Vec& lambda) const;
  bool coefficient_known(const TruncatedElement& a, const Vec& lambda) const;

  HeckePtr hecke_;
  size_t budget_;
};

}  // namespace kmh
