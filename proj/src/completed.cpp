#include "kmhecke/completed.hpp"

#include <algorithm>
#include <functional>

#include "kmhecke/errors.hpp"
#include "kmhecke/linalg.hpp"

namespace kmh {

const char* verdict_name(CenterVerdict v) {
  switch (v) {
    case CenterVerdict::Central:
      return "Central";
    case CenterVerdict::NotCentral:
      return "NotCentral";
    default:
      return "Inconclusive";
  }
}

namespace {

// All q >= 0 in Z^n with sum(q) <= budget.
void for_each_bounded(size_t n, Int budget, const std::function<void(const Vec&)>& fn) {
  Vec q(n, 0);
  std::function<void(size_t, Int)> rec = [&](size_t k, Int left) {
    if (k == n) {
      fn(q);
      return;
    }
    for (Int v = 0; v <= left; ++v) {
      q[k] = v;
      rec(k + 1, left - v);
    }
    q[k] = 0;
  };
  rec(0, budget);
}

// All q with 0 <= q <= bound componentwise.
void for_each_box(const Vec& bound, const std::function<void(const Vec&)>& fn) {
  Vec q(bound.size(), 0);
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == bound.size()) {
      fn(q);
      return;
    }
    for (Int v = 0; v <= bound[k]; ++v) {
      q[k] = v;
      rec(k + 1);
    }
    q[k] = 0;
  };
  rec(0);
}

bool all_nonneg(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x >= 0; });
}

std::string region_string(const Region& r) {
  std::string s = "gens {";
  for (size_t i = 0; i < r.gens.size(); ++i) s += (i ? "," : "") + to_string(r.gens[i]);
  return s + "}, height " + std::to_string(r.height);
}

}  // namespace

struct CompletedAlgebra::Plan {
  std::vector<Vec> targets;
  std::set<Vec> need_a, need_b;
  std::map<std::pair<Vec, WId>, std::vector<Vec>> cands;
  Int drop_a = 0, drop_b = 0;
};

CompletedAlgebra::CompletedAlgebra(HeckePtr hecke, size_t tits_budget)
    : hecke_(std::move(hecke)), budget_(tits_budget) {}

bool CompletedAlgebra::in_tits_cone(const Vec& lambda) const {
  TitsStatus s = weyl().tits_status(lambda, budget_);
  if (s == TitsStatus::Unknown) throw DomainError("TitsConeUndecided", "budget exhausted for " + to_string(lambda));
  return s == TitsStatus::InTitsCone;
}

std::optional<Int> CompletedAlgebra::drop_below(const std::vector<Vec>& gens, const Vec& lambda) const {
  std::optional<Int> best;
  for (const Vec& g : gens) {
    auto q = datum().q_coords(vsub(g, lambda));
    if (!q || !all_nonneg(*q)) continue;
    Int h = height(*q);
    if (!best || h < *best) best = h;
  }
  return best;
}

std::vector<Vec> CompletedAlgebra::region_enumerate(const Region& r) const {
  std::set<Vec> out;
  for (const Vec& g : r.gens)
    for_each_bounded(datum().n(), r.height, [&](const Vec& q) {
      Vec lambda = vsub(g, datum().from_q_coords(q));
      if (!r.positive_only || in_tits_cone(lambda)) out.insert(lambda);
    });
  return {out.begin(), out.end()};
}

bool CompletedAlgebra::in_region(const Region& r, const Vec& lambda) const {
  auto d = drop_below(r.gens, lambda);
  if (!d || *d > r.height) return false;
  return !r.positive_only || in_tits_cone(lambda);
}

bool CompletedAlgebra::coefficient_known(const TruncatedElement& a, const Vec& lambda) const {
  if (a.complete || in_region(a.region, lambda)) return true;
  if (!drop_below(a.cert.gens, lambda)) return true;
  if (!in_tits_cone(lambda)) return true;
  if (a.cert.saturated) {
    Vec dom = weyl().dominant_representative(lambda, budget_).dominant;
    if (!drop_below(*a.cert.saturated, dom)) return true;
  }
  return false;
}

TruncatedElement CompletedAlgebra::from_finite(const BLElement& x) const {
  TruncatedElement t;
  t.complete = true;
  t.coeffs = x;
  std::set<Vec> pts;
  std::set<WId> ws;
  for (const auto& [k, c] : x.terms) {
    pts.insert(k.first);
    ws.insert(k.second);
  }
  t.cert.gens.assign(pts.begin(), pts.end());
  if (!ws.empty()) t.cert.wpart.assign(ws.begin(), ws.end());
  std::set<Vec> sat;
  bool ok = true;
  for (const Vec& p : pts) {
    DominantReport rep = weyl().dominant_representative(p, budget_);
    if (rep.status != TitsStatus::InTitsCone) {
      ok = false;
      break;
    }
    sat.insert(rep.dominant);
  }
  if (ok) t.cert.saturated = std::vector<Vec>(sat.begin(), sat.end());
  t.region = Region{t.cert.gens, 0, true};
  return t;
}

TruncatedElement CompletedAlgebra::truncate(const BLElement& x, const Region& r) const {
  TruncatedElement t = from_finite(x);
  t.complete = false;
  t.region = r;
  BLElement kept;
  for (const auto& [k, c] : x.terms)
    if (in_region(r, k.first)) kept.add(k.first, k.second, c);
  t.coeffs = std::move(kept);
  return t;
}

AFCertificate CompletedAlgebra::product_certificate(const AFCertificate& a, const AFCertificate& b) const {
  bool trivial = std::all_of(a.wpart.begin(), a.wpart.end(), [](WId u) { return u == WeylGroup::kIdentity; });
  if (!trivial && !b.saturated)
    throw DomainError("UnsaturatedCertificate", "right factor needs saturated generators");
  const std::vector<Vec>& ks = trivial ? b.gens : *b.saturated;
  AFCertificate out;
  std::set<Vec> gens;
  for (const Vec& g : a.gens)
    for (const Vec& k : ks) gens.insert(vadd(g, k));
  out.gens.assign(gens.begin(), gens.end());
  if (a.saturated && b.saturated) {
    std::set<Vec> sat;
    for (const Vec& x : *a.saturated)
      for (const Vec& y : *b.saturated) sat.insert(vadd(x, y));
    out.saturated = std::vector<Vec>(sat.begin(), sat.end());
  }
  std::set<WId> ws;
  for (WId u : a.wpart)
    for (const WeylElement& t : weyl().bruhat_interval(weyl().element(u)))
      for (WId v : b.wpart) ws.insert(weyl().id_of(weyl().multiply(t, weyl().element(v))));
  out.wpart.assign(ws.begin(), ws.end());
  return out;
}

std::vector<Vec> CompletedAlgebra::mu_candidates(const Vec& nu, WId u, const TruncatedElement* b,
                                                 const AFCertificate& cb) const {
  std::vector<Vec> out;
  if (b && b->complete) {
    std::set<Vec> pts;
    for (const auto& [k, c] : b->coeffs.terms) pts.insert(k.first);
    for (const Vec& mu : pts) {
      if (u == WeylGroup::kIdentity ? mu == nu : hecke_->r_window(u, mu).count(nu) > 0) out.push_back(mu);
    }
    return out;
  }
  if (u == WeylGroup::kIdentity) {
    if (drop_below(cb.gens, nu) && in_tits_cone(nu)) out.push_back(nu);
    return out;
  }
  if (!cb.saturated) throw DomainError("UnsaturatedCertificate", "right factor needs saturated generators");
  const RootDatum& d = datum();
  // Walk back through the windows of the canonical word: nu in R_{i1}(x1), x1 in R_{i2}(x2), ...
  std::set<Vec> layer{nu};
  for (int letter : weyl().element(u).word) {
    size_t i = static_cast<size_t>(letter);
    std::set<Vec> next;
    for (const Vec& y : layer) {
      Int p = d.pair(i, y);
      for (const Vec& kappa : *cb.saturated) {
        auto c = d.q_coords(vsub(kappa, y));
        if (!c) continue;
        bool ok = true;
        for (size_t j = 0; j < d.n(); ++j)
          if (j != i && (*c)[j] < 0) ok = false;
        if (!ok) continue;
        Int ci = (*c)[i];
        for (Int s = -ci - p; s <= ci; ++s)
          if (s >= std::max<Int>(0, -p) || s <= std::min<Int>(0, -p)) next.insert(vaxpy(y, s, d.coroot(i)));
      }
    }
    layer = std::move(next);
  }
  for (const Vec& mu : layer)
    if (drop_below(cb.gens, mu) && in_tits_cone(mu) && hecke_->r_window(u, mu).count(nu)) out.push_back(mu);
  return out;
}

CompletedAlgebra::Plan CompletedAlgebra::make_plan(const Region& target, const TruncatedElement* a,
                                                   const TruncatedElement* b, const AFCertificate& ca,
                                                   const AFCertificate& cb, size_t u_cap) const {
  Plan plan;
  plan.targets = region_enumerate(target);
  for (WId u : ca.wpart)
    if (weyl().length_of(u) > u_cap)
      throw DomainError("CapExceeded", "W-part element longer than " + std::to_string(u_cap));
  bool trivial = std::all_of(ca.wpart.begin(), ca.wpart.end(), [](WId u) { return u == WeylGroup::kIdentity; });
  if (!trivial && !cb.saturated)
    throw DomainError("UnsaturatedCertificate", "right factor needs saturated generators");
  const std::vector<Vec>& ks = trivial ? cb.gens : *cb.saturated;
  bool a_complete = a && a->complete, b_complete = b && b->complete;

  std::map<Vec, std::set<WId>> a_support;
  if (a_complete)
    for (const auto& [k, c] : a->coeffs.terms) a_support[k.first].insert(k.second);

  std::map<Vec, bool> positive;
  auto is_pos = [&](const Vec& v) {
    auto it = positive.find(v);
    if (it == positive.end()) it = positive.emplace(v, in_tits_cone(v)).first;
    return it->second;
  };

  for (const Vec& rho : plan.targets) {
    std::set<Vec> lambdas;
    if (a_complete) {
      for (const auto& [lambda, ws] : a_support) lambdas.insert(lambda);
    } else {
      for (const Vec& ga : ca.gens)
        for (const Vec& k : ks) {
          auto dq = datum().q_coords(vsub(vadd(ga, k), rho));
          if (!dq || !all_nonneg(*dq)) continue;
          for_each_box(*dq, [&](const Vec& q) {
            Vec lambda = vsub(ga, datum().from_q_coords(q));
            if (is_pos(lambda)) lambdas.insert(lambda);
          });
        }
    }
    for (const Vec& lambda : lambdas) {
      if (!a_complete) {
        plan.need_a.insert(lambda);
        plan.drop_a = std::max(plan.drop_a, drop_below(ca.gens, lambda).value_or(0));
      }
      Vec nu = vsub(rho, lambda);
      const std::vector<WId>& us =
          a_complete ? std::vector<WId>(a_support[lambda].begin(), a_support[lambda].end()) : ca.wpart;
      for (WId u : us) {
        auto key = std::make_pair(nu, u);
        if (plan.cands.count(key)) continue;
        auto mus = mu_candidates(nu, u, b, cb);
        if (!b_complete)
          for (const Vec& mu : mus) {
            plan.need_b.insert(mu);
            plan.drop_b = std::max(plan.drop_b, drop_below(cb.gens, mu).value_or(0));
          }
        plan.cands.emplace(std::move(key), std::move(mus));
      }
    }
  }
  return plan;
}

SourceRegions CompletedAlgebra::compute_source_region(const Region& target, const AFCertificate& a,
                                                      const AFCertificate& b, size_t u_cap) const {
  Plan plan = make_plan(target, nullptr, nullptr, a, b, u_cap);
  return {Region{a.gens, plan.drop_a, true}, Region{b.gens, plan.drop_b, true}};
}

TruncatedElement CompletedAlgebra::mul_impl(const TruncatedElement& a, const TruncatedElement& b,
                                            const Region& target, size_t u_cap, bool parallel) const {
  if (a.complete && b.complete) return from_finite(hecke_->mul(a.coeffs, b.coeffs));
  Plan plan = make_plan(target, &a, &b, a.cert, b.cert, u_cap);
  for (const Vec& l : plan.need_a)
    if (!in_region(a.region, l))
      throw DomainError("InsufficientSource", "left factor must be exact on " +
                                                  region_string(Region{a.cert.gens, plan.drop_a, true}));
  for (const Vec& m : plan.need_b)
    if (!in_region(b.region, m))
      throw DomainError("InsufficientSource", "right factor must be exact on " +
                                                  region_string(Region{b.cert.gens, plan.drop_b, true}));

  std::map<Vec, std::vector<std::pair<WId, LaurentPoly>>> b_by_point;
  for (const auto& [k, c] : b.coeffs.terms) b_by_point[k.first].emplace_back(k.second, c);
  std::vector<std::pair<BLKey, LaurentPoly>> a_terms(a.coeffs.terms.begin(), a.coeffs.terms.end());

  std::vector<BLElement> parts(plan.targets.size());
  auto work = [&](size_t t) {
    const Vec& rho = plan.targets[t];
    BLElement& out = parts[t];
    for (const auto& [ka, x] : a_terms) {
      const auto& [lambda, u] = ka;
      Vec nu = vsub(rho, lambda);
      auto it = plan.cands.find({nu, u});
      if (it == plan.cands.end()) continue;
      for (const Vec& mu : it->second) {
        auto bt = b_by_point.find(mu);
        if (bt == b_by_point.end()) continue;
        for (const auto& [v, y] : bt->second) {
          BLElement p = hecke_->basis_product(u, mu, v);
          LaurentPoly xy = x * y;
          for (auto pt = p.terms.lower_bound(BLKey{nu, 0}); pt != p.terms.end() && pt->first.first == nu; ++pt)
            out.add(rho, pt->first.second, xy * pt->second);
        }
      }
    }
  };
  const long long nt = static_cast<long long>(plan.targets.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long t = 0; t < nt; ++t) work(static_cast<size_t>(t));
  } else {
    for (long long t = 0; t < nt; ++t) work(static_cast<size_t>(t));
  }
  TruncatedElement res;
  res.region = target;
  res.cert = product_certificate(a.cert, b.cert);
  for (auto& part : parts) res.coeffs.add(part);
  return res;
}

TruncatedElement CompletedAlgebra::mul(const TruncatedElement& a, const TruncatedElement& b, const Region& target,
                                       size_t u_cap) const {
  return mul_impl(a, b, target, u_cap, true);
}

TruncatedElement CompletedAlgebra::mul_serial(const TruncatedElement& a, const TruncatedElement& b,
                                              const Region& target, size_t u_cap) const {
  return mul_impl(a, b, target, u_cap, false);
}

TruncatedElement CompletedAlgebra::act_left(const Vec& mu, const TruncatedElement& a) const {
  TruncatedElement t;
  t.complete = a.complete;
  t.coeffs = hecke_->shift(mu, a.coeffs);
  t.region = a.region;
  for (Vec& g : t.region.gens) g = vadd(g, mu);
  // Points whose preimage leaves Y^+ carry zero coefficients, so they stay known.
  t.region.positive_only = false;
  t.cert.wpart = a.cert.wpart;
  for (const Vec& g : a.cert.gens) t.cert.gens.push_back(vadd(g, mu));
  if (a.cert.saturated) {
    DominantReport rep = weyl().dominant_representative(mu, budget_);
    if (rep.status == TitsStatus::InTitsCone) {
      std::vector<Vec> sat;
      for (const Vec& k : *a.cert.saturated) sat.push_back(vadd(k, rep.dominant));
      t.cert.saturated = sat;
    }
  }
  return t;
}

TruncatedElement CompletedAlgebra::act_right(const Vec& mu, const TruncatedElement& a, const Region& target,
                                             size_t u_cap) const {
  if (!in_tits_cone(mu)) throw DomainError("NotInTitsCone", to_string(mu));
  return mul(a, from_finite(hecke_->Z(mu)), target, u_cap);
}

TruncatedElement CompletedAlgebra::e_function_expand(const EFunction& f, const Region& target) const {
  std::vector<Vec> supp;
  for (const auto& [lambda, c] : f) {
    Vec p = datum().pairings(lambda);
    if (!all_nonneg(p)) throw DomainError("NotDominant", to_string(lambda));
    if (!c.is_zero()) supp.push_back(lambda);
  }
  TruncatedElement t;
  t.region = target;
  t.cert.gens = supp;
  t.cert.saturated = supp;
  for (const Vec& rho : region_enumerate(target)) {
    DominantReport rep = weyl().dominant_representative(rho, budget_);
    if (rep.status == TitsStatus::Unknown) throw DomainError("TitsConeUndecided", to_string(rho));
    if (rep.status != TitsStatus::InTitsCone) continue;
    auto it = f.find(rep.dominant);
    if (it != f.end()) t.coeffs.add(rho, WeylGroup::kIdentity, it->second);
  }
  return t;
}

CenterResult CompletedAlgebra::center_test(const TruncatedElement& a, const std::optional<std::vector<Vec>>& probe_mus,
                                           size_t u_cap) const {
  CenterResult res;
  std::vector<std::pair<std::string, TruncatedElement>> probes;
  for (size_t i = 0; i < datum().n(); ++i)
    probes.emplace_back("H[" + std::to_string(i) + "]",
                        from_finite(hecke_->H(weyl().id_of(weyl().simple_reflection(i)))));
  for (const Vec& mu : probe_mus ? *probe_mus : (a.complete ? a.cert.gens : a.region.gens))
    probes.emplace_back("Z^" + to_string(mu), from_finite(hecke_->Z(mu)));

  auto report_diff = [&](const std::string& name, const BLElement& l, const BLElement& r) {
    BLElement diff = l;
    diff.add(r, hecke_->scalar(-1));
    if (diff.is_zero()) return false;
    auto first = hecke_->sorted_terms(diff).front();
    res.verdict = CenterVerdict::NotCentral;
    res.probe = name;
    res.lambda = first.first.first;
    res.w = first.first.second;
    res.left = l.coeff(res.lambda, res.w);
    res.right = r.coeff(res.lambda, res.w);
    return true;
  };

  Int verified = a.complete ? std::numeric_limits<Int>::max() : a.region.height;
  for (const auto& [name, x] : probes) {
    if (a.complete) {
      if (report_diff(name, hecke_->mul(a.coeffs, x.coeffs), hecke_->mul(x.coeffs, a.coeffs))) return res;
      continue;
    }
    std::set<Vec> gens;
    for (const Vec& g : product_certificate(a.cert, x.cert).gens) gens.insert(g);
    for (const Vec& g : product_certificate(x.cert, a.cert).gens) gens.insert(g);
    std::optional<Region> target;
    for (Int h = a.region.height; h >= 0 && !target; --h) {
      Region cand{std::vector<Vec>(gens.begin(), gens.end()), h, true};
      Plan p1 = make_plan(cand, &a, &x, a.cert, x.cert, u_cap);
      Plan p2 = make_plan(cand, &x, &a, x.cert, a.cert, u_cap);
      bool fits = std::all_of(p1.need_a.begin(), p1.need_a.end(), [&](const Vec& v) { return in_region(a.region, v); }) &&
                  std::all_of(p2.need_b.begin(), p2.need_b.end(), [&](const Vec& v) { return in_region(a.region, v); });
      if (fits) target = cand;
    }
    if (!target) throw DomainError("InsufficientSource", "no verification target fits for probe " + name);
    verified = std::min(verified, target->height);
    if (report_diff(name, mul(a, x, *target, u_cap).coeffs, mul(x, a, *target, u_cap).coeffs)) return res;
  }
  res.verified_height = a.complete ? -1 : verified;

  for (const auto& [k, c] : a.coeffs.terms)
    if (k.second != WeylGroup::kIdentity) {
      res.verdict = CenterVerdict::NotCentral;
      res.probe = "W-support";
      res.lambda = k.first;
      res.w = k.second;
      res.left = c;
      return res;
    }
  std::vector<Vec> pts;
  if (a.complete) {
    for (const auto& [k, c] : a.coeffs.terms) pts.push_back(k.first);
  } else {
    pts = region_enumerate(a.region);
  }
  bool undecided = false;
  for (const Vec& lambda : pts)
    for (size_t i = 0; i < datum().n(); ++i) {
      Vec img = weyl().reflect(i, lambda);
      if (img == lambda) continue;
      if (!coefficient_known(a, img)) {
        if (!undecided) res.detail = "coefficient at " + to_string(img) + " lies outside the region";
        undecided = true;
        continue;
      }
      LaurentPoly c1 = a.coeffs.coeff(lambda, WeylGroup::kIdentity), c2 = a.coeffs.coeff(img, WeylGroup::kIdentity);
      if (c1 != c2) {
        res.verdict = CenterVerdict::NotCentral;
        res.probe = "H[" + std::to_string(i) + "]";
        res.lambda = lambda;
        res.left = c1;
        res.right = c2;
        res.detail = "coefficients differ under r_" + std::to_string(i);
        return res;
      }
    }
  res.verdict = undecided ? CenterVerdict::Inconclusive : CenterVerdict::Central;
  return res;
}

bool CompletedAlgebra::center_of_H_classify(const Vec& lambda) const {
  TitsStatus s = weyl().tits_status(lambda, budget_);
  if (s == TitsStatus::Unknown) throw DomainError("TitsConeUndecided", to_string(lambda));
  if (s == TitsStatus::NotInTitsCone) throw DomainError("NotInTitsCone", to_string(lambda));
  const RootDatum& d = datum();
  size_t dim = d.rank_y();
  std::vector<Vec> finite_coroots;
  for (const auto& c : weyl().components().components)
    if (c.kind == Kind::Finite)
      for (size_t i : c.indices) finite_coroots.push_back(d.coroot(i));
  std::vector<Vec> gens = saturate(finite_coroots, dim);
  Mat roots;
  for (size_t i = 0; i < d.n(); ++i) roots.push_back(d.root(i));
  for (Vec& v : integer_kernel(roots, dim)) gens.push_back(std::move(v));
  return IntLattice(gens, dim).contains(lambda);
}

}  // namespace kmh
