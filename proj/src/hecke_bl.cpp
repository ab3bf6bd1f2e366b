#include "kmhecke/hecke_bl.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include "kmhecke/errors.hpp"

namespace kmh {

void BLElement::add(const Vec& lambda, WId w, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(BLKey{lambda, w}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void BLElement::add(const BLElement& o, const LaurentPoly& c) {
  if (c.is_zero()) return;
  for (const auto& [k, x] : o.terms) add(k.first, k.second, c.is_one() ? x : x * c);
}

void BLElement::add(const BLElement& o) {
  for (const auto& [k, x] : o.terms) add(k.first, k.second, x);
}

LaurentPoly BLElement::coeff(const Vec& lambda, WId w) const {
  auto it = terms.find(BLKey{lambda, w});
  return it == terms.end() ? LaurentPoly() : it->second;
}

HeckeAlgebra::HeckeAlgebra(WeylPtr weyl) : weyl_(std::move(weyl)), classes_(build_param_ring(weyl_->datum())) {}

BLElement HeckeAlgebra::basis(const Vec& lambda, WId w) const { return basis(lambda, w, scalar(1)); }

BLElement HeckeAlgebra::basis(const Vec& lambda, WId w, const LaurentPoly& c) const {
  BLElement e;
  e.add(lambda, w, c);
  return e;
}

BLElement HeckeAlgebra::commute(size_t i, const Vec& nu) const {
  const RootDatum& d = datum();
  const Int m = d.pair(i, nu);
  const WId ri = weyl_->id_of(weyl_->simple_reflection(i));
  const Vec& cv = d.coroot(i);
  BLElement out;
  out.add(vaxpy(nu, -m, cv), ri, scalar(1));
  if (m == 0) return out;
  // P(z) = ((t - 1/t) + (u - 1/u) z)(1 - z^m) with z = Z^{-alpha_i^vee}; quotient by 1 - z^2.
  const size_t nv = nvars();
  LaurentPoly a = LaurentPoly::sigma_diff(nv, classes_.sigma[i]);
  LaurentPoly b = LaurentPoly::sigma_diff(nv, classes_.sigma_prime[i]);
  std::map<Int, LaurentPoly> p;
  auto acc = [&](Int deg, const LaurentPoly& c) {
    auto& slot = p[deg];
    slot += c;
  };
  acc(0, a);
  acc(1, b);
  acc(m, -a);
  acc(m + 1, -b);
  Int lo = std::min<Int>(0, m), hi = std::max<Int>(1, m + 1);
  std::map<Int, LaurentPoly> q;
  for (Int deg = lo; deg <= hi - 2; ++deg) {
    LaurentPoly c = p.count(deg) ? p[deg] : LaurentPoly(nv);
    if (q.count(deg - 2)) c += q[deg - 2];
    if (!c.is_zero()) q[deg] = c;
  }
  for (Int deg = hi - 1; deg <= hi; ++deg) {
    LaurentPoly c = p.count(deg) ? p[deg] : LaurentPoly(nv);
    if (q.count(deg - 2)) c += q[deg - 2];
    if (!c.is_zero()) throw DomainError("Internal", "commutation quotient is not exact");
  }
  for (const auto& [deg, c] : q) out.add(vaxpy(nu, -deg, cv), WeylGroup::kIdentity, c);
  return out;
}

BLElement HeckeAlgebra::apply_Hi(size_t i, const BLElement& a) const {
  BLElement out;
  LaurentPoly diff = LaurentPoly::sigma_diff(nvars(), classes_.sigma[i]);
  std::map<Vec, BLElement> comm;
  for (const auto& [key, c] : a.terms) {
    const auto& [mu, v] = key;
    auto it = comm.find(mu);
    if (it == comm.end()) it = comm.emplace(mu, commute(i, mu)).first;
    for (const auto& [k2, c2] : it->second.terms) {
      const auto& [nu, x] = k2;
      LaurentPoly cc = c * c2;
      if (x == WeylGroup::kIdentity) {
        out.add(nu, v, cc);
        continue;
      }
      WId riv = weyl_->lmul_id(i, v);
      out.add(nu, riv, cc);
      if (weyl_->length_of(riv) < weyl_->length_of(v)) out.add(nu, v, cc * diff);
    }
  }
  return out;
}

BLElement HeckeAlgebra::basis_product(WId u, const Vec& mu, WId v) const {
  if (u == WeylGroup::kIdentity) return basis(mu, v);
  auto key = std::make_pair(std::make_pair(u, v), mu);
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  size_t i = static_cast<size_t>(weyl_->element(u).word.front());
  BLElement r = apply_Hi(i, basis_product(weyl_->lmul_id(i, u), mu, v));
  std::unique_lock lock(mu_);
  return cache_.emplace(std::move(key), std::move(r)).first->second;
}

std::vector<BLElement> HeckeAlgebra::basis_product_batch(const std::vector<BasisQuery>& qs) const {
  std::vector<BLElement> out(qs.size());
  const long n = static_cast<long>(qs.size());
#pragma omp parallel for schedule(dynamic, 4) if (n > 16)
  for (long k = 0; k < n; ++k) out[k] = basis_product(qs[k].u, qs[k].mu, qs[k].v);
  return out;
}

std::vector<BLElement> HeckeAlgebra::basis_product_batch_serial(const std::vector<BasisQuery>& qs) const {
  std::vector<BLElement> out;
  out.reserve(qs.size());
  for (const auto& q : qs) out.push_back(basis_product(q.u, q.mu, q.v));
  return out;
}

BLElement HeckeAlgebra::mul(const BLElement& a, const BLElement& b) const {
  std::map<WId, std::vector<std::pair<Vec, LaurentPoly>>> by_u;
  for (const auto& [k, c] : a.terms) by_u[k.second].emplace_back(k.first, c);
  BLElement out;
  for (const auto& [u, lefts] : by_u) {
    std::vector<BasisQuery> qs;
    for (const auto& [k, c] : b.terms) qs.push_back({u, k.first, k.second});
    auto prods = basis_product_batch(qs);
    BLElement hb;
    size_t idx = 0;
    for (const auto& [k, c] : b.terms) hb.add(prods[idx++], c);
    for (const auto& [lambda, c] : lefts) out.add(shift(lambda, hb), c);
  }
  return out;
}

BLElement HeckeAlgebra::scale(const BLElement& a, const LaurentPoly& c) const {
  BLElement out;
  out.add(a, c);
  return out;
}

BLElement HeckeAlgebra::shift(const Vec& mu, const BLElement& a) const {
  BLElement out;
  for (const auto& [k, c] : a.terms) out.terms.emplace(BLKey{vadd(mu, k.first), k.second}, c);
  return out;
}

void HeckeAlgebra::r_segment(const RootDatum& d, size_t i, const Vec& lambda, std::set<Vec>& out) {
  Int m = d.pair(i, lambda);
  Int step = m >= 0 ? -1 : 1;
  Vec cur = lambda;
  for (Int h = 0;; ++h) {
    out.insert(cur);
    if (h == (m >= 0 ? m : -m)) break;
    cur = vaxpy(cur, step, d.coroot(i));
  }
}

std::set<Vec> HeckeAlgebra::r_window(WId w, const Vec& lambda) const {
  std::map<WId, std::set<Vec>> memo;
  std::function<const std::set<Vec>&(WId)> rec = [&](WId x) -> const std::set<Vec>& {
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    std::set<Vec> out;
    if (x == WeylGroup::kIdentity) {
      out.insert(lambda);
    } else {
      for (size_t i : weyl_->left_descents(weyl_->element(x))) {
        const std::set<Vec>& inner = rec(weyl_->lmul_id(i, x));
        for (const Vec& p : inner) r_segment(datum(), i, p, out);
      }
    }
    return memo.emplace(x, std::move(out)).first->second;
  };
  return rec(w);
}

bool HeckeAlgebra::is_in_H(const BLElement& a, size_t budget) const {
  std::set<Vec> seen;
  for (const auto& [k, c] : a.terms) {
    if (!seen.insert(k.first).second) continue;
    TitsStatus s = weyl_->tits_status(k.first, budget);
    if (s == TitsStatus::Unknown) throw DomainError("TitsConeUndecided", kmh::to_string(k.first));
    if (s == TitsStatus::NotInTitsCone) return false;
  }
  return true;
}

LaurentPoly HeckeAlgebra::sigma_w(WId w) const {
  Exponent e(nvars(), 0);
  for (int i : weyl_->element(w).word) e[classes_.sigma[i]] += 1;
  return LaurentPoly::monomial(nvars(), e);
}

std::vector<std::pair<BLKey, LaurentPoly>> HeckeAlgebra::sorted_terms(const BLElement& a) const {
  std::vector<std::pair<BLKey, LaurentPoly>> out(a.terms.begin(), a.terms.end());
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    if (x.first.first != y.first.first) return x.first.first < y.first.first;
    return weyl_->element(x.first.second).word < weyl_->element(y.first.second).word;
  });
  return out;
}

std::string HeckeAlgebra::to_string(const BLElement& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : sorted_terms(a)) {
    const auto& [lambda, w] = key;
    bool has_z = !is_zero(lambda);
    bool has_h = w != WeylGroup::kIdentity;
    std::string cs = c.to_string(classes_.names);
    bool neg = cs[0] == '-' && c.size() == 1;
    if (neg) cs = cs.substr(1);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool unit = cs == "1";
    if (!unit || (!has_z && !has_h)) os << (c.size() > 1 ? "(" + cs + ")" : cs);
    if (!unit && (has_z || has_h)) os << "*";
    if (has_z) os << "Z^" << kmh::to_string(lambda);
    if (has_z && has_h) os << "*";
    if (has_h) {
      os << "H[";
      const Word& word = weyl_->element(w).word;
      for (size_t t = 0; t < word.size(); ++t) os << (t ? "," : "") << word[t];
      os << "]";
    }
  }
  return os.str();
}

}  // namespace kmh
