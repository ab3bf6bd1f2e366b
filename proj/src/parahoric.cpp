#include "kmhecke/parahoric.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "kmhecke/errors.hpp"

namespace kmh {

FaceType face_type(const RootDatum& d, const std::vector<size_t>& j_zero) {
  FaceType f;
  std::set<size_t> zs(j_zero.begin(), j_zero.end());
  for (size_t j : zs)
    if (j >= d.n()) throw DomainError("IndexOutOfRange", "face index " + std::to_string(j));
  f.j_zero.assign(zs.begin(), zs.end());
  for (size_t i = 0; i < d.n(); ++i)
    if (!zs.count(i)) f.j_pos.push_back(i);
  auto comps = classify_submatrix(d.gcm(), f.j_zero);
  f.spherical = std::all_of(comps.begin(), comps.end(), [](const Component& c) { return c.kind == Kind::Finite; });
  return f;
}

ParahoricAlgebra::ParahoricAlgebra(HeckePtr hecke, FaceType face) : hecke_(std::move(hecke)), face_(std::move(face)) {
  if (!face_.spherical) throw DomainError("NonSpherical", "W_F is infinite");
  const WeylGroup& W = hecke_->weyl();
  std::set<WId> seen{WeylGroup::kIdentity};
  std::deque<WId> queue{WeylGroup::kIdentity};
  while (!queue.empty()) {
    WId x = queue.front();
    queue.pop_front();
    for (size_t j : face_.j_zero) {
      WId y = W.lmul_id(j, x);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  wf_.assign(seen.begin(), seen.end());
  poincare_ = LaurentPoly(hecke_->nvars());
  for (WId w : wf_) {
    poincare_ += hecke_->sigma_w(w).pow(2);
    e_.add(hecke_->H(w), hecke_->sigma_w(w));
  }
}

DoubleCoset ParahoricAlgebra::double_coset(const Vec& lambda, WId w) const {
  const WeylGroup& W = hecke_->weyl();
  std::set<AffineElement> elems;
  for (WId x : wf_) {
    const WeylElement& xe = W.element(x);
    Vec xl = W.act(xe, lambda);
    WeylElement xw = W.multiply(xe, W.element(w));
    for (WId y : wf_) elems.insert({xl, W.id_of(W.multiply(xw, W.element(y)))});
  }
  DoubleCoset d;
  d.elements.assign(elems.begin(), elems.end());
  bool first = true;
  for (const auto& e : d.elements) {
    DominantReport rep = W.dominant_representative(e.lambda);
    if (rep.status != TitsStatus::InTitsCone) throw DomainError("NotInTitsCone", to_string(e.lambda));
    auto q = W.datum().q_coords(vsub(rep.dominant, e.lambda));
    CosetLabel l{q ? height(*q) : 0, W.element(e.w).word, e.lambda, e.w};
    if (first || l < d.label) d.label = l;
    first = false;
  }
  return d;
}

BLElement ParahoricAlgebra::coset_sum(const DoubleCoset& d) const {
  const WeylGroup& W = hecke_->weyl();
  const CosetLabel& l = d.label;
  const WeylElement& we = W.element(l.w);
  WeylElement w_inv = W.inverse(we);
  std::set<WId> wf(wf_.begin(), wf_.end());
  LaurentPoly stab(hecke_->nvars());
  for (WId x : wf_) {
    const WeylElement& xe = W.element(x);
    if (W.act(xe, l.lambda) != l.lambda) continue;
    if (!wf.count(W.id_of(W.multiply(w_inv, W.multiply(xe, we))))) continue;
    stab += hecke_->sigma_w(x).pow(2);
  }
  BLElement full = hecke_->mul(hecke_->mul(e_, hecke_->basis(l.lambda, l.w, hecke_->sigma_w(l.w))), e_);
  BLElement out;
  for (const auto& [k, c] : full.terms) {
    auto q = c.divide_exact(stab);
    if (!q) throw DomainError("NotDivisible", "coset sum by its stabilizer polynomial");
    out.add(k.first, k.second, *q);
  }
  return out;
}

namespace {

// Solve sum_j x_j cols[j] = rhs over the Laurent ring by fraction-free elimination.
std::optional<std::vector<LaurentPoly>> solve_exact(const std::vector<BLElement>& cols, const BLElement& rhs,
                                                    size_t nvars) {
  std::vector<BLKey> rows;
  {
    std::set<BLKey> keys;
    for (const auto& c : cols)
      for (const auto& [k, v] : c.terms) keys.insert(k);
    for (const auto& [k, v] : rhs.terms) keys.insert(k);
    rows.assign(keys.begin(), keys.end());
  }
  size_t m = rows.size(), n = cols.size();
  std::vector<std::vector<LaurentPoly>> a(m, std::vector<LaurentPoly>(n + 1, LaurentPoly(nvars)));
  for (size_t r = 0; r < m; ++r) {
    for (size_t j = 0; j < n; ++j) a[r][j] = cols[j].coeff(rows[r].first, rows[r].second);
    a[r][n] = rhs.coeff(rows[r].first, rows[r].second);
  }
  LaurentPoly prev = LaurentPoly::constant(nvars, 1);
  size_t r = 0;
  for (size_t j = 0; j < n; ++j, ++r) {
    size_t piv = r;
    while (piv < m && a[piv][j].is_zero()) ++piv;
    if (piv == m) return std::nullopt;  // dependent columns
    std::swap(a[r], a[piv]);
    for (size_t i = r + 1; i < m; ++i) {
      for (size_t k = j + 1; k <= n; ++k) {
        auto q = (a[r][j] * a[i][k] - a[i][j] * a[r][k]).divide_exact(prev);
        if (!q) return std::nullopt;
        a[i][k] = *q;
      }
      a[i][j] = LaurentPoly(nvars);
    }
    prev = a[r][j];
  }
  for (size_t i = n; i < m; ++i)
    if (!a[i][n].is_zero()) return std::nullopt;  // inconsistent
  std::vector<LaurentPoly> x(n, LaurentPoly(nvars));
  for (size_t j = n; j-- > 0;) {
    LaurentPoly acc = a[j][n];
    for (size_t k = j + 1; k < n; ++k) acc -= a[j][k] * x[k];
    auto q = acc.divide_exact(a[j][j]);
    if (!q) return std::nullopt;
    x[j] = *q;
  }
  return x;
}

}  // namespace

std::map<CosetLabel, LaurentPoly> ParahoricAlgebra::product(const DoubleCoset& d1, const DoubleCoset& d2) const {
  BLElement prod = hecke_->mul(coset_sum(d1), coset_sum(d2));
  BLElement rest;
  for (const auto& [k, c] : prod.terms) {
    auto q = c.divide_exact(poincare_);
    if (!q) throw DomainError("NotDivisible", "coefficient " + c.to_string(hecke_->classes().names) + " by P_F");
    rest.add(k.first, k.second, *q);
  }
  std::map<CosetLabel, DoubleCoset> cands;
  for (const auto& [k, c] : rest.terms) {
    DoubleCoset d = double_coset(k.first, k.second);
    cands.emplace(d.label, std::move(d));
  }
  std::vector<BLElement> cols;
  for (const auto& [label, d] : cands) cols.push_back(coset_sum(d));
  auto x = solve_exact(cols, rest, hecke_->nvars());
  if (!x) throw DomainError("NotDivisible", "product is not a Laurent combination of coset sums");
  std::map<CosetLabel, LaurentPoly> out;
  size_t j = 0;
  for (const auto& [label, d] : cands) {
    if (!(*x)[j].is_zero()) out.emplace(label, (*x)[j]);
    ++j;
  }
  return out;
}

LaurentPoly tree_orbit_size(unsigned l) {
  if (l == 0) throw DomainError("InvalidLength", "l must be at least 1");
  LaurentPoly p = LaurentPoly::constant(2, 1);
  for (unsigned f = 0; f + 1 < l; ++f) p = p * LaurentPoly::var(2, f % 2 == 0 ? 1 : 0);
  return p;
}

BigInt tree_orbit_size(unsigned l, const BigInt& q, const BigInt& q_prime) {
  if (l == 0) throw DomainError("InvalidLength", "l must be at least 1");
  BigInt r = 1;
  for (unsigned f = 0; f + 1 < l; ++f) r *= f % 2 == 0 ? q_prime : q;
  return r;
}

FailureStream nonspherical_failure_stream(const WeylGroup& W, const std::vector<size_t>& j_zero, size_t k) {
  FaceType face = face_type(W.datum(), j_zero);
  if (face.spherical) throw DomainError("FaceIsSpherical", "W_F is finite");
  if (face.j_pos.empty()) throw DomainError("FaceIsMinimal", "J_pos is empty");
  FailureStream fs;
  fs.witness = infinite_orbit_witness(W, face.j_zero);
  const Vec& u = fs.witness.face_point;
  WeylElement w_inv = W.inverse(fs.witness.w);
  Vec w_inv_u = W.act(w_inv, u);

  std::set<Vec> seen{fs.witness.image};
  std::deque<std::pair<Vec, WeylElement>> queue{{fs.witness.image, W.identity()}};
  while (!queue.empty() && fs.elements.size() < k) {
    auto [p, wf] = std::move(queue.front());
    queue.pop_front();
    WeylElement g = W.inverse(W.multiply(wf, fs.witness.w));
    FailureElement fe{wf, p, W.act(g, p) == u && W.act(g, u) == w_inv_u};
    fs.elements.push_back(std::move(fe));
    for (size_t j : face.j_zero) {
      Vec q = W.reflect(j, p);
      if (seen.insert(q).second) queue.emplace_back(q, W.left_mul(j, wf));
    }
  }
  return fs;
}

}  // namespace kmh
