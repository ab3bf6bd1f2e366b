#include "kmhecke/coeff_ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kmhecke/errors.hpp"

namespace kmh {

namespace {

struct DisjointSet {
  std::vector<size_t> parent;
  explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Exponent padded(const Exponent& e, size_t nv) {
  Exponent out = e;
  out.resize(nv, 0);
  return out;
}

}  // namespace

ParamClasses build_param_ring(const RootDatum& d) {
  size_t n = d.n();
  DisjointSet ds(2 * n);
  for (size_t i = 0; i < n; ++i)
    if (alpha_image_index(d, i) == 1) ds.unite(2 * i, 2 * i + 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (d.gcm()(i, j) == -1 && d.gcm()(j, i) == -1) {
        ds.unite(2 * i, 2 * j);
        ds.unite(2 * i, 2 * i + 1);
        ds.unite(2 * j, 2 * j + 1);
      }
  ParamClasses pc;
  std::vector<size_t> class_of_root(2 * n, SIZE_MAX);
  for (size_t s = 0; s < 2 * n; ++s) {
    size_t r = ds.find(s);
    if (class_of_root[r] == SIZE_MAX) {
      class_of_root[r] = pc.names.size();
      pc.names.push_back("s" + std::to_string(s / 2) + (s % 2 ? "'" : ""));
    }
  }
  for (size_t i = 0; i < n; ++i) {
    pc.sigma.push_back(class_of_root[ds.find(2 * i)]);
    pc.sigma_prime.push_back(class_of_root[ds.find(2 * i + 1)]);
  }
  return pc;
}

LaurentPoly LaurentPoly::constant(size_t nvars, const BigInt& c) {
  return monomial(nvars, Exponent(nvars, 0), c);
}

LaurentPoly LaurentPoly::monomial(size_t nvars, Exponent e, const BigInt& c) {
  LaurentPoly p(nvars);
  if (c != 0) p.terms_.emplace_back(padded(e, nvars), c);
  return p;
}

LaurentPoly LaurentPoly::var(size_t nvars, size_t k, int32_t power) {
  Exponent e(nvars, 0);
  e.at(k) = power;
  return monomial(nvars, std::move(e));
}

LaurentPoly LaurentPoly::sigma_diff(size_t nvars, size_t k) { return var(nvars, k, 1) - var(nvars, k, -1); }

LaurentPoly LaurentPoly::from_terms(size_t nvars, std::vector<Term> terms) {
  LaurentPoly p(nvars);
  for (auto& t : terms) t.first = padded(t.first, nvars);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void LaurentPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

void LaurentPoly::pad_to(size_t nv) {
  if (nv <= nvars_) return;
  for (auto& t : terms_) t.first.resize(nv, 0);
  nvars_ = nv;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].second == 1 &&
         std::all_of(terms_[0].first.begin(), terms_[0].first.end(), [](int32_t x) { return x == 0; });
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  size_t nv = std::max(nvars_, o.nvars_);
  pad_to(nv);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    Exponent eb = b != o.terms_.end() ? padded(b->first, nv) : Exponent{};
    if (b == o.terms_.end() || (a != terms_.end() && a->first < eb)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || eb < a->first) {
      out.emplace_back(std::move(eb), b->second);
      ++b;
    } else {
      BigInt c = a->second + b->second;
      if (c != 0) out.emplace_back(std::move(a->first), std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  size_t nv = std::max(a.nvars_, b.nvars_);
  LaurentPoly p(nv);
  if (a.is_zero() || b.is_zero()) return p;
  p.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_) {
    Exponent pa = padded(ea, nv);
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e = pa;
      for (size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
      p.terms_.emplace_back(std::move(e), ca * cb);
    }
  }
  p.normalize();
  return p;
}

LaurentPoly LaurentPoly::scaled(const BigInt& c) const {
  if (c == 0) return LaurentPoly(nvars_);
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.second *= c;
  return p;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly r = constant(nvars_, 1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  size_t nv = std::max(nvars_, o.nvars_);
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].second != o.terms_[i].second || padded(terms_[i].first, nv) != padded(o.terms_[i].first, nv))
      return false;
  return true;
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& o) const {
  if (o.is_zero()) throw DomainError("DivisionByZero", "Laurent division by 0");
  size_t nv = std::max(nvars_, o.nvars_);
  LaurentPoly r = *this, d = o;
  r.pad_to(nv);
  d.pad_to(nv);
  LaurentPoly q(nv);
  if (r.is_zero()) return q;
  // Any exact quotient has exponents inside [min r - min d, max r - max d] in every variable.
  Exponent lo(nv), hi(nv);
  for (size_t k = 0; k < nv; ++k) {
    int32_t rmin = INT32_MAX, rmax = INT32_MIN, dmin = INT32_MAX, dmax = INT32_MIN;
    for (const auto& t : r.terms_) rmin = std::min(rmin, t.first[k]), rmax = std::max(rmax, t.first[k]);
    for (const auto& t : d.terms_) dmin = std::min(dmin, t.first[k]), dmax = std::max(dmax, t.first[k]);
    lo[k] = rmin - dmin;
    hi[k] = rmax - dmax;
    if (lo[k] > hi[k]) return std::nullopt;
  }
  const auto& [dl, dc] = d.terms_.back();
  std::vector<Term> qterms;
  while (!r.is_zero()) {
    const auto& [rl, rc] = r.terms_.back();
    if (rc % dc != 0) return std::nullopt;
    Exponent e(nv);
    for (size_t k = 0; k < nv; ++k) {
      e[k] = rl[k] - dl[k];
      if (e[k] < lo[k] || e[k] > hi[k]) return std::nullopt;
    }
    LaurentPoly t = monomial(nv, e, rc / dc);
    qterms.emplace_back(std::move(e), rc / dc);
    r -= t * d;
  }
  return from_terms(nv, std::move(qterms));
}

namespace {

Rational power_of(const BigInt& base, int64_t e) {
  BigInt p = boost::multiprecision::pow(base, static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Rational(1) / Rational(p) : Rational(p);
}

}  // namespace

Rational LaurentPoly::eval_at(const std::vector<BigInt>& values) const {
  if (values.size() < nvars_) throw DomainError("ArityMismatch", "need " + std::to_string(nvars_) + " values");
  for (size_t k = 0; k < values.size(); ++k)
    if (values[k] == 0) throw DomainError("ZeroSpecialization", "class " + std::to_string(k));
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (size_t k = 0; k < e.size(); ++k) m *= power_of(values[k], e[k]);
    s += m;
  }
  return s;
}

Rational LaurentPoly::eval_sq(const std::vector<BigInt>& values) const {
  if (values.size() < nvars_) throw DomainError("ArityMismatch", "need " + std::to_string(nvars_) + " values");
  for (size_t k = 0; k < values.size(); ++k)
    if (values[k] == 0) throw DomainError("ZeroSpecialization", "class " + std::to_string(k));
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (size_t k = 0; k < e.size(); ++k) {
      if (e[k] % 2 != 0) throw DomainError("OddExponent", "odd power of class " + std::to_string(k));
      m *= power_of(values[k], e[k] / 2);
    }
    s += m;
  }
  return s;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool unit = std::all_of(e.begin(), e.end(), [](int32_t x) { return x == 0; });
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool need_star = false;
    if (unit || mag != 1) {
      os << mag;
      need_star = true;
    }
    for (size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (need_star) os << "*";
      os << (k < names.size() ? names[k] : "x" + std::to_string(k));
      if (e[k] != 1) os << "^" << e[k];
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace kmh
