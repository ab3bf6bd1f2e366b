#include "kmhecke/root_system.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kmhecke/linalg.hpp"

namespace kmh {

GCM validate_gcm(const Mat& m) {
  size_t n = m.size();
  if (n == 0) throw DomainError("NotSquare", "empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw DomainError("NotSquare", "matrix is not square");
  for (size_t i = 0; i < n; ++i)
    if (m[i][i] != 2) throw DomainError("DiagonalNotTwo", "i=" + std::to_string(i));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && m[i][j] > 0)
        throw DomainError("PositiveOffDiagonal", "i=" + std::to_string(i) + " j=" + std::to_string(j));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && m[i][j] == 0 && m[j][i] != 0)
        throw DomainError("AsymmetricZero", "i=" + std::to_string(i) + " j=" + std::to_string(j));
  return GCM{m};
}

RootDatum::RootDatum(GCM gcm, RealizationData data) : gcm_(std::move(gcm)), data_(std::move(data)) {
  size_t n = gcm_.size(), d = data_.rank_y;
  // Rows of the coroot matrix (d x n) that carry an invertible n x n block.
  Mat ct(n, Vec(d));
  for (size_t i = 0; i < n; ++i) ct[i] = data_.coroots[i];
  QMat q = to_rational(ct);
  solve_rows_ = rref(q);
  QMat block(n, QVec(2 * n, Rational(0)));
  for (size_t r = 0; r < n; ++r) {
    for (size_t i = 0; i < n; ++i) block[r][i] = data_.coroots[i][solve_rows_[r]];
    block[r][n + r] = 1;
  }
  rref(block);
  BigInt den = 1;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) den = boost::multiprecision::lcm(den, denominator(block[i][n + j]));
  solve_den_ = static_cast<Int>(den);
  solve_num_.assign(n, Vec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rational x = block[i][n + j] * Rational(den);
      solve_num_[i][j] = static_cast<Int>(numerator(x));
    }
}

Vec RootDatum::pairings(const Vec& v) const {
  Vec p(n());
  for (size_t i = 0; i < n(); ++i) p[i] = pair(i, v);
  return p;
}

std::optional<Vec> RootDatum::q_coords(const Vec& v) const {
  size_t nn = n();
  Vec sub(nn);
  for (size_t r = 0; r < nn; ++r) sub[r] = v[solve_rows_[r]];
  Vec q(nn);
  for (size_t i = 0; i < nn; ++i) {
    Int s = dot(solve_num_[i], sub);
    if (s % solve_den_ != 0) return std::nullopt;
    q[i] = s / solve_den_;
  }
  if (from_q_coords(q) != v) return std::nullopt;
  return q;
}

Vec RootDatum::from_q_coords(const Vec& q) const {
  Vec v(rank_y(), 0);
  for (size_t i = 0; i < n(); ++i)
    if (q[i] != 0) v = vaxpy(v, q[i], coroot(i));
  return v;
}

RootDatum build_realization(const GCM& gcm, const std::optional<RealizationData>& custom) {
  size_t n = gcm.size();
  if (!custom) {
    QMat q = to_rational(gcm.a);
    auto piv = rref(q);
    std::vector<size_t> free_cols;
    for (size_t j = 0; j < n; ++j)
      if (std::find(piv.begin(), piv.end(), j) == piv.end()) free_cols.push_back(j);
    RealizationData data;
    data.rank_y = 2 * n - piv.size();
    for (size_t i = 0; i < n; ++i) {
      Vec e(data.rank_y, 0);
      e[i] = 1;
      data.coroots.push_back(e);
    }
    for (size_t j = 0; j < n; ++j) {
      Vec r(data.rank_y, 0);
      for (size_t i = 0; i < n; ++i) r[i] = gcm.a[i][j];
      for (size_t k = 0; k < free_cols.size(); ++k) r[n + k] = (free_cols[k] == j) ? 1 : 0;
      data.roots.push_back(r);
    }
    return RootDatum(gcm, std::move(data));
  }
  const RealizationData& c = *custom;
  if (c.rank_y == 0 || c.coroots.size() != n || c.roots.size() != n)
    throw DomainError("ShapeMismatch", "realization needs n coroots and n roots");
  for (size_t i = 0; i < n; ++i)
    if (c.coroots[i].size() != c.rank_y || c.roots[i].size() != c.rank_y)
      throw DomainError("ShapeMismatch", "vector length differs from rank_y");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (dot(c.roots[j], c.coroots[i]) != gcm.a[i][j])
        throw DomainError("PairingMismatch", "i=" + std::to_string(i) + " j=" + std::to_string(j));
  if (rank(Mat(c.roots.begin(), c.roots.end())) != n) throw DomainError("DependentRoots", "roots are not free");
  if (rank(Mat(c.coroots.begin(), c.coroots.end())) != n)
    throw DomainError("DependentCoroots", "coroots are not free");
  return RootDatum(gcm, c);
}

std::optional<Vec> q_coords(const RootDatum& d, const Vec& v) { return d.q_coords(v); }

bool dominance_leq(const RootDatum& d, const Vec& x, const Vec& y) {
  auto q = d.q_coords(vsub(y, x));
  if (!q) return false;
  return std::all_of(q->begin(), q->end(), [](Int c) { return c >= 0; });
}

Int height(const Vec& q) {
  Int s = 0;
  for (Int c : q) s = checked_add(s, c);
  return s;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Finite:
      return "Finite";
    case Kind::Affine:
      return "Affine";
    default:
      return "Indefinite";
  }
}

namespace {

std::vector<std::vector<size_t>> graph_components(const GCM& gcm, const std::vector<size_t>& subset) {
  std::vector<std::vector<size_t>> out;
  std::vector<bool> seen(gcm.size(), false);
  for (size_t s : subset) {
    if (seen[s]) continue;
    std::vector<size_t> comp{s}, stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j : subset)
        if (!seen[j] && gcm.linked(i, j)) {
          seen[j] = true;
          comp.push_back(j);
          stack.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Kac trichotomy for an indecomposable block: Finite iff some u > 0 has Bu > 0,
// Affine iff some u > 0 has Bu = 0. Both are posed as x >= 0 with u = 1 + x.
Kind block_kind(const Mat& b) {
  size_t k = b.size();
  QVec b_one(k, Rational(0));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) b_one[i] += b[i][j];
  QMat fin(k, QVec(2 * k, Rational(0)));
  QVec fin_rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) fin[i][j] = b[i][j];
    fin[i][k + i] = -1;
    fin_rhs[i] = 1 - b_one[i];
  }
  if (nonneg_solution(fin, fin_rhs)) return Kind::Finite;
  QMat aff = to_rational(b);
  QVec aff_rhs(k);
  for (size_t i = 0; i < k; ++i) aff_rhs[i] = -b_one[i];
  if (nonneg_solution(aff, aff_rhs)) return Kind::Affine;
  return Kind::Indefinite;
}

Mat block_of(const GCM& gcm, const std::vector<size_t>& idx) {
  Mat b(idx.size(), Vec(idx.size()));
  for (size_t r = 0; r < idx.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c) b[r][c] = gcm.a[idx[r]][idx[c]];
  return b;
}

}  // namespace

std::vector<Component> classify_submatrix(const GCM& gcm, const std::vector<size_t>& subset) {
  std::vector<Component> out;
  for (auto& idx : graph_components(gcm, subset)) {
    Component c;
    c.indices = idx;
    Mat b = block_of(gcm, idx);
    c.kind = block_kind(b);
    if (c.kind == Kind::Affine) {
      auto ker = integer_kernel(b, idx.size());
      Vec u = ker.at(0);
      if (std::any_of(u.begin(), u.end(), [](Int x) { return x < 0; }))
        for (auto& x : u) x = -x;
      c.delta_labels = u;
    }
    out.push_back(std::move(c));
  }
  return out;
}

ComponentReport classify_components(const RootDatum& d) {
  std::vector<size_t> all(d.n());
  std::iota(all.begin(), all.end(), 0);
  ComponentReport rep;
  rep.components = classify_submatrix(d.gcm(), all);
  rep.component_of.assign(d.n(), 0);
  for (size_t k = 0; k < rep.components.size(); ++k) {
    Component& c = rep.components[k];
    Mat forms;
    for (size_t i : c.indices) {
      rep.component_of[i] = k;
      forms.push_back(d.root(i));
    }
    c.inessential_basis = integer_kernel(forms, d.rank_y());
    if (c.kind == Kind::Affine) {
      c.delta.assign(d.rank_y(), 0);
      for (size_t r = 0; r < c.indices.size(); ++r) c.delta = vaxpy(c.delta, c.delta_labels[r], d.root(c.indices[r]));
    }
  }
  return rep;
}

Int alpha_image_index(const RootDatum& d, size_t i) {
  Int g = 0;
  for (Int x : d.root(i)) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) throw DomainError("ZeroForm", "alpha_" + std::to_string(i) + " vanishes on Y");
  return g;
}

}  // namespace kmh
