#include "kmhecke/linalg.hpp"

#include <algorithm>
#include <utility>

namespace kmh {

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(v[k]);
  }
  return s + ")";
}

QMat to_rational(const Mat& m) {
  QMat q(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (Int x : m[i]) q[i].emplace_back(x);
  return q;
}

std::vector<size_t> rref(QMat& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(const Mat& m) {
  QMat q = to_rational(m);
  return rref(q).size();
}

std::optional<QVec> solve_rational(const Mat& m, const Vec& b) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  QMat aug = to_rational(m);
  for (size_t i = 0; i < rows; ++i) aug[i].emplace_back(b[i]);
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  QVec x(cols, Rational(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
  return x;
}

namespace {

using BVec = std::vector<BigInt>;

// Column-reduces the rows of `m` (given as d columns of length rows) in place,
// applying the same column operations to `u`; returns the number of pivots.
size_t column_reduce(std::vector<BVec>& cols, std::vector<BVec>& u, size_t rows,
                     std::vector<size_t>* pivot_rows) {
  size_t d = cols.size(), piv = 0;
  for (size_t r = 0; r < rows && piv < d; ++r) {
    for (;;) {
      size_t best = d;
      for (size_t c = piv; c < d; ++c)
        if (cols[c][r] != 0 && (best == d || abs(cols[c][r]) < abs(cols[best][r]))) best = c;
      if (best == d) break;
      std::swap(cols[piv], cols[best]);
      std::swap(u[piv], u[best]);
      bool done = true;
      for (size_t c = piv + 1; c < d; ++c) {
        if (cols[c][r] == 0) continue;
        BigInt q = cols[c][r] / cols[piv][r];
        for (size_t k = 0; k < rows; ++k) cols[c][k] -= q * cols[piv][k];
        for (size_t k = 0; k < u[c].size(); ++k) u[c][k] -= q * u[piv][k];
        if (cols[c][r] != 0) done = false;
      }
      if (done) break;
    }
    bool nonzero = false;
    for (size_t c = piv; c < d; ++c)
      if (cols[c][r] != 0) nonzero = true;
    if (nonzero) {
      if (pivot_rows) pivot_rows->push_back(r);
      ++piv;
    }
  }
  return piv;
}

Int to_int(const BigInt& x) {
  if (x > BigInt(INT64_MAX) || x < BigInt(INT64_MIN)) throw DomainError("Overflow", "lattice basis entry");
  return static_cast<Int>(x);
}

}  // namespace

std::vector<Vec> integer_kernel(const Mat& m, size_t d) {
  size_t rows = m.size();
  std::vector<BVec> cols(d, BVec(rows)), u(d, BVec(d, 0));
  for (size_t c = 0; c < d; ++c) {
    for (size_t r = 0; r < rows; ++r) cols[c][r] = m[r][c];
    u[c][c] = 1;
  }
  size_t piv = column_reduce(cols, u, rows, nullptr);
  std::vector<Vec> basis;
  for (size_t c = piv; c < d; ++c) {
    Vec v(d);
    for (size_t k = 0; k < d; ++k) v[k] = to_int(u[c][k]);
    basis.push_back(v);
  }
  return basis;
}

std::vector<Vec> saturate(const std::vector<Vec>& gens, size_t d) {
  Mat g(gens.begin(), gens.end());
  auto perp = integer_kernel(g, d);
  Mat p(perp.begin(), perp.end());
  return integer_kernel(p, d);
}

IntLattice::IntLattice(const std::vector<Vec>& gens, size_t d) : d_(d) {
  std::vector<BVec> cols;
  for (const auto& g : gens) cols.emplace_back(g.begin(), g.end());
  std::vector<BVec> u(cols.size());
  size_t piv = column_reduce(cols, u, d, &pivot_);
  for (size_t c = 0; c < piv; ++c) {
    Vec v(d);
    for (size_t k = 0; k < d; ++k) v[k] = to_int(cols[c][k]);
    basis_.push_back(v);
  }
}

bool IntLattice::contains(const Vec& v) const {
  BVec w(v.begin(), v.end());
  size_t j = 0;
  for (size_t r = 0; r < d_; ++r) {
    if (j < pivot_.size() && pivot_[j] == r) {
      BigInt p = basis_[j][r];
      if (w[r] % p != 0) return false;
      BigInt q = w[r] / p;
      for (size_t k = 0; k < d_; ++k) w[k] -= q * basis_[j][k];
      ++j;
    } else if (w[r] != 0) {
      return false;
    }
  }
  return true;
}

std::optional<QVec> nonneg_solution(const QMat& a, const QVec& b) {
  size_t m = a.size();
  size_t k = m ? a[0].size() : 0;
  size_t width = k + m;
  // Tableau rows: [A | I | b] with b >= 0.
  QMat t(m, QVec(width + 1, Rational(0)));
  for (size_t i = 0; i < m; ++i) {
    bool neg = b[i] < 0;
    for (size_t j = 0; j < k; ++j) t[i][j] = neg ? -a[i][j] : a[i][j];
    t[i][k + i] = 1;
    t[i][width] = neg ? -b[i] : b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = k + i;
  // Reduced costs for minimizing the sum of artificials.
  QVec cost(width + 1, Rational(0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= width; ++j)
      if (j < k || j == width) cost[j] -= t[i][j];
  for (;;) {
    size_t enter = width;
    for (size_t j = 0; j < width; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    size_t leave = m;
    Rational best;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot occur for phase one
    Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (size_t j = 0; j <= width; ++j) t[i][j] -= f * t[leave][j];
    }
    Rational f = cost[enter];
    for (size_t j = 0; j <= width; ++j) cost[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  if (cost[width] != 0) return std::nullopt;
  QVec x(k, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < k) x[basis[i]] = t[i][width];
  return x;
}

}  // namespace kmh
