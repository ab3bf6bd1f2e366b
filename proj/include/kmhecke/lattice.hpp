#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmhecke/errors.hpp"

namespace kmh {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;  // row-major
using Word = std::vector<int>;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("Overflow", "lattice addition");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("Overflow", "lattice multiplication");
  return r;
}

inline Vec vadd(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = checked_add(a[k], b[k]);
  return r;
}

inline Vec vsub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = checked_add(a[k], -b[k]);
  return r;
}

inline Vec vscale(Int c, const Vec& a) {
  Vec r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = checked_mul(c, a[k]);
  return r;
}

// r = a + c*b
inline Vec vaxpy(const Vec& a, Int c, const Vec& b) {
  Vec r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = checked_add(a[k], checked_mul(c, b[k]));
  return r;
}

inline Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (size_t k = 0; k < a.size(); ++k) s = checked_add(s, checked_mul(a[k], b[k]));
  return s;
}

inline bool is_zero(const Vec& a) {
  for (Int x : a)
    if (x != 0) return false;
  return true;
}

inline Mat identity_matrix(size_t d) {
  Mat m(d, Vec(d, 0));
  for (size_t k = 0; k < d; ++k) m[k][k] = 1;
  return m;
}

inline Vec matvec(const Mat& m, const Vec& v) {
  Vec r(m.size());
  for (size_t k = 0; k < m.size(); ++k) r[k] = dot(m[k], v);
  return r;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  size_t rows = a.size(), inner = b.size(), cols = inner ? b[0].size() : 0;
  Mat r(rows, Vec(cols, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      Int aik = a[i][k];
      if (aik == 0) continue;
      for (size_t j = 0; j < cols; ++j) r[i][j] = checked_add(r[i][j], checked_mul(aik, b[k][j]));
    }
  return r;
}

std::string to_string(const Vec& v);

}  // namespace kmh
