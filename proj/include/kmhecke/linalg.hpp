#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kmhecke/lattice.hpp"

namespace kmh {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

QMat to_rational(const Mat& m);

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(QMat& m);

size_t rank(const Mat& m);

// Some rational x with m x = b, or nothing when the system is inconsistent.
std::optional<QVec> solve_rational(const Mat& m, const Vec& b);

// Z-basis of {x in Z^d : m x = 0}, d = number of columns (m may have zero rows).
std::vector<Vec> integer_kernel(const Mat& m, size_t d);

// Z-basis of the saturation (Q-span of gens) intersected with Z^d.
std::vector<Vec> saturate(const std::vector<Vec>& gens, size_t d);

// Sublattice of Z^d spanned by a generating set; decides integral membership.
class IntLattice {
 public:
  IntLattice(const std::vector<Vec>& gens, size_t d);
  bool contains(const Vec& v) const;
  const std::vector<Vec>& basis() const { return basis_; }

 private:
  size_t d_;
  std::vector<Vec> basis_;     // column-echelon basis
  std::vector<size_t> pivot_;  // pivot coordinate of each basis vector
};

// Some x >= 0 with a x = b over Q, or nothing (exact two-phase simplex, Bland's rule).
std::optional<QVec> nonneg_solution(const QMat& a, const QVec& b);

}  // namespace kmh
