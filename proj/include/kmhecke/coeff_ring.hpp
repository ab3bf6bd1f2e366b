#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "kmhecke/linalg.hpp"
#include "kmhecke/root_system.hpp"

namespace kmh {

// Partition of the 2n parameter symbols sigma_i, sigma_i' into classes.
// Symbol 2i is sigma_i and symbol 2i+1 is sigma_i'.
struct ParamClasses {
  std::vector<size_t> sigma;        // class of sigma_i
  std::vector<size_t> sigma_prime;  // class of sigma_i'
  std::vector<std::string> names;   // one per class, from its smallest symbol
  size_t count() const { return names.size(); }
  bool split(size_t i) const { return sigma[i] != sigma_prime[i]; }
};

ParamClasses build_param_ring(const RootDatum& d);

using Exponent = boost::container::small_vector<int32_t, 4>;

// Sparse Laurent polynomial over Z; terms sorted by exponent (lex), no zero coefficients.
class LaurentPoly {
 public:
  using Term = std::pair<Exponent, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(size_t nvars) : nvars_(nvars) {}
  static LaurentPoly constant(size_t nvars, const BigInt& c);
  static LaurentPoly monomial(size_t nvars, Exponent e, const BigInt& c = 1);
  static LaurentPoly var(size_t nvars, size_t k, int32_t power = 1);
  // sigma - sigma^{-1} in class k.
  static LaurentPoly sigma_diff(size_t nvars, size_t k);
  static LaurentPoly from_terms(size_t nvars, std::vector<Term> terms);

  size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  size_t size() const { return terms_.size(); }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const BigInt& c) const;
  LaurentPoly pow(unsigned k) const;
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Exact quotient when o divides this in the Laurent ring, otherwise nothing.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& o) const;

  // Substitute sigma_k -> values[k]. Throws ZeroSpecialization.
  Rational eval_at(const std::vector<BigInt>& values) const;
  // Substitute sigma_k^2 -> values[k]. Throws ZeroSpecialization, OddExponent.
  Rational eval_sq(const std::vector<BigInt>& values) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void pad_to(size_t nv);
  void normalize();

  size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace kmh
