#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "kmhecke/lattice.hpp"

namespace kmh {

// Generalized Cartan matrix; indices are 0-based throughout the library.
struct GCM {
  Mat a;
  size_t size() const { return a.size(); }
  Int operator()(size_t i, size_t j) const { return a[i][j]; }
  bool linked(size_t i, size_t j) const { return i != j && a[i][j] != 0; }
};

// Throws DiagonalNotTwo, PositiveOffDiagonal or AsymmetricZero.
GCM validate_gcm(const Mat& m);

struct RealizationData {
  size_t rank_y = 0;
  std::vector<Vec> coroots;  // alpha_i^vee in Z^rank_y
  std::vector<Vec> roots;    // alpha_i as covectors on Z^rank_y
};

class RootDatum {
 public:
  RootDatum(GCM gcm, RealizationData data);

  const GCM& gcm() const { return gcm_; }
  size_t n() const { return gcm_.size(); }
  size_t rank_y() const { return data_.rank_y; }
  const Vec& coroot(size_t i) const { return data_.coroots[i]; }
  const Vec& root(size_t i) const { return data_.roots[i]; }
  const RealizationData& data() const { return data_; }

  Int pair(size_t i, const Vec& v) const { return dot(data_.roots[i], v); }
  Vec pairings(const Vec& v) const;

  // Coordinates of v on the simple coroots when v lies in Q^vee.
  std::optional<Vec> q_coords(const Vec& v) const;
  Vec from_q_coords(const Vec& q) const;

 private:
  GCM gcm_;
  RealizationData data_;
  std::vector<size_t> solve_rows_;  // n rows of the coroot matrix forming an invertible block
  Mat solve_num_;                   // inverse of that block = solve_num_ / solve_den_
  Int solve_den_ = 1;
};

using DatumPtr = std::shared_ptr<const RootDatum>;

// Default path: Kac realization of dimension 2n - rk(A). Custom path validates the data.
// Throws DependentRoots, DependentCoroots, PairingMismatch.
RootDatum build_realization(const GCM& gcm, const std::optional<RealizationData>& custom = std::nullopt);

std::optional<Vec> q_coords(const RootDatum& d, const Vec& v);
bool dominance_leq(const RootDatum& d, const Vec& x, const Vec& y);
Int height(const Vec& q);

enum class Kind { Finite, Affine, Indefinite };
const char* kind_name(Kind k);

struct Component {
  std::vector<size_t> indices;
  Kind kind = Kind::Finite;
  Vec delta_labels;                   // affine only: positive primitive kernel vector of the block
  Vec delta;                          // affine only: sum of labels times roots (a covector)
  std::vector<Vec> inessential_basis; // Z-basis of Y cut out by the component's roots
};

struct ComponentReport {
  std::vector<Component> components;
  std::vector<size_t> component_of;  // index -> position in components
};

ComponentReport classify_components(const RootDatum& d);

// Partition and kinds of the principal submatrix on `subset` (no realization data).
std::vector<Component> classify_submatrix(const GCM& gcm, const std::vector<size_t>& subset);

// g with alpha_i(Y) = gZ. Throws ZeroForm.
Int alpha_image_index(const RootDatum& d, size_t i);

}  // namespace kmh
