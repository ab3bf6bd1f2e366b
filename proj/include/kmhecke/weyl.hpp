#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "kmhecke/root_system.hpp"

namespace kmh {

struct VecHash {
  size_t operator()(const Vec& v) const noexcept {
    uint64_t h = 1469598103934665603ull;
    for (Int x : v) {
      h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

// Element of W^v: its action on Y (canonical), its action on the root lattice Q
// and that of its inverse (columns are images of simple roots in root
// coordinates), and one reduced word.
struct WeylElement {
  Mat y, y_inv;
  Mat q, q_inv;
  Word word;
  size_t length() const { return word.size(); }
  bool operator==(const WeylElement& o) const { return y == o.y; }
};

using WId = std::uint32_t;

enum class TitsStatus { InTitsCone, NotInTitsCone, Unknown };
const char* status_name(TitsStatus s);

struct DominantReport {
  Vec dominant;
  WeylElement minimizer;
  TitsStatus status = TitsStatus::Unknown;
  size_t steps = 0;
};

struct OrbitCaps {
  size_t max_length = std::numeric_limits<size_t>::max();
  Int max_height_drop = std::numeric_limits<Int>::max();
  size_t max_count = 100000;
  std::vector<size_t> generators;  // empty means all simple reflections
};

struct OrbitResult {
  std::vector<Vec> points;  // sorted lexicographically
  bool complete = false;
};

constexpr size_t kDefaultTitsBudget = 1000;
constexpr size_t kDefaultWordCap = 10000;

class WeylGroup {
 public:
  explicit WeylGroup(DatumPtr datum);

  const RootDatum& datum() const { return *datum_; }
  const DatumPtr& datum_ptr() const { return datum_; }
  const ComponentReport& components() const { return report_; }
  size_t n() const { return datum_->n(); }

  WeylElement identity() const;
  WeylElement simple_reflection(size_t i) const;
  WeylElement from_word(const Word& w) const;  // any word; stored word is reduced
  WeylElement multiply(const WeylElement& a, const WeylElement& b) const;
  WeylElement inverse(const WeylElement& w) const;
  WeylElement left_mul(size_t i, const WeylElement& w) const;
  WeylElement right_mul(const WeylElement& w, size_t i) const;

  bool is_left_descent(const WeylElement& w, size_t i) const;
  bool is_right_descent(const WeylElement& w, size_t i) const;
  std::vector<size_t> left_descents(const WeylElement& w) const;

  Vec act(const WeylElement& w, const Vec& v) const { return matvec(w.y, v); }
  Vec reflect(size_t i, const Vec& v) const;

  bool bruhat_leq(const WeylElement& u, const WeylElement& w) const;
  std::vector<Word> all_reduced_words(const WeylElement& w, size_t cap = kDefaultWordCap) const;
  // All t <= w in Bruhat order.
  std::vector<WeylElement> bruhat_interval(const WeylElement& w) const;

  DominantReport dominant_representative(const Vec& lambda, size_t budget = kDefaultTitsBudget) const;
  TitsStatus tits_status(const Vec& lambda, size_t budget = kDefaultTitsBudget) const;

  OrbitResult orbit_enumerate(const Vec& lambda, const OrbitCaps& caps) const;
  OrbitResult orbit_enumerate_serial(const Vec& lambda, const OrbitCaps& caps) const;

  // Cor-5.14-style test on lambda in Y^+. Throws TitsConeUndecided / NotInTitsCone.
  bool orbit_is_finite(const Vec& lambda, size_t budget = kDefaultTitsBudget) const;

  // Interning of elements for use as compact keys.
  WId id_of(const WeylElement& w) const;
  const WeylElement& element(WId id) const;
  WId lmul_id(size_t i, WId w) const;
  size_t length_of(WId id) const { return element(id).length(); }
  static constexpr WId kIdentity = 0;

 private:
  Word reduced_word_of(Mat q_inv) const;
  Mat y_refl(size_t i) const { return y_refl_[i]; }

  DatumPtr datum_;
  ComponentReport report_;
  std::vector<Mat> y_refl_;  // action of r_i on Y
  std::vector<Mat> q_refl_;  // action of r_i on Q

  mutable std::shared_mutex mu_;
  mutable std::deque<WeylElement> elems_;
  mutable std::unordered_map<Vec, WId, VecHash> index_;
  mutable std::deque<std::vector<int64_t>> lmul_;  // -1 when unknown
};

using WeylPtr = std::shared_ptr<const WeylGroup>;

struct WitnessResult {
  WeylElement w;
  size_t k = 0;            // index whose coroot has an infinite W_J-orbit
  std::vector<size_t> path;
  Vec face_point;          // u
  Vec image;               // w.u
};

// Constructive element w with W_{J_zero}.(w.u) infinite. Throws FaceIsSpherical, FaceIsMinimal.
WitnessResult infinite_orbit_witness(const WeylGroup& W, const std::vector<size_t>& j_zero,
                                     const std::optional<Vec>& face_point = std::nullopt,
                                     size_t probe_cap = 256);

// Integral point u with alpha_i(u)=0 on J_zero and alpha_i(u)>0 elsewhere.
Vec face_point(const RootDatum& d, const std::vector<size_t>& j_zero);

}  // namespace kmh
