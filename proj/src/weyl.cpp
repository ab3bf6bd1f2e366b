#include "kmhecke/weyl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "kmhecke/linalg.hpp"

namespace kmh {

const char* status_name(TitsStatus s) {
  switch (s) {
    case TitsStatus::InTitsCone:
      return "InTitsCone";
    case TitsStatus::NotInTitsCone:
      return "NotInTitsCone";
    default:
      return "Unknown";
  }
}

namespace {

Vec flatten(const Mat& m) {
  Vec out;
  for (const auto& r : m) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// Sign of a real root given by its simple-root coordinates (column `j` of `m`).
int root_sign(const Mat& m, size_t j) {
  for (const auto& row : m) {
    if (row[j] > 0) return 1;
    if (row[j] < 0) return -1;
  }
  return 0;
}

// m <- m * S_i where S_i is the action of r_i on Q (column operation).
void right_apply_q(Mat& m, const GCM& a, size_t i) {
  size_t n = a.size();
  for (auto& row : m) {
    Int ci = row[i];
    if (ci == 0) continue;
    for (size_t j = 0; j < n; ++j)
      if (a.a[i][j] != 0) row[j] = checked_add(row[j], -checked_mul(a.a[i][j], ci));
  }
}

}  // namespace

WeylGroup::WeylGroup(DatumPtr datum) : datum_(std::move(datum)), report_(classify_components(*datum_)) {
  size_t n = datum_->n(), d = datum_->rank_y();
  for (size_t i = 0; i < n; ++i) {
    Mat m = identity_matrix(d);
    const Vec& cv = datum_->coroot(i);
    const Vec& rt = datum_->root(i);
    for (size_t k = 0; k < d; ++k)
      for (size_t l = 0; l < d; ++l) m[k][l] = checked_add(m[k][l], -checked_mul(cv[k], rt[l]));
    y_refl_.push_back(m);
    Mat s = identity_matrix(n);
    right_apply_q(s, datum_->gcm(), i);
    q_refl_.push_back(s);
  }
  id_of(identity());
}

Word WeylGroup::reduced_word_of(Mat cur) const {
  Word word;
  size_t n = datum_->n();
  for (;;) {
    size_t i = n;
    for (size_t j = 0; j < n; ++j)
      if (root_sign(cur, j) < 0) {
        i = j;
        break;
      }
    if (i == n) break;
    word.push_back(static_cast<int>(i));
    right_apply_q(cur, datum_->gcm(), i);
    if (word.size() > 10000000) throw DomainError("Internal", "descent stripping did not terminate");
  }
  return word;
}

WeylElement WeylGroup::identity() const {
  size_t n = datum_->n(), d = datum_->rank_y();
  return WeylElement{identity_matrix(d), identity_matrix(d), identity_matrix(n), identity_matrix(n), {}};
}

WeylElement WeylGroup::simple_reflection(size_t i) const {
  if (i >= n()) throw DomainError("IndexOutOfRange", "simple reflection " + std::to_string(i));
  return WeylElement{y_refl_[i], y_refl_[i], q_refl_[i], q_refl_[i], {static_cast<int>(i)}};
}

WeylElement WeylGroup::from_word(const Word& w) const {
  WeylElement e = identity();
  for (int i : w) {
    if (i < 0 || static_cast<size_t>(i) >= n()) throw DomainError("IndexOutOfRange", "letter " + std::to_string(i));
    e.y = matmul(e.y, y_refl_[i]);
    e.y_inv = matmul(y_refl_[i], e.y_inv);
    right_apply_q(e.q, datum_->gcm(), i);
    e.q_inv = matmul(q_refl_[i], e.q_inv);
  }
  e.word = reduced_word_of(e.q_inv);
  return e;
}

WeylElement WeylGroup::multiply(const WeylElement& a, const WeylElement& b) const {
  WeylElement e{matmul(a.y, b.y), matmul(b.y_inv, a.y_inv), matmul(a.q, b.q), matmul(b.q_inv, a.q_inv), {}};
  e.word = reduced_word_of(e.q_inv);
  return e;
}

WeylElement WeylGroup::inverse(const WeylElement& w) const {
  WeylElement e{w.y_inv, w.y, w.q_inv, w.q, {}};
  e.word = reduced_word_of(e.q_inv);
  return e;
}

WeylElement WeylGroup::left_mul(size_t i, const WeylElement& w) const { return multiply(simple_reflection(i), w); }

WeylElement WeylGroup::right_mul(const WeylElement& w, size_t i) const { return multiply(w, simple_reflection(i)); }

bool WeylGroup::is_left_descent(const WeylElement& w, size_t i) const { return root_sign(w.q_inv, i) < 0; }

bool WeylGroup::is_right_descent(const WeylElement& w, size_t i) const { return root_sign(w.q, i) < 0; }

std::vector<size_t> WeylGroup::left_descents(const WeylElement& w) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < n(); ++i)
    if (is_left_descent(w, i)) out.push_back(i);
  return out;
}

Vec WeylGroup::reflect(size_t i, const Vec& v) const {
  Int p = datum_->pair(i, v);
  if (p == 0) return v;
  return vaxpy(v, -p, datum_->coroot(i));
}

bool WeylGroup::bruhat_leq(const WeylElement& u0, const WeylElement& w0) const {
  WeylElement u = u0, w = w0;
  while (w.length() > 0) {
    if (u.length() > w.length()) return false;
    if (u.length() == 0) return true;
    size_t s = static_cast<size_t>(w.word[0]);
    if (is_left_descent(u, s)) u = left_mul(s, u);
    w = left_mul(s, w);
  }
  return u.length() == 0;
}

std::vector<Word> WeylGroup::all_reduced_words(const WeylElement& w, size_t cap) const {
  std::map<Vec, std::vector<Word>> memo;
  std::function<const std::vector<Word>&(const WeylElement&)> rec = [&](const WeylElement& x) -> const std::vector<Word>& {
    Vec key = flatten(x.y);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Word> out;
    if (x.length() == 0) {
      out.push_back({});
    } else {
      for (size_t i : left_descents(x)) {
        const auto& tails = rec(left_mul(i, x));
        for (const auto& t : tails) {
          Word word{static_cast<int>(i)};
          word.insert(word.end(), t.begin(), t.end());
          out.push_back(std::move(word));
          if (out.size() > cap) throw BudgetExceeded("reduced-word enumeration", static_cast<long long>(cap));
        }
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  std::vector<Word> words = rec(w);
  std::sort(words.begin(), words.end());
  return words;
}

std::vector<WeylElement> WeylGroup::bruhat_interval(const WeylElement& w) const {
  std::map<Vec, WeylElement> acc;
  WeylElement e = identity();
  acc.emplace(flatten(e.y), e);
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    std::vector<WeylElement> add;
    for (const auto& [k, x] : acc) add.push_back(left_mul(static_cast<size_t>(*it), x));
    for (auto& x : add) acc.emplace(flatten(x.y), std::move(x));
  }
  std::vector<WeylElement> out;
  for (auto& [k, x] : acc) out.push_back(std::move(x));
  std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
    return a.length() != b.length() ? a.length() < b.length() : a.word < b.word;
  });
  return out;
}

DominantReport WeylGroup::dominant_representative(const Vec& lambda, size_t budget) const {
  const RootDatum& d = *datum_;
  DominantReport rep;
  rep.minimizer = identity();
  Vec p = d.pairings(lambda);
  bool budgeted = false;
  for (const auto& c : report_.components) {
    if (c.kind == Kind::Affine) {
      Int level = dot(c.delta, lambda);
      bool inessential = std::all_of(c.indices.begin(), c.indices.end(), [&](size_t i) { return p[i] == 0; });
      if (level < 0 || (level == 0 && !inessential)) {
        rep.status = TitsStatus::NotInTitsCone;
        rep.dominant = lambda;
        return rep;
      }
    } else if (c.kind == Kind::Indefinite) {
      for (size_t i : c.indices)
        if (p[i] != 0) budgeted = true;
    }
  }
  Vec cur = lambda;
  Word applied;
  const GCM& a = d.gcm();
  for (;;) {
    size_t i = d.n();
    for (size_t j = 0; j < d.n(); ++j)
      if (p[j] < 0) {
        i = j;
        break;
      }
    if (i == d.n()) break;
    if (budgeted && applied.size() >= budget) {
      rep.status = TitsStatus::Unknown;
      rep.dominant = cur;
      rep.steps = applied.size();
      return rep;
    }
    Int pi = p[i];
    try {
      cur = vaxpy(cur, -pi, d.coroot(i));
      for (size_t j = 0; j < d.n(); ++j)
        if (a.a[i][j] != 0) p[j] = checked_add(p[j], -checked_mul(pi, a.a[i][j]));
    } catch (const DomainError&) {
      // coordinates left int64 on an indefinite climb: undecided
      if (!budgeted) throw;
      rep.status = TitsStatus::Unknown;
      rep.dominant = cur;
      rep.steps = applied.size();
      return rep;
    }
    applied.push_back(static_cast<int>(i));
  }
  // lambda = r_{i1} ... r_{ik} cur; shorten within the stabilizer coset of cur.
  WeylElement w = from_word(applied);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t j = 0; j < d.n(); ++j)
      if (p[j] == 0 && is_right_descent(w, j)) {
        w = right_mul(w, j);
        changed = true;
      }
  }
  rep.dominant = cur;
  rep.minimizer = w;
  rep.status = TitsStatus::InTitsCone;
  rep.steps = applied.size();
  return rep;
}

TitsStatus WeylGroup::tits_status(const Vec& lambda, size_t budget) const {
  return dominant_representative(lambda, budget).status;
}

namespace {

struct OrbitNode {
  Vec v;
  size_t depth;
  Int drop;
};

std::vector<size_t> generator_list(const OrbitCaps& caps, size_t n) {
  if (!caps.generators.empty()) return caps.generators;
  std::vector<size_t> g(n);
  for (size_t i = 0; i < n; ++i) g[i] = i;
  return g;
}

}  // namespace

OrbitResult WeylGroup::orbit_enumerate_serial(const Vec& lambda, const OrbitCaps& caps) const {
  const RootDatum& d = *datum_;
  auto gens = generator_list(caps, d.n());
  std::set<Vec> seen{lambda};
  std::deque<OrbitNode> queue{{lambda, 0, 0}};
  bool complete = true;
  while (!queue.empty()) {
    OrbitNode node = std::move(queue.front());
    queue.pop_front();
    for (size_t i : gens) {
      Int p = d.pair(i, node.v);
      if (p == 0) continue;
      Vec nv = vaxpy(node.v, -p, d.coroot(i));
      if (seen.count(nv)) continue;
      Int drop = checked_add(node.drop, p);
      if (node.depth + 1 > caps.max_length || drop > caps.max_height_drop) {
        complete = false;
        continue;
      }
      if (seen.size() >= caps.max_count) {
        complete = false;
        queue.clear();
        break;
      }
      seen.insert(nv);
      queue.push_back({std::move(nv), node.depth + 1, drop});
    }
  }
  return {std::vector<Vec>(seen.begin(), seen.end()), complete};
}

OrbitResult WeylGroup::orbit_enumerate(const Vec& lambda, const OrbitCaps& caps) const {
  const RootDatum& d = *datum_;
  auto gens = generator_list(caps, d.n());
  std::set<Vec> seen{lambda};
  std::vector<OrbitNode> frontier{{lambda, 0, 0}};
  bool complete = true;
  while (!frontier.empty()) {
    // Neighbor generation is independent per frontier node; the merge below
    // replays the serial BFS order so results match exactly.
    std::vector<std::vector<std::pair<Vec, Int>>> cand(frontier.size());
    const long long fsz = static_cast<long long>(frontier.size());
#pragma omp parallel for schedule(dynamic, 16) if (fsz > 64)
    for (long long f = 0; f < fsz; ++f) {
      const OrbitNode& node = frontier[f];
      for (size_t i : gens) {
        Int p = d.pair(i, node.v);
        if (p == 0) continue;
        cand[f].emplace_back(vaxpy(node.v, -p, d.coroot(i)), p);
      }
    }
    std::vector<OrbitNode> next;
    bool stop = false;
    for (size_t f = 0; f < frontier.size() && !stop; ++f) {
      for (auto& [nv, p] : cand[f]) {
        if (seen.count(nv)) continue;
        Int drop = checked_add(frontier[f].drop, p);
        if (frontier[f].depth + 1 > caps.max_length || drop > caps.max_height_drop) {
          complete = false;
          continue;
        }
        if (seen.size() >= caps.max_count) {
          complete = false;
          stop = true;
          break;
        }
        seen.insert(nv);
        next.push_back({nv, frontier[f].depth + 1, drop});
      }
    }
    if (stop) break;
    frontier = std::move(next);
  }
  return {std::vector<Vec>(seen.begin(), seen.end()), complete};
}

bool WeylGroup::orbit_is_finite(const Vec& lambda, size_t budget) const {
  TitsStatus s = tits_status(lambda, budget);
  if (s == TitsStatus::Unknown) throw DomainError("TitsConeUndecided", "budget exhausted for " + to_string(lambda));
  if (s == TitsStatus::NotInTitsCone) throw DomainError("NotInTitsCone", to_string(lambda));
  for (const auto& c : report_.components) {
    if (c.kind == Kind::Finite) continue;
    for (size_t i : c.indices)
      if (datum_->pair(i, lambda) != 0) return false;
  }
  return true;
}

WId WeylGroup::id_of(const WeylElement& w) const {
  Vec key = flatten(w.y);
  {
    std::shared_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  WId id = static_cast<WId>(elems_.size());
  elems_.push_back(w);
  lmul_.emplace_back(datum_->n(), -1);
  index_.emplace(std::move(key), id);
  return id;
}

const WeylElement& WeylGroup::element(WId id) const {
  std::shared_lock lock(mu_);
  return elems_.at(id);
}

WId WeylGroup::lmul_id(size_t i, WId w) const {
  {
    std::shared_lock lock(mu_);
    int64_t c = lmul_.at(w)[i];
    if (c >= 0) return static_cast<WId>(c);
  }
  WId r = id_of(left_mul(i, element(w)));
  std::unique_lock lock(mu_);
  lmul_[w][i] = r;
  return r;
}

Vec face_point(const RootDatum& d, const std::vector<size_t>& j_zero) {
  Mat forms;
  Vec target;
  for (size_t i = 0; i < d.n(); ++i) {
    forms.push_back(d.root(i));
    target.push_back(std::find(j_zero.begin(), j_zero.end(), i) == j_zero.end() ? 1 : 0);
  }
  auto sol = solve_rational(forms, target);
  if (!sol) throw DomainError("Internal", "roots are not free");
  BigInt den = 1;
  for (const auto& x : *sol) den = boost::multiprecision::lcm(den, denominator(x));
  Vec u;
  for (const auto& x : *sol) u.push_back(static_cast<Int>(numerator(x * Rational(den))));
  return u;
}

WitnessResult infinite_orbit_witness(const WeylGroup& W, const std::vector<size_t>& j_zero_in,
                                     const std::optional<Vec>& fp, size_t probe_cap) {
  const RootDatum& d = W.datum();
  std::vector<size_t> j_zero = j_zero_in;
  std::sort(j_zero.begin(), j_zero.end());
  j_zero.erase(std::unique(j_zero.begin(), j_zero.end()), j_zero.end());
  for (size_t j : j_zero)
    if (j >= d.n()) throw DomainError("IndexOutOfRange", "face index " + std::to_string(j));
  auto in_zero = [&](size_t i) { return std::binary_search(j_zero.begin(), j_zero.end(), i); };

  auto sub = classify_submatrix(d.gcm(), j_zero);
  bool spherical = std::all_of(sub.begin(), sub.end(), [](const Component& c) { return c.kind == Kind::Finite; });
  if (spherical) throw DomainError("FaceIsSpherical", "W_J is finite");
  if (j_zero.size() == d.n()) throw DomainError("FaceIsMinimal", "J_pos is empty");

  // Work inside a component of A that meets both a non-finite part of J_zero and J_pos.
  const auto& rep = W.components();
  std::optional<size_t> comp;
  for (const auto& c : sub) {
    if (c.kind == Kind::Finite) continue;
    size_t k = rep.component_of[c.indices[0]];
    const auto& idx = rep.components[k].indices;
    if (std::any_of(idx.begin(), idx.end(), [&](size_t i) { return !in_zero(i); })) {
      comp = k;
      break;
    }
  }
  if (!comp) throw DomainError("FaceIsMinimal", "every non-spherical part is minimal in its component");
  const auto& cidx = rep.components[*comp].indices;

  Vec u = fp ? *fp : face_point(d, j_zero);
  for (size_t i = 0; i < d.n(); ++i) {
    Int p = d.pair(i, u);
    if (in_zero(i) ? p != 0 : p <= 0) throw DomainError("NotAFacePoint", to_string(u));
  }

  OrbitCaps probe;
  probe.max_count = probe_cap;
  probe.generators = j_zero;

  // Breadth-first order from J_pos inside the component; first index with an infinite W_J-orbit of its coroot.
  std::vector<size_t> order, parent(d.n(), d.n());
  std::vector<bool> seen(d.n(), false);
  for (size_t i : cidx)
    if (!in_zero(i)) {
      order.push_back(i);
      seen[i] = true;
    }
  for (size_t h = 0; h < order.size(); ++h)
    for (size_t j : cidx)
      if (!seen[j] && d.gcm().linked(order[h], j)) {
        seen[j] = true;
        parent[j] = order[h];
        order.push_back(j);
      }
  std::optional<size_t> k;
  for (size_t c : order)
    if (!W.orbit_enumerate(d.coroot(c), probe).complete) {
      k = c;
      break;
    }
  if (!k) throw DomainError("WitnessNotFound", "no coroot with an infinite orbit within the probe cap");

  std::vector<size_t> path;
  for (size_t c = *k; c != d.n(); c = parent[c]) path.push_back(c);
  std::reverse(path.begin(), path.end());

  WitnessResult res;
  res.k = *k;
  res.path = path;
  res.face_point = u;
  WeylElement w = W.identity();
  Vec x = u;
  auto last_nonzero = [&](const Vec& v) {
    size_t m = path.size();
    for (size_t t = path.size(); t-- > 0;)
      if (d.pair(path[t], v) != 0) {
        m = t;
        break;
      }
    return m;
  };
  for (size_t m = last_nonzero(x); m + 1 < path.size(); m = last_nonzero(x)) {
    if (m == path.size()) throw DomainError("Internal", "path walk lost the nonzero pairing");
    x = W.reflect(path[m], x);
    w = W.left_mul(path[m], w);
  }
  if (W.orbit_enumerate(x, probe).complete) {
    x = W.reflect(*k, x);
    w = W.left_mul(*k, w);
  }
  res.w = w;
  res.image = x;
  return res;
}

}  // namespace kmh
