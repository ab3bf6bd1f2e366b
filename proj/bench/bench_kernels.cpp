#include <benchmark/benchmark.h>

#include <memory>

#include "kmhecke/completed.hpp"

using namespace kmh;

namespace {

struct Ctx {
  DatumPtr datum;
  WeylPtr weyl;
};

Ctx make(const Mat& a, const std::optional<RealizationData>& r = std::nullopt) {
  Ctx c;
  c.datum = std::make_shared<const RootDatum>(build_realization(validate_gcm(a), r));
  c.weyl = std::make_shared<const WeylGroup>(c.datum);
  return c;
}

const Ctx& affine_a2() {
  static Ctx c = make({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  return c;
}

const Ctx& affine_a1() {
  static Ctx c = make({{2, -2}, {-2, 2}});
  return c;
}

OrbitCaps orbit_caps(benchmark::State& st) {
  OrbitCaps caps;
  caps.max_length = static_cast<size_t>(st.range(0));
  caps.max_count = 1000000;
  return caps;
}

void BM_OrbitSerial(benchmark::State& st) {
  const auto& c = affine_a2();
  auto caps = orbit_caps(st);
  Vec lam(c.datum->rank_y(), 0);
  lam[0] = 1;
  for (auto _ : st) benchmark::DoNotOptimize(c.weyl->orbit_enumerate_serial(lam, caps));
}

void BM_OrbitParallel(benchmark::State& st) {
  const auto& c = affine_a2();
  auto caps = orbit_caps(st);
  Vec lam(c.datum->rank_y(), 0);
  lam[0] = 1;
  for (auto _ : st) benchmark::DoNotOptimize(c.weyl->orbit_enumerate(lam, caps));
}

std::vector<HeckeAlgebra::BasisQuery> queries(const WeylGroup& W, Int range) {
  std::vector<HeckeAlgebra::BasisQuery> qs;
  const auto& d = W.datum();
  std::vector<Word> words = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 0, 1}};
  for (const auto& w : words)
    for (Int x = -range; x <= range; ++x)
      for (Int y = -range; y <= range; ++y) {
        Vec mu(d.rank_y(), 0);
        mu[0] = x;
        mu[1] = y;
        qs.push_back({W.id_of(W.from_word(w)), mu, W.id_of(W.from_word({1}))});
      }
  return qs;
}

void BM_BasisBatchSerial(benchmark::State& st) {
  const auto& c = affine_a1();
  auto qs = queries(*c.weyl, st.range(0));
  for (auto _ : st) {
    HeckeAlgebra h(c.weyl);
    benchmark::DoNotOptimize(h.basis_product_batch_serial(qs));
  }
}

void BM_BasisBatchParallel(benchmark::State& st) {
  const auto& c = affine_a1();
  auto qs = queries(*c.weyl, st.range(0));
  for (auto _ : st) {
    HeckeAlgebra h(c.weyl);
    benchmark::DoNotOptimize(h.basis_product_batch(qs));
  }
}

// Geometric series in Z^{-alpha_1^vee} times a finite element, truncated to a region.
template <bool Parallel>
void BM_MulTruncated(benchmark::State& st) {
  const auto& c = affine_a1();
  auto h = std::make_shared<const HeckeAlgebra>(c.weyl);
  CompletedAlgebra alg(h);
  Int height = st.range(0);
  BLElement series;
  Vec step = c.datum->coroot(1);
  Vec lam(c.datum->rank_y(), 0);
  for (Int k = 0; k <= height; ++k) {
    series.add(lam, WeylGroup::kIdentity, h->scalar(1));
    lam = vsub(lam, step);
  }
  Region target{{Vec(c.datum->rank_y(), 0)}, height, false};
  TruncatedElement a = alg.truncate(series, target);
  a.cert.gens = {Vec(c.datum->rank_y(), 0)};
  BLElement fin = h->mul(h->H(Word{0}), h->Z(c.datum->coroot(0)));
  fin.add(h->H(Word{1, 0}));
  TruncatedElement b = alg.from_finite(fin);
  Region out{{c.datum->coroot(0)}, height / 2, false};
  for (auto _ : st) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(alg.mul(a, b, out, 64));
    else
      benchmark::DoNotOptimize(alg.mul_serial(a, b, out, 64));
  }
}

}  // namespace

BENCHMARK(BM_OrbitSerial)->Arg(6)->Arg(9);
BENCHMARK(BM_OrbitParallel)->Arg(6)->Arg(9);
BENCHMARK(BM_BasisBatchSerial)->Arg(3)->Arg(6);
BENCHMARK(BM_BasisBatchParallel)->Arg(3)->Arg(6);
BENCHMARK_TEMPLATE(BM_MulTruncated, false)->Arg(8)->Arg(16);
BENCHMARK_TEMPLATE(BM_MulTruncated, true)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
