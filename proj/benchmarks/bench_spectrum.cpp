#include <benchmark/benchmark.h>

#include "diffspec/cyclotomy.hpp"
#include "diffspec/derivative.hpp"
#include "diffspec/search.hpp"

using namespace diffspec;

namespace {

void BM_SpectrumBruteforce(benchmark::State& state) {
  const u64 p = state.range(0);
  const unsigned n = static_cast<unsigned>(state.range(1));
  FieldCtx f = build_field(p, n);
  const u64 d = thm1_exponent(p, n, 2).d;
  for (auto _ : state) {
    Spectrum s = spectrum_bruteforce(f, d);
    benchmark::DoNotOptimize(s.delta());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<i64>(f.q()));
}
BENCHMARK(BM_SpectrumBruteforce)->Args({5, 3})->Args({7, 3})->Args({5, 7})->Args({7, 7})
    ->Unit(benchmark::kMillisecond);

void BM_BuildPartition(benchmark::State& state) {
  FieldCtx f = build_field(7, 4);
  for (auto _ : state) {
    CyclotomicPartition part = build_partition(f);
    benchmark::DoNotOptimize(part.numbers[0]);
  }
}
BENCHMARK(BM_BuildPartition)->Unit(benchmark::kMillisecond);

void BM_RestrictedImages(benchmark::State& state) {
  FieldCtx f = build_field(7, 3);
  CyclotomicPartition part = build_partition(f);
  for (auto _ : state) {
    DerivativeImageAnalysis a = restricted_images(f, 4, part);
    benchmark::DoNotOptimize(a.image_size(0, 0));
  }
}
BENCHMARK(BM_RestrictedImages)->Unit(benchmark::kMillisecond);

void BM_SearchExponents(benchmark::State& state) {
  FieldCtx f = build_field(3, 4);
  SearchOptions so;
  so.max_delta = 2;
  for (auto _ : state) {
    auto res = search_exponents(f, so);
    benchmark::DoNotOptimize(res.size());
  }
}
BENCHMARK(BM_SearchExponents)->Unit(benchmark::kMillisecond);

void BM_VerifyLemma11(benchmark::State& state) {
  FieldCtx f = build_field(11, 3);
  CyclotomicPartition part = build_partition(f);
  for (auto _ : state) {
    Lemma11Report rep = verify_lemma11(f, 1, part);
    benchmark::DoNotOptimize(rep.checked);
  }
}
BENCHMARK(BM_VerifyLemma11)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
