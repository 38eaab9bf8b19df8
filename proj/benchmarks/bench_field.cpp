#include <benchmark/benchmark.h>

#include "diffspec/field.hpp"

using namespace diffspec;

namespace {

FieldCtx make_field(u64 p, unsigned n, ReprHint hint) {
  BuildOptions opts;
  opts.repr = hint;
  return build_field(p, n, opts);
}

void BM_MulLogTable(benchmark::State& state) {
  FieldCtx f = make_field(7, 3, ReprHint::kLogTable);
  u64 a = 5, b = 200;
  for (auto _ : state) {
    FieldElement r = f.mul({a}, {b});
    benchmark::DoNotOptimize(r);
    a = (a + 37) % f.q();
    b = (b + 101) % f.q();
  }
}
BENCHMARK(BM_MulLogTable);

void BM_MulPoly(benchmark::State& state) {
  FieldCtx f = make_field(7, 3, ReprHint::kPoly);
  u64 a = 5, b = 200;
  for (auto _ : state) {
    FieldElement r = f.mul({a}, {b});
    benchmark::DoNotOptimize(r);
    a = (a + 37) % f.q();
    b = (b + 101) % f.q();
  }
}
BENCHMARK(BM_MulPoly);

void BM_PowLogTable(benchmark::State& state) {
  FieldCtx f = make_field(5, 7, ReprHint::kLogTable);
  u64 a = 12345;
  for (auto _ : state) {
    FieldElement r = f.pow({a}, 39063);
    benchmark::DoNotOptimize(r);
    a = (a + 7) % f.q();
    if (a == 0) a = 1;
  }
}
BENCHMARK(BM_PowLogTable);

void BM_AddPacked(benchmark::State& state) {
  FieldCtx f = make_field(7, 7, ReprHint::kLogTable);
  u64 a = 5, b = 823000;
  for (auto _ : state) {
    FieldElement r = f.add({a}, {b});
    benchmark::DoNotOptimize(r);
    a = (a + 37) % f.q();
    b = (b + 101) % f.q();
  }
}
BENCHMARK(BM_AddPacked);

void BM_BuildFieldWithTables(benchmark::State& state) {
  const u64 p = state.range(0);
  const unsigned n = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    FieldCtx f = build_field(p, n);
    benchmark::DoNotOptimize(f.q());
  }
}
BENCHMARK(BM_BuildFieldWithTables)->Args({7, 3})->Args({5, 5})->Args({3, 9});

}  // namespace

BENCHMARK_MAIN();
