#include "diffspec/field.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "diffspec/ext_field.hpp"
#include "diffspec/table_cache.hpp"

namespace diffspec {
namespace {

TEST(BuildField, F3IsPrimeFieldWithAlpha2) {
  FieldCtx f = build_field(3, 1);
  EXPECT_EQ(f.q(), 3u);
  EXPECT_EQ(f.params().modulus, (std::vector<u32>{0, 1}));  // modulus x
  EXPECT_EQ(f.alpha().v, 2u);
  EXPECT_EQ(f.element_order(f.alpha()), 2u);
}

TEST(BuildField, F9LexFirstModulusAndAlpha) {
  FieldCtx f = build_field(3, 2);
  EXPECT_EQ(f.params().modulus, (std::vector<u32>{1, 0, 1}));  // x^2 + 1
  EXPECT_EQ(f.alpha().v, 4u);                                  // x + 1
  EXPECT_EQ(f.element_order(f.alpha()), 8u);
}

TEST(BuildField, RejectsNonPrimeAndEvenCharacteristic) {
  EXPECT_THROW(
      {
        try {
          build_field(4, 2);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::kNotPrime);
          throw;
        }
      },
      Error);
  EXPECT_THROW(
      {
        try {
          build_field(2, 3);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::kEvenCharacteristic);
          throw;
        }
      },
      Error);
  EXPECT_THROW(build_field(3, 0), Error);
}

TEST(BuildField, RejectsOverflowingParameters) {
  try {
    build_field(3, 60);
    FAIL() << "expected Overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kOverflow);
  }
}

TEST(BuildField, TableBoundIsEnforcedForLogHint) {
  BuildOptions opts;
  opts.repr = ReprHint::kLogTable;
  opts.table_bound = 5;
  try {
    build_field(3, 2, opts);
    FAIL() << "expected TableBoundExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kTableBoundExceeded);
  }
}

TEST(BuildField, AutoFallsBackToPolyAboveBound) {
  BuildOptions opts;
  opts.table_bound = 5;
  FieldCtx f = build_field(3, 2, opts);
  EXPECT_EQ(f.repr(), Repr::kPoly);
  EXPECT_FALSE(f.has_tables());
}

TEST(ElementAt, EnumeratesCoefficientLexOrder) {
  FieldCtx f = build_field(3, 2);
  // tuples (c0,c1): (0,0),(0,1),(0,2),(1,0),... packed c0 + 3 c1
  const std::vector<u64> expected{0, 3, 6, 1, 4, 7, 2, 5, 8};
  for (u64 r = 0; r < 9; ++r) EXPECT_EQ(f.element_at(r).v, expected[r]) << "rank " << r;
}

TEST(Arith, InverseExamples) {
  FieldCtx f7 = build_field(7, 1);
  EXPECT_EQ(f7.inv({3}).v, 5u);
  EXPECT_THROW(
      {
        try {
          f7.inv(f7.zero());
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::kZeroInverse);
          throw;
        }
      },
      Error);
}

TEST(Arith, PowExamples) {
  FieldCtx f9 = build_field(3, 2);
  EXPECT_EQ(f9.pow({4}, 8), f9.one());  // (x+1)^8 = 1
  FieldCtx f25 = build_field(5, 2);
  for (u64 v = 1; v < 25; ++v) EXPECT_EQ(f25.pow({v}, 0), f25.one());
  EXPECT_EQ(f25.pow(f25.zero(), 0), f25.one());
  EXPECT_EQ(f25.pow(f25.zero(), 5), f25.zero());
  EXPECT_THROW(f25.pow(f25.zero(), -1), Error);
}

TEST(Arith, SuccIsAddOne) {
  FieldCtx f = build_field(3, 2);
  for (u64 v = 0; v < 9; ++v) EXPECT_EQ(f.succ({v}), f.add({v}, f.one()));
}

TEST(Dlog, Examples) {
  FieldCtx f7 = build_field(7, 1);
  EXPECT_EQ(f7.dlog(f7.alpha()), 1u);
  EXPECT_EQ(f7.dlog(f7.one()), 0u);
  EXPECT_EQ(f7.dlog({6}), 3u);  // 3^3 = 27 = 6 mod 7
  EXPECT_THROW(
      {
        try {
          f7.dlog(f7.zero());
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::kLogOfZero);
          throw;
        }
      },
      Error);
}

TEST(IsSquare, Examples) {
  FieldCtx f7 = build_field(7, 1);
  EXPECT_TRUE(f7.is_square({2}));   // 3^2 = 2 mod 7
  EXPECT_FALSE(f7.is_square({3}));  // squares mod 7 are {1,2,4}
  EXPECT_TRUE(f7.is_square(f7.one()));
  EXPECT_THROW(
      {
        try {
          f7.is_square(f7.zero());
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::kZeroInput);
          throw;
        }
      },
      Error);
}

TEST(IsSquare, PartitionsMultiplicativeGroupEvenly) {
  for (auto [p, n] : {std::pair<u64, unsigned>{7, 1}, {3, 4}, {11, 2}, {13, 1}}) {
    FieldCtx f = build_field(p, n);
    u64 squares = 0;
    for (u64 v = 1; v < f.q(); ++v) squares += f.is_square({v});
    EXPECT_EQ(squares, (f.q() - 1) / 2) << "p=" << p << " n=" << n;
  }
}

TEST(Tables, RoundTripAndFermatExhaustive) {
  for (auto [p, n] : {std::pair<u64, unsigned>{7, 1}, {3, 5}, {5, 3}, {11, 2}, {13, 2}}) {
    FieldCtx f = build_field(p, n);
    for (u64 v = 1; v < f.q(); ++v) {
      EXPECT_EQ(f.antilog(f.dlog({v})).v, v);
    }
    for (u64 v = 0; v < f.q(); ++v) {
      EXPECT_EQ(f.pow({v}, static_cast<i64>(f.q())), FieldElement{v});
    }
  }
}

TEST(Tables, LogOfAlphaIsOne) {
  FieldCtx f = build_field(5, 3);
  EXPECT_EQ(f.dlog(f.alpha()), 1u);
  EXPECT_EQ(f.antilog(0), f.one());
}

TEST(ReprModes, AgreeExhaustivelyOnSmallFields) {
  for (auto [p, n] : {std::pair<u64, unsigned>{7, 2}, {3, 3}, {5, 2}}) {
    FieldCtx flog = build_field(p, n);
    BuildOptions opts;
    opts.repr = ReprHint::kPoly;
    FieldCtx fpoly = build_field(p, n, opts);
    ASSERT_EQ(flog.alpha(), fpoly.alpha());
    const u64 q = flog.q();
    for (u64 a = 0; a < q; ++a) {
      for (u64 b = 0; b < q; ++b) {
        EXPECT_EQ(flog.mul({a}, {b}), fpoly.mul({a}, {b}));
        EXPECT_EQ(flog.add({a}, {b}), fpoly.add({a}, {b}));
        EXPECT_EQ(flog.sub({a}, {b}), fpoly.sub({a}, {b}));
      }
      if (a) {
        EXPECT_EQ(flog.inv({a}), fpoly.inv({a}));
        EXPECT_EQ(flog.is_square({a}), fpoly.is_square({a}));
      }
    }
  }
}

TEST(ReprModes, AgreeOnRandomPairsInLargerField) {
  FieldCtx flog = build_field(5, 7);  // 78125
  BuildOptions opts;
  opts.repr = ReprHint::kPoly;
  FieldCtx fpoly = build_field(5, 7, opts);
  std::mt19937_64 rng(0xd1f5u);
  std::uniform_int_distribution<u64> dist(0, flog.q() - 1);
  for (int i = 0; i < 100000; ++i) {
    const u64 a = dist(rng), b = dist(rng);
    ASSERT_EQ(flog.mul({a}, {b}), fpoly.mul({a}, {b}));
    ASSERT_EQ(flog.add({a}, {b}), fpoly.add({a}, {b}));
  }
  std::uniform_int_distribution<i64> edist(-1000, 1000);
  for (int i = 0; i < 200; ++i) {
    u64 a = dist(rng);
    if (a == 0) a = 1;
    const i64 e = edist(rng);
    ASSERT_EQ(flog.pow({a}, e), fpoly.pow({a}, e));
  }
}

TEST(ExtField, BasicInvariants) {
  // From F_3: beta^{p^n+1} = beta^4 has order 2 = p - 1.
  FieldCtx f3 = build_field(3, 1);
  ExtFieldCtx e3 = build_quadratic_extension(f3);
  EXPECT_EQ(e3.big().element_order(e3.big().antilog(4)), 2u);

  // From F_7: delta = beta^3 satisfies delta^16 = 1.
  FieldCtx f7 = build_field(7, 1);
  ExtFieldCtx e7 = build_quadratic_extension(f7);
  EXPECT_EQ(e7.delta(), e7.big().antilog(3));
  EXPECT_EQ(e7.big().pow(e7.delta(), 16), e7.big().one());

  // beta^{(q^2-1)/2} = -1, the unique element of order 2.
  const u64 q2 = e7.big().q();
  EXPECT_EQ(e7.big().antilog((q2 - 1) / 2), e7.big().neg(e7.big().one()));
}

TEST(ExtField, EmbedIsFieldHomomorphism) {
  FieldCtx f49 = build_field(7, 2);
  ExtFieldCtx ext = build_quadratic_extension(f49);
  EXPECT_EQ(ext.embed(f49.alpha()), ext.big().antilog(f49.q() + 1));
  std::mt19937_64 rng(0x49u);
  std::uniform_int_distribution<u64> dist(0, f49.q() - 1);
  for (int i = 0; i < 100; ++i) {
    FieldElement a{dist(rng)}, b{dist(rng)};
    EXPECT_EQ(ext.embed(f49.mul(a, b)), ext.big().mul(ext.embed(a), ext.embed(b)));
    EXPECT_EQ(ext.embed(f49.add(a, b)), ext.big().add(ext.embed(a), ext.embed(b)));
  }
  // unembed inverts embed, and rejects elements outside the subfield
  u64 outside = 0;
  for (u64 v = 0; v < ext.big().q(); ++v) {
    auto back = ext.unembed({v});
    if (!back) {
      ++outside;
      continue;
    }
    EXPECT_EQ(ext.embed(*back).v, v);
  }
  EXPECT_EQ(outside, ext.big().q() - f49.q());
}

TEST(ExtField, PolyReprMatchesTableRepr) {
  FieldCtx base = build_field(5, 1);
  ExtFieldCtx etab = build_quadratic_extension(base);
  BuildOptions opts;
  opts.repr = ReprHint::kPoly;
  ExtFieldCtx epoly = build_quadratic_extension(base, opts);
  EXPECT_EQ(etab.beta(), epoly.beta());
  EXPECT_EQ(etab.delta(), epoly.delta());
  for (u64 v = 0; v < base.q(); ++v) EXPECT_EQ(etab.embed({v}), epoly.embed({v}));
}

TEST(TableCache, RoundTripsBitIdentically) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "diffspec-cache-test";
  fs::remove_all(dir);

  BuildOptions opts;
  opts.use_cache = true;
  opts.cache_dir = dir.string();
  FieldCtx first = build_field(3, 5, opts);
  ASSERT_EQ(inspect_cache(dir.string()).size(), 1u);
  FieldCtx second = build_field(3, 5, opts);
  EXPECT_EQ(first.alpha(), second.alpha());
  EXPECT_EQ(first.antilog_table(), second.antilog_table());
  EXPECT_EQ(first.params().modulus, second.params().modulus);

  // Reloaded context computes identically.
  for (u64 v = 1; v < first.q(); ++v) EXPECT_EQ(first.dlog({v}), second.dlog({v}));

  EXPECT_EQ(clear_cache(dir.string()), 1u);
  EXPECT_TRUE(inspect_cache(dir.string()).empty());
  fs::remove_all(dir);
}

TEST(TableCache, CorruptPayloadIsRejected) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "diffspec-cache-corrupt";
  fs::remove_all(dir);
  BuildOptions opts;
  opts.use_cache = true;
  opts.cache_dir = dir.string();
  build_field(3, 4, opts);
  auto entries = inspect_cache(dir.string());
  ASSERT_EQ(entries.size(), 1u);
  // Flip one payload byte.
  fs::path file = dir / entries[0].file;
  std::fstream fsio(file, std::ios::binary | std::ios::in | std::ios::out);
  fsio.seekp(-1, std::ios::end);
  fsio.put('\x7f');
  fsio.close();
  EXPECT_THROW(build_field(3, 4, opts), Error);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace diffspec
