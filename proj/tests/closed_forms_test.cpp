#include "diffspec/closed_forms.hpp"

#include <gtest/gtest.h>

#include "diffspec/search.hpp"
#include "diffspec/verify.hpp"

namespace diffspec {
namespace {

TEST(HellesethBound, TableOneColumn) {
  EXPECT_EQ(helleseth_bound(5, 3, 2), 12u);
  EXPECT_EQ(helleseth_bound(7, 3, 2), 24u);
  EXPECT_EQ(helleseth_bound(11, 3, 2), 60u);
  EXPECT_EQ(helleseth_bound(7, 7, 6), 24u);
}

TEST(SpectrumThm1, ExplicitRows) {
  Spectrum s532 = spectrum_thm1(5, 3, 2);
  EXPECT_EQ(s532.omega_at(5), 1u);
  EXPECT_EQ(s532.omega_at(4), 15u);
  EXPECT_EQ(s532.omega_at(6), 10u);
  EXPECT_EQ(s532.omega_at(0), 99u);
  EXPECT_EQ(s532.delta(), 6u);

  Spectrum s731 = spectrum_thm1(7, 3, 1);
  EXPECT_EQ(s731.omega_at(2), 2u);
  EXPECT_EQ(s731.omega_at(3), 56u);
  EXPECT_EQ(s731.omega_at(1), 171u);
  EXPECT_EQ(s731.omega_at(0), 114u);
  EXPECT_EQ(s731.delta(), 3u);

  // (5,2,1): rows collide at i=2 and are summed (1 + 5 + 6 = 12)
  Spectrum s521 = spectrum_thm1(5, 2, 1);
  EXPECT_EQ(s521.omega_at(2), 12u);
  EXPECT_EQ(s521.omega_at(1), 1u);
  EXPECT_EQ(s521.omega_at(0), 12u);
  EXPECT_EQ(s521.delta(), 2u);  // x^3 is APN over F_25
}

TEST(SpectrumThm1, MassIdentitiesAcrossSweep) {
  for (u64 p : {3, 5, 7, 11, 13}) {
    u64 q = 1;
    for (unsigned n = 1; n <= 6; ++n) {
      q *= p;
      for (unsigned k = 1; k <= 2 * n; ++k) {
        Spectrum s = spectrum_thm1(p, n, k);
        EXPECT_TRUE(s.mass_ok()) << "p=" << p << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(UniformityCor1, Examples) {
  EXPECT_EQ(uniformity_cor1(5, 3, 2), 6u);
  EXPECT_EQ(uniformity_cor1(7, 7, 6), 8u);
  EXPECT_EQ(uniformity_cor1(7, 3, 1), 3u);
}

TEST(ExponentThm2, ExamplesAndRegime) {
  EXPECT_EQ(exponent_thm2(7, 3, 1), 214u);   // 344/8 + 171
  EXPECT_EQ(exponent_thm2(11, 3, 1), 776u);  // 1332/12 + 665
  EXPECT_EQ(exponent_thm2(7, 1, 1), 4u);
  EXPECT_THROW(exponent_thm2(5, 3, 1), Error);
  EXPECT_THROW(exponent_thm2(7, 4, 1), Error);
  EXPECT_THROW(exponent_thm2(7, 3, 2), Error);
}

TEST(SpectrumThm2, ExplicitRows) {
  Spectrum s731 = spectrum_thm2(7, 3, 1);
  EXPECT_EQ(s731.omega_at(2), 2u);
  EXPECT_EQ(s731.omega_at(4), 56u);
  EXPECT_EQ(s731.omega_at(1), 115u);
  EXPECT_EQ(s731.omega_at(0), 170u);
  EXPECT_EQ(s731.delta(), 4u);

  // degenerate n = k: omega_{(p^k+1)/2} = 0 and the row disappears
  Spectrum s711 = spectrum_thm2(7, 1, 1);
  EXPECT_EQ(s711.omega_at(2), 2u);
  EXPECT_EQ(s711.omega_at(4), 0u);
  EXPECT_EQ(s711.omega_at(1), 3u);
  EXPECT_EQ(s711.omega_at(0), 2u);
  EXPECT_EQ(s711.delta(), 2u);

  EXPECT_EQ(spectrum_thm2(11, 3, 1).delta(), 6u);
}

TEST(UniformityCor2, DegeneracyIsFlagged) {
  Thm2Uniformity u731 = uniformity_cor2(7, 3, 1);
  EXPECT_EQ(u731.corollary_value, 4u);
  EXPECT_EQ(u731.actual, 4u);
  EXPECT_FALSE(u731.degenerate);

  Thm2Uniformity u711 = uniformity_cor2(7, 1, 1);
  EXPECT_EQ(u711.corollary_value, 4u);
  EXPECT_EQ(u711.actual, 2u);
  EXPECT_TRUE(u711.degenerate);
}

TEST(ImageCardinalities, Examples) {
  ImageExpectation e731 = expected_image_cardinalities(7, 3, 1);
  EXPECT_EQ(e731.at(0, 0).image_size, 29u);
  EXPECT_TRUE(e731.at(1, 0).bijective);
  EXPECT_EQ(e731.at(1, 0).image_size, 85u);  // |E10| = (1,0)
  ASSERT_TRUE(e731.at(1, 0).u_at_one.has_value());
  EXPECT_EQ(*e731.at(1, 0).u_at_one, 0u);  // 1 not in I10

  ImageExpectation e532 = expected_image_cardinalities(5, 3, 2);
  EXPECT_EQ(e532.at(1, 0).image_size, 11u);  // (125+5+2)/12
  EXPECT_EQ(e532.at(0, 1).image_size, 11u);
}

TEST(ImageRelations, Examples) {
  ImageRelations r731 = expected_image_relations(7, 3, 1);
  EXPECT_EQ(r731.r00_11, SetRelation::kDisjoint);
  EXPECT_EQ(r731.r10_01, SetRelation::kDisjoint);
  EXPECT_FALSE(r731.s1s2_meet_at_one);

  ImageRelations r532 = expected_image_relations(5, 3, 2);
  EXPECT_EQ(r532.r00_11, SetRelation::kEqual);
  EXPECT_EQ(r532.r10_01, SetRelation::kEqual);
  EXPECT_TRUE(r532.s1s2_meet_at_one);

  ImageRelations r331 = expected_image_relations(3, 3, 1);
  EXPECT_EQ(r331.r10_01, SetRelation::kDisjoint);  // p^e = 3 mod 4, odd k/e
}

TEST(ImageRelations, MembershipOfOnePerQuadrant) {
  // (5,3,2): the b=1 class of E00 is empty ((p^e-5)/4 = 0) while the other
  // three quadrants keep it; the pairwise intersections with I00 lose 1.
  ImageRelations r = expected_image_relations(5, 3, 2);
  EXPECT_FALSE(r.one_in[0][0]);
  EXPECT_TRUE(r.one_in[1][1]);
  EXPECT_TRUE(r.one_in[1][0]);
  EXPECT_TRUE(r.one_in[0][1]);
  EXPECT_TRUE(r.one_in_s1);
  EXPECT_TRUE(r.one_in_s2);

  // odd k/e: 1 is outside I10 and I01 outright
  ImageRelations r731 = expected_image_relations(7, 3, 1);
  EXPECT_FALSE(r731.one_in[1][0]);
  EXPECT_FALSE(r731.one_in[0][1]);
}

TEST(ImageRelations, PairwiseIntersectionsAcrossQuadrants) {
  // The four cross-quadrant intersections (I00/I11 against I10/I01) are
  // empty for odd k/e and meet exactly in {1} for even k/e, membership of 1
  // taken from the multiplicity tables.
  for (auto [p, n, k] : {std::tuple<u64, unsigned, unsigned>{7, 3, 1},
                         {5, 3, 2},
                         {3, 3, 2},
                         {5, 2, 2},
                         {3, 4, 2},
                         {11, 2, 1}}) {
    FieldCtx ctx = build_field(p, n);
    CyclotomicPartition part = build_partition(ctx);
    DerivativeImageAnalysis analysis = restricted_images(ctx, thm1_exponent(p, n, k).d, part);
    ImageRelations expect = expected_image_relations(p, n, k);
    EXPECT_EQ(check_image_relations(expect, analysis), "")
        << "p=" << p << " n=" << n << " k=" << k;
  }
}

TEST(OracleEquivalence, Thm1SmallGrid) {
  VerifyLimits lim;
  lim.qn_max = 2500;
  lim.thm1_primes = {3, 5, 7, 11, 13};
  SuiteReport rep = run_suite_thm1(lim);
  EXPECT_TRUE(rep.all_pass()) << rep.first_failure()->label << ": "
                              << rep.first_failure()->detail;
  EXPECT_GE(rep.checks.size(), 40u);
}

TEST(OracleEquivalence, Thm2SmallGrid) {
  VerifyLimits lim;
  lim.qn_max = 2500;
  SuiteReport rep = run_suite_thm2(lim);
  EXPECT_TRUE(rep.all_pass()) << rep.first_failure()->label << ": "
                              << rep.first_failure()->detail;
}

TEST(OracleEquivalence, ImagesAndRelationsSmallGrid) {
  VerifyLimits lim;
  lim.images_max = 2500;
  EXPECT_TRUE(run_suite_images(lim).all_pass());
  EXPECT_TRUE(run_suite_relations(lim).all_pass());
}

TEST(OracleEquivalence, Thm1HoldsBeyondTwoN) {
  // k is not bounded by 2n in the statement; spot-check larger k,
  // including a case whose exponent reduces all the way to d = 1.
  for (auto [p, n, k] : {std::tuple<u64, unsigned, unsigned>{3, 2, 7},
                         {5, 2, 5},
                         {7, 1, 4},
                         {3, 3, 8}}) {
    FieldCtx ctx = build_field(p, n);
    EXPECT_EQ(spectrum_thm1(p, n, k), spectrum_bruteforce(ctx, thm1_exponent(p, n, k).d))
        << "p=" << p << " n=" << n << " k=" << k;
  }
}

TEST(BoundConsistency, SpectrumDeltaNeverExceedsHellesethBound) {
  for (u64 p : {3, 5, 7, 11}) {
    for (unsigned n = 1; n <= 5; ++n) {
      for (unsigned k = 1; k <= 2 * n; ++k) {
        EXPECT_LE(spectrum_thm1(p, n, k).delta(), helleseth_bound(p, n, k))
            << "p=" << p << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Search, FindsPlanarSquareOverF9) {
  FieldCtx f9 = build_field(3, 2);
  SearchOptions so;
  so.max_delta = 1;
  auto res = search_exponents(f9, so);
  ASSERT_FALSE(res.empty());
  bool has2 = false;
  for (auto& r : res) has2 = has2 || r.d == 2;
  EXPECT_TRUE(has2);
  for (auto& r : res) EXPECT_LE(r.canonical, r.d);
}

TEST(Search, FindsThm2OrbitOverF343) {
  FieldCtx f = build_field(7, 3);
  SearchOptions so;
  so.max_delta = 4;
  auto res = search_exponents(f, so);
  // the canonical representative of {214*7^i} = {130, 214, 226}
  bool found = false;
  for (auto& r : res) {
    if (r.canonical == 130) {
      found = true;
      EXPECT_EQ(r.spectrum, spectrum_thm2(7, 3, 1));
    }
  }
  EXPECT_TRUE(found);
  // sorted by (delta, canonical)
  for (size_t i = 1; i < res.size(); ++i) {
    EXPECT_TRUE(res[i - 1].spectrum.delta() < res[i].spectrum.delta() ||
                (res[i - 1].spectrum.delta() == res[i].spectrum.delta() &&
                 res[i - 1].canonical <= res[i].canonical));
  }
}

TEST(Search, InverseMergeVerifiesSpectra) {
  FieldCtx f = build_field(3, 3);
  SearchOptions so;
  so.max_delta = 27;  // keep everything; internal twin checks must all pass
  so.merge_inverse = true;
  auto res = search_exponents(f, so);
  EXPECT_FALSE(res.empty());
}

TEST(Search, BoundIsEnforced) {
  FieldCtx f = build_field(7, 3);
  SearchOptions so;
  so.search_bound = 100;
  try {
    search_exponents(f, so);
    FAIL() << "expected SearchBoundExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kSearchBoundExceeded);
  }
}

TEST(Search, FrobeniusOrbitHelper) {
  // over F_343: orbit of 214 under multiplication by 7 mod 342
  std::vector<u64> orbit = frobenius_orbit(214, 7, 343);
  EXPECT_EQ(orbit, (std::vector<u64>{130, 214, 226}));
}

}  // namespace
}  // namespace diffspec
