#include "diffspec/derivative.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

namespace diffspec {
namespace {

TEST(Derivative, ExamplesOverF7) {
  FieldCtx f7 = build_field(7, 1);
  EXPECT_EQ(derivative(f7, 4, {2}).v, 2u);  // 3^4 - 2^4 = 65 = 2 mod 7
  EXPECT_EQ(derivative(f7, 4, {3}).v, 0u);  // 4^4 - 3^4 = 175 = 0 mod 7
  for (u64 v = 0; v < 7; ++v) EXPECT_EQ(derivative(f7, 1, {v}), f7.one());
  // d = 0: both powers are 1 (including 0^0), derivative vanishes
  EXPECT_EQ(derivative(f7, 0, {3}), f7.zero());
  EXPECT_EQ(derivative(f7, 0, {0}), f7.zero());
}

TEST(CountSolutions, ExamplesOverF7) {
  FieldCtx f7 = build_field(7, 1);
  EXPECT_EQ(count_solutions(f7, 4, {1}, {1}), 2u);
  EXPECT_EQ(count_solutions(f7, 4, {1}, {3}), 0u);
  // N(a,b) = N(1, b / a^d) with a=2, b = 2 * 2^4
  FieldElement a{2};
  FieldElement b = f7.mul({2}, f7.pow(a, 4));
  EXPECT_EQ(count_solutions(f7, 4, a, b), count_solutions(f7, 4, {1}, {2}));
  EXPECT_THROW(count_solutions(f7, 4, f7.zero(), {1}), Error);
}

TEST(CountSolutions, ScalingReductionOnRandomPairs) {
  std::mt19937_64 rng(0xabcdefu);
  for (auto [p, n, d] : {std::tuple<u64, unsigned, u64>{7, 2, 5}, {3, 3, 7}, {11, 1, 6}}) {
    FieldCtx f = build_field(p, n);
    std::uniform_int_distribution<u64> dist(0, f.q() - 1);
    for (int i = 0; i < 50; ++i) {
      u64 av = dist(rng);
      if (av == 0) av = 1;
      FieldElement a{av}, b{dist(rng)};
      FieldElement reduced = f.mul(b, f.pow(f.inv(a), static_cast<i64>(d)));
      EXPECT_EQ(count_solutions(f, d, a, b), count_solutions(f, d, {1}, reduced));
    }
  }
}

TEST(Spectrum, LinearExponentIsDegenerate) {
  for (auto [p, n] : {std::pair<u64, unsigned>{5, 2}, {3, 3}}) {
    FieldCtx f = build_field(p, n);
    Spectrum s = spectrum_bruteforce(f, 1);
    EXPECT_EQ(s.omega_at(f.q()), 1u);  // only b = 1
    EXPECT_EQ(s.delta(), f.q());
    EXPECT_EQ(s.omega_at(0), f.q() - 1);
  }
}

TEST(Spectrum, SquareIsPlanarOverF9) {
  FieldCtx f9 = build_field(3, 2);
  Spectrum s = spectrum_bruteforce(f9, 2);
  EXPECT_EQ(s.omega_at(1), 9u);
  EXPECT_EQ(s.delta(), 1u);
}

TEST(Spectrum, F125TableOneRow) {
  FieldCtx f = build_field(5, 3);
  Spectrum s = spectrum_bruteforce(f, 13);
  EXPECT_EQ(s.delta(), 6u);
}

TEST(Spectrum, MassInvariantsAcrossExponentSweep) {
  FieldCtx f = build_field(3, 3);
  for (u64 d = 1; d < f.q() - 1; ++d) {
    Spectrum s = spectrum_bruteforce(f, d);
    EXPECT_TRUE(s.mass_ok()) << "d=" << d;
  }
}

TEST(Spectrum, RejectsZeroExponent) {
  FieldCtx f = build_field(3, 2);
  EXPECT_THROW(spectrum_bruteforce(f, 0), Error);
}

TEST(Spectrum, FrobeniusTwistInvariance) {
  for (auto [p, n] : {std::pair<u64, unsigned>{3, 3}, {7, 2}}) {
    FieldCtx f = build_field(p, n);
    for (u64 d = 2; d < f.q() - 1; ++d) {
      Spectrum s1 = spectrum_bruteforce(f, d);
      Spectrum s2 = spectrum_bruteforce(f, reduce_exponent(d * p, f.q()));
      EXPECT_EQ(s1, s2) << "d=" << d;
    }
  }
}

TEST(Spectrum, DeterministicAcrossWorkerCounts) {
  FieldCtx f = build_field(7, 3);
  setenv("DIFFSPEC_THREADS", "3", 1);
  Spectrum s3 = spectrum_bruteforce(f, 214);
  setenv("DIFFSPEC_THREADS", "1", 1);
  Spectrum s1 = spectrum_bruteforce(f, 214);
  unsetenv("DIFFSPEC_THREADS");
  EXPECT_EQ(s1, s3);
}

TEST(Spectrum, HistogramAgreesWithCountSolutions) {
  FieldCtx f = build_field(3, 3);
  const u64 d = 5;
  std::vector<u32> hist = derivative_histogram(f, d);
  for (u64 b = 0; b < f.q(); ++b) EXPECT_EQ(hist[b], count_solutions(f, d, {1}, {b}));
}

TEST(ExponentParams, GcdInvariants) {
  // e | g and g/e is 1 or 2 for every (n, k)
  for (unsigned n = 1; n <= 12; ++n) {
    for (unsigned k = 1; k <= 2 * n; ++k) {
      ExponentParams ep = thm1_exponent(3, n, k);
      EXPECT_EQ(ep.g % ep.e, 0u) << "n=" << n << " k=" << k;
      EXPECT_TRUE(ep.g / ep.e == 1 || ep.g / ep.e == 2) << "n=" << n << " k=" << k;
    }
  }
}

TEST(ExponentParams, FamiliesAndReduction) {
  ExponentParams t1 = thm1_exponent(7, 3, 1);
  EXPECT_EQ(t1.d, 4u);
  EXPECT_EQ(t1.e, 1u);
  EXPECT_EQ(t1.g, 1u);
  ExponentParams t2 = thm2_exponent_params(7, 3, 1);
  EXPECT_EQ(t2.d, 214u);
  EXPECT_EQ(reduce_exponent(342, 343), 342u);
  EXPECT_EQ(reduce_exponent(343, 343), 1u);
  EXPECT_EQ(reduce_exponent(684, 343), 342u);  // 2(q-1) maps back to q-1
  EXPECT_THROW(thm2_exponent_params(5, 3, 1), Error);   // p = 1 mod 4
  EXPECT_THROW(thm2_exponent_params(7, 2, 1), Error);   // even n
  EXPECT_THROW(thm2_exponent_params(7, 3, 2), Error);   // k does not divide n
}

TEST(RestrictedImages, F343Examples) {
  FieldCtx f = build_field(7, 3);
  CyclotomicPartition part = build_partition(f);
  DerivativeImageAnalysis a = restricted_images(f, 4, part);  // k=1
  EXPECT_EQ(a.image_size(0, 0), 29u);  // (343 + 7 - 2) / 12
  EXPECT_EQ(a.u_at(1, 0, 1), 0u);      // 1 not in I10
  EXPECT_EQ(a.u_at(0, 1, 1), 0u);      // 1 not in I01
  // boundary: D(0) = 1, D(-1) = (-1)^{(p^k+3)/2} = -1 for k=1
  EXPECT_EQ(a.d_at_zero, f.one());
  EXPECT_EQ(a.d_at_minus_one, f.neg(f.one()));
}

TEST(RestrictedImages, BoundaryClosedFormForEvenK) {
  // (5,3,2): (p^k+3)/2 = 14 is even, so D(-1) = +1
  FieldCtx f = build_field(5, 3);
  CyclotomicPartition part = build_partition(f);
  DerivativeImageAnalysis a = restricted_images(f, thm1_exponent(5, 3, 2).d, part);
  EXPECT_EQ(a.d_at_zero, f.one());
  EXPECT_EQ(a.d_at_minus_one, f.one());
}

TEST(RestrictedImages, QuadrantDecompositionAndReconstruction) {
  for (auto [p, n, k] : {std::tuple<u64, unsigned, unsigned>{3, 3, 1}, {5, 2, 1}, {7, 2, 2}}) {
    FieldCtx f = build_field(p, n);
    CyclotomicPartition part = build_partition(f);
    const u64 d = thm1_exponent(p, n, k).d;
    DerivativeImageAnalysis a = restricted_images(f, d, part);
    u64 total = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (auto [b, c] : a.u_map(i, j)) total += c;
    EXPECT_EQ(total + 2, f.q());  // the boundary points x = 0, -1

    std::vector<u32> hist = derivative_histogram(f, d);
    for (u64 b = 0; b < f.q(); ++b) {
      u64 n1b = 0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) n1b += a.u_at(i, j, b);
      n1b += (a.d_at_zero.v == b) + (a.d_at_minus_one.v == b);
      EXPECT_EQ(n1b, hist[b]) << "b=" << b;
    }
  }
}

TEST(HSolutionCounts, Lemma11BranchesOverF7) {
  FieldCtx f7 = build_field(7, 1);
  CyclotomicPartition part = build_partition(f7);
  HSolutionCounts at1 = h_solution_counts(f7, 1, {1}, part);
  EXPECT_EQ(at1.lambda_sum() + 1, count_solutions(f7, 4, {1}, {1}));
  FieldElement m1 = f7.neg(f7.one());
  HSolutionCounts atm1 = h_solution_counts(f7, 1, m1, part);
  EXPECT_EQ(atm1.chi_sum() + 1, count_solutions(f7, 4, {1}, m1));
  HSolutionCounts at3 = h_solution_counts(f7, 1, {3}, part);  // 3 is a nonsquare
  EXPECT_EQ(at3.chi_sum(), count_solutions(f7, 4, {1}, {3}));
}

TEST(HSolutionCounts, RegimeViolations) {
  FieldCtx f5 = build_field(5, 1);
  CyclotomicPartition p5 = build_partition(f5);
  EXPECT_THROW(h_solution_counts(f5, 1, {1}, p5), Error);
  FieldCtx f49 = build_field(7, 2);
  CyclotomicPartition p49 = build_partition(f49);
  EXPECT_THROW(h_solution_counts(f49, 1, {1}, p49), Error);
}

TEST(Lemma11, HoldsOverSmallFields) {
  {
    FieldCtx f = build_field(7, 1);
    CyclotomicPartition part = build_partition(f);
    Lemma11Report rep = verify_lemma11(f, 1, part);
    EXPECT_TRUE(rep.all_pass());
    EXPECT_EQ(rep.checked, 6u);
  }
  {
    FieldCtx f = build_field(3, 3);
    CyclotomicPartition part = build_partition(f);
    for (unsigned k : {1u, 3u}) {
      Lemma11Report rep = verify_lemma11(f, k, part);
      EXPECT_TRUE(rep.all_pass()) << "k=" << k;
      EXPECT_EQ(rep.checked, 26u);
    }
  }
}

}  // namespace
}  // namespace diffspec
