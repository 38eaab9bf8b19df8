#pragma once

#include <array>
#include <map>
#include <vector>

#include "diffspec/cyclotomy.hpp"
#include "diffspec/field.hpp"
#include "diffspec/spectrum.hpp"

namespace diffspec {

/// Exhaustive ground truth for D_f(x) = f(x+1) - f(x), f(x) = x^d.

struct ExponentParams {
  enum class Family { kRaw, kThm1, kThm2 };
  Family family = Family::kRaw;
  unsigned k = 0;
  u64 d = 0;  // reduced into [1, q-1]
  unsigned e = 0, g = 0;  // gcd(n,k), gcd(2n,k)
};

/// d mod (q-1), mapped into [1, q-1] for nonzero d (x^d agrees on F_q^*).
u64 reduce_exponent(u64 d, u64 q);

/// d = (p^k+1)/2.
ExponentParams thm1_exponent(u64 p, unsigned n, unsigned k);
/// d = (p^n+1)/(p^k+1) + (p^n-1)/2; requires p = 3 mod 4, odd n, k | n.
ExponentParams thm2_exponent_params(u64 p, unsigned n, unsigned k);
ExponentParams raw_exponent(u64 q, u64 d);

/// (x+1)^d - x^d with 0^d = 0 for d > 0 and 1 for d = 0.
FieldElement derivative(const FieldCtx& ctx, u64 d, FieldElement x);

/// N(a,b) = |{x : f(x+a) - f(x) = b}| by exhaustive scan.
u64 count_solutions(const FieldCtx& ctx, u64 d, FieldElement a, FieldElement b);

/// N(1,b) for every b, indexed by packed element value. One pass over x
/// with per-worker partial histograms merged by summation.
std::vector<u32> derivative_histogram(const FieldCtx& ctx, u64 d);

Spectrum spectrum_bruteforce(const FieldCtx& ctx, u64 d);

/// Per-quadrant images I_ij = D_f(E_ij) and multiplicity maps U_ij.
struct DerivativeImageAnalysis {
  std::array<std::map<u64, u64>, 4> multiplicity;  // quadrant 2i+j: b value -> |U_ij(b)|
  FieldElement d_at_zero{}, d_at_minus_one{};

  const std::map<u64, u64>& u_map(int i, int j) const { return multiplicity[2 * i + j]; }
  u64 u_at(int i, int j, u64 b_value) const {
    const auto& m = u_map(i, j);
    auto it = m.find(b_value);
    return it == m.end() ? 0 : it->second;
  }
  u64 image_size(int i, int j) const { return u_map(i, j).size(); }
  std::vector<u64> image_values(int i, int j) const;  // ascending
  std::vector<u64> s1_values() const;                 // I00 u I11
  std::vector<u64> s2_values() const;                 // I01 u I10
};

DerivativeImageAnalysis restricted_images(const FieldCtx& ctx, u64 d,
                                          const CyclotomicPartition& part);

/// Solution counts of h_i(x) = b^{-(p^k+1)/2} on E00 (lambda) and E11 (chi),
/// where h_1 = (x+1)^{(p^k+1)/2} + x^{(p^k+1)/2}, h_2 = (x+1)^e2 - x^e2,
/// h_3 = -h_2, h_4 = -h_1. Theorem 2 regime only.
struct HSolutionCounts {
  std::array<u64, 4> lambda{};
  std::array<u64, 4> chi{};
  u64 lambda_sum() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }
  u64 chi_sum() const { return chi[0] + chi[1] + chi[2] + chi[3]; }
};

HSolutionCounts h_solution_counts(const FieldCtx& ctx, unsigned k, FieldElement b,
                                  const CyclotomicPartition& part);

/// Checks, for every b in F_q^*, the decomposition of N(1,b) into the
/// lambda/chi sums (with the +1 corrections at b = +-1) against the
/// exhaustive count.
struct Lemma11Report {
  u64 q = 0;
  unsigned k = 0;
  u64 d = 0;
  u64 checked = 0;
  std::vector<u64> failures;  // b values
  bool all_pass() const { return failures.empty(); }
};

Lemma11Report verify_lemma11(const FieldCtx& ctx, unsigned k, const CyclotomicPartition& part);

}  // namespace diffspec
