#pragma once

#include <optional>

#include "diffspec/derivative.hpp"
#include "diffspec/spectrum.hpp"

namespace diffspec {

/// Closed forms for d = (p^k+1)/2 and d = (p^n+1)/(p^k+1) + (p^n-1)/2,
/// as pure functions of (p, n, k).

/// gcd((p^k-1)/2, p^{2n}-1).
u64 helleseth_bound(u64 p, unsigned n, unsigned k);

/// Full spectrum of x^{(p^k+1)/2} over F_{p^n}. Rows landing on the same
/// multiplicity are summed; omega_0 is computed both from the explicit row
/// and as the complement q - sum, and any mismatch is a hard error.
Spectrum spectrum_thm1(u64 p, unsigned n, unsigned k);

/// (p^e-1)/2 for odd k/e, p^e+1 for even k/e (e = gcd(n,k)). The true
/// uniformity is spectrum_thm1(...).delta(); they differ only in the
/// degenerate n = e cases.
u64 uniformity_cor1(u64 p, unsigned n, unsigned k);

/// (p^n+1)/(p^k+1) + (p^n-1)/2; requires p = 3 mod 4, odd n, k | n.
u64 exponent_thm2(u64 p, unsigned n, unsigned k);

/// Full spectrum of x^{exponent_thm2}.
Spectrum spectrum_thm2(u64 p, unsigned n, unsigned k);

/// (p^k+1)/2 together with the spectrum-derived uniformity; degenerate
/// flags the n = k rows where the top row count vanishes and the true
/// uniformity drops to (p^k+1)/4.
struct Thm2Uniformity {
  u64 corollary_value = 0;
  u64 actual = 0;
  bool degenerate = false;
};
Thm2Uniformity uniformity_cor2(u64 p, unsigned n, unsigned k);

/// Expected image-set data for one quadrant of D_f with d = (p^k+1)/2.
/// A distinguished multiplicity of 0 means the corresponding b is not in
/// the image; image_size is already adjusted for such empty classes.
struct QuadrantExpectation {
  u64 domain_size = 0;  // |E_ij|
  u64 image_size = 0;
  std::optional<u64> u_at_one;        // set when b = 1 is distinguished
  std::optional<u64> u_at_minus_one;  // set when b = -1 is distinguished
  u64 u_generic = 0;
  bool bijective = false;
};

struct ImageExpectation {
  unsigned e = 0;
  bool k_over_e_even = false;
  QuadrantExpectation quad[2][2];
  const QuadrantExpectation& at(int i, int j) const { return quad[i][j]; }
};

ImageExpectation expected_image_cardinalities(u64 p, unsigned n, unsigned k);

/// Predicted relations between the quadrant images. Equal pairs are
/// compared modulo the distinguished value b = 1, whose membership on each
/// side follows the multiplicity tables (it can differ between the two
/// sides of an "equal" pair when a distinguished class is empty).
enum class SetRelation { kDisjoint, kEqual };

struct ImageRelations {
  SetRelation r00_11 = SetRelation::kDisjoint;
  SetRelation r10_01 = SetRelation::kDisjoint;
  bool one_in[2][2] = {{false, false}, {false, false}};  // tables put 1 in I_ij
  bool one_in_s1 = false;  // 1 in I00 u I11 per the expectation tables
  bool one_in_s2 = false;  // 1 in I01 u I10
  bool s1s2_meet_at_one = false;  // S1 n S2 = {1}; otherwise empty
};

ImageRelations expected_image_relations(u64 p, unsigned n, unsigned k);

/// Comparison of predictions against an enumerated analysis; empty string
/// means everything matched, otherwise a description of the first mismatch.
/// `minus_one` is the packed value of -1 in the field the analysis came from.
std::string check_image_cardinalities(const ImageExpectation& expect,
                                      const DerivativeImageAnalysis& actual, u64 minus_one);
std::string check_image_relations(const ImageRelations& expect,
                                  const DerivativeImageAnalysis& actual);

}  // namespace diffspec
