#pragma once

#include <array>
#include <utility>
#include <vector>

#include "diffspec/ext_field.hpp"
#include "diffspec/field.hpp"

namespace diffspec {

/// Cyclotomic classes for s=2 (squares/nonsquares) and the four sets
/// E_ij = { x in F_q^* : x in C_i, x+1 != 0, x+1 in C_j }.
struct CyclotomicPartition {
  const FieldCtx* ctx = nullptr;
  std::vector<u8> class_of;                // size q; entry 0 is unused (0xFF)
  std::array<std::vector<u64>, 4> e_sets;  // quadrant 2i+j, ascending element values
  std::array<u64, 4> numbers{};            // cyclotomic numbers (i,j)

  int klass(FieldElement x) const { return class_of[x.v]; }
  const std::vector<u64>& e_set(int i, int j) const { return e_sets[2 * i + j]; }
  u64 number(int i, int j) const { return numbers[2 * i + j]; }
};

CyclotomicPartition build_partition(const FieldCtx& ctx);

/// Cyclotomic number (i,j) for s=2 by the closed form:
/// q=1 mod 4: (0,0)=(q-5)/4, others (q-1)/4;
/// q=3 mod 4: (0,1)=(q+1)/4, others (q-3)/4.
u64 cyclotomic_number_closed(u64 p, unsigned n, int i, int j);

/// One quadrant's parametrization: pairs (t, x) where x is computed from
/// powers of alpha (E00, E11) or of delta in the quadratic extension
/// (E10, E01), divided by 2 in the ambient field. Empty when |E_ij| = 0.
struct ParametrizedQuadrant {
  int i = 0, j = 0;
  bool used_gamma = false;   // E11 branch records its gamma
  FieldElement gamma{};      // -1 for q=3 mod 4, -alpha for q=1 mod 4
  std::vector<std::pair<u64, FieldElement>> points;  // t ascending
};

ParametrizedQuadrant parametrize_quadrant(const ExtFieldCtx& ext, int i, int j);

/// Number of a in [1,N] with a = +mu or -mu (mod v), 0 <= mu <= v/2, by the
/// closed case split; cross-checked against a direct scan when N <= 10^6.
u64 count_residue_pairs(u64 N, u64 v, u64 mu);
/// The raw case split without the internal scan (for bulk comparisons that
/// supply their own oracle).
u64 count_residue_pairs_closed(u64 N, u64 v, u64 mu);

/// gcd(p^a+1, p^b-1): p^l+1 when a/l is odd and b/l is even (l = gcd(a,b)),
/// otherwise 2. `verified` reports whether the direct-gcd cross-check ran
/// (it needs p^max(a,b) representable).
struct GcdPowerForm {
  u64 value = 0;
  bool verified = false;
};
GcdPowerForm gcd_power_forms(u64 p, unsigned a, unsigned b);

}  // namespace diffspec
