#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "diffspec/errors.hpp"
#include "diffspec/intmath.hpp"

namespace diffspec {

/// Element of F_{p^n}, packed as base-p digits with the constant
/// coefficient in the least significant position. Only meaningful
/// together with the FieldCtx that produced it.
struct FieldElement {
  u64 v = 0;
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

enum class Repr { kLogTable, kPoly };
enum class ReprHint { kAuto, kLogTable, kPoly };

struct FieldParams {
  u64 p = 0;              // odd prime characteristic
  unsigned n = 0;         // extension degree
  std::vector<u32> modulus;  // monic irreducible of degree n, constant-first, n+1 entries
  u64 q = 0;              // p^n
};

struct BuildOptions {
  ReprHint repr = ReprHint::kAuto;
  u64 table_bound = u64{1} << 24;  // max element count for log/antilog tables
  bool use_cache = false;          // read/write the antilog table cache
  std::string cache_dir;           // empty: $DIFFSPEC_CACHE or ./.diffspec-cache
};

/// Immutable context for F_{p^n}. Construction is single-threaded; a built
/// context is safe to share across threads.
class FieldCtx {
 public:
  FieldCtx() = default;  // empty; assign from build_field before use
  const FieldParams& params() const { return params_; }
  u64 p() const { return params_.p; }
  unsigned n() const { return params_.n; }
  u64 q() const { return params_.q; }
  Repr repr() const { return repr_; }
  FieldElement alpha() const { return alpha_; }
  const std::vector<u64>& qm1_prime_factors() const { return qm1_factors_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// The constant c mod p.
  FieldElement from_int(u64 c) const { return {c % params_.p}; }
  FieldElement from_coeffs(std::span<const u32> coeffs) const;
  std::vector<u32> coeffs(FieldElement x) const;
  /// rank-th element in coefficient-lexicographic order (constant
  /// coefficient compared first), rank in [0, q). element_at(0) == 0.
  FieldElement element_at(u64 rank) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;          // throws ZeroInverse
  FieldElement pow(FieldElement a, i64 e) const;   // negative e needs a != 0
  FieldElement succ(FieldElement a) const {        // a + 1
    u64 d0 = a.v % params_.p;
    return {d0 + 1 == params_.p ? a.v - d0 : a.v + 1};
  }

  u64 dlog(FieldElement x) const;                  // throws LogOfZero
  FieldElement antilog(u64 e) const;               // alpha^e, e reduced mod q-1
  bool is_square(FieldElement x) const;            // throws ZeroInput
  u64 element_order(FieldElement x) const;         // multiplicative order

  bool has_tables() const { return repr_ == Repr::kLogTable; }
  const std::vector<u32>& antilog_table() const { return antilog_; }

 private:
  friend FieldCtx build_field(u64, unsigned, const BuildOptions&);
  friend class FieldBuilder;

  FieldParams params_;
  FieldElement alpha_;
  Repr repr_ = Repr::kPoly;
  std::vector<u64> qm1_factors_;
  std::vector<u32> log_;      // size q, log_[0] unused
  std::vector<u32> antilog_;  // size q-1
};

/// Deterministic construction: lexicographically first monic irreducible
/// modulus, first element in coefficient-lex order with order q-1.
FieldCtx build_field(u64 p, unsigned n, const BuildOptions& opts = {});

/// Construction bypassing the lex-first selections; used by the quadratic
/// extension builder and the table cache loader.
class FieldBuilder {
 public:
  /// Builds with a caller-supplied modulus and primitive element. The
  /// element's order is verified. `antilog` may be preloaded (cache path);
  /// if empty and repr is kLogTable the table is generated.
  static FieldCtx with_alpha(u64 p, unsigned n, std::vector<u32> modulus, FieldElement alpha,
                             Repr repr, u64 table_bound, std::vector<u32> antilog = {});
  static std::vector<u32> lex_first_irreducible(u64 p, unsigned n);
};

}  // namespace diffspec
