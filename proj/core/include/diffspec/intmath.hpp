#pragma once

#include <cstdint>
#include <vector>

namespace diffspec {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(u64 m);

/// Distinct prime factors in ascending order. Trial division plus a
/// primality check on the cofactor; desk-scale inputs only. Throws
/// Errc::kOverflow if a composite cofactor survives the trial bound.
std::vector<u64> distinct_prime_factors(u64 m);

/// base^exp, throws Errc::kOverflow if the result exceeds `limit`.
u64 checked_pow(u64 base, unsigned exp, u64 limit);

/// gcd(p^a+1, p^b-1) by direct computation in 128-bit arithmetic.
/// Requires p^max(a,b) to fit; callers gate on that.
u64 gcd_pow_direct(u64 p, unsigned a, unsigned b);

bool pow_fits_u128(u64 base, unsigned exp);

}  // namespace diffspec
