#include "diffspec/intmath.hpp"

#include <numeric>

#include "diffspec/errors.hpp"

namespace diffspec {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::kNotPrime: return "NotPrime";
    case Errc::kEvenCharacteristic: return "EvenCharacteristic";
    case Errc::kOverflow: return "Overflow";
    case Errc::kZeroInverse: return "ZeroInverse";
    case Errc::kLogOfZero: return "LogOfZero";
    case Errc::kZeroInput: return "ZeroInput";
    case Errc::kTableBoundExceeded: return "TableBoundExceeded";
    case Errc::kMuOutOfRange: return "MuOutOfRange";
    case Errc::kRegimeViolation: return "RegimeViolation";
    case Errc::kSearchBoundExceeded: return "SearchBoundExceeded";
    case Errc::kBadArgument: return "BadArgument";
    case Errc::kCacheCorrupt: return "CacheCorrupt";
    case Errc::kInternal: return "Internal";
  }
  return "Unknown";
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 m) {
  if (m < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (m % p == 0) return m == p;
  }
  u64 d = m - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all 64-bit integers.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, m);
      if (x == m - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::vector<u64> distinct_prime_factors(u64 m) {
  std::vector<u64> out;
  if (m < 2) return out;
  constexpr u64 kTrialBound = 10'000'000;
  for (u64 d = 2; d * d <= m && d <= kTrialBound; d == 2 ? d = 3 : d += 2) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) {
    if (!is_prime_u64(m))
      fail(Errc::kOverflow, "cofactor " + std::to_string(m) + " resists desk-scale factorization");
    out.push_back(m);
  }
  return out;
}

u64 checked_pow(u64 base, unsigned exp, u64 limit) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base)
      fail(Errc::kOverflow, std::to_string(base) + "^" + std::to_string(exp) + " exceeds " +
                                std::to_string(limit));
    r *= base;
  }
  return r;
}

bool pow_fits_u128(u64 base, unsigned exp) {
  u128 r = 1;
  const u128 limit = ~(u128)0 >> 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) return false;
    r *= base;
  }
  return true;
}

u64 gcd_pow_direct(u64 p, unsigned a, unsigned b) {
  u128 pa = 1, pb = 1;
  for (unsigned i = 0; i < a; ++i) pa *= p;
  for (unsigned i = 0; i < b; ++i) pb *= p;
  u128 x = pa + 1, y = pb - 1;
  while (y != 0) {
    u128 t = x % y;
    x = y;
    y = t;
  }
  return static_cast<u64>(x);
}

}  // namespace diffspec
