#include "diffspec/cyclotomy.hpp"

#include <algorithm>
#include <numeric>

namespace diffspec {

CyclotomicPartition build_partition(const FieldCtx& ctx) {
  const u64 q = ctx.q();
  CyclotomicPartition part;
  part.ctx = &ctx;
  part.class_of.assign(q, 0xFF);
  for (u64 v = 1; v < q; ++v) part.class_of[v] = ctx.is_square({v}) ? 0 : 1;
  const FieldElement minus_one = ctx.neg(ctx.one());
  for (u64 v = 1; v < q; ++v) {
    if (v == minus_one.v) continue;  // x+1 = 0 excluded
    const int i = part.class_of[v];
    const int j = part.class_of[ctx.succ({v}).v];
    part.e_sets[2 * i + j].push_back(v);
  }
  for (int s = 0; s < 4; ++s) part.numbers[s] = part.e_sets[s].size();
  return part;
}

u64 cyclotomic_number_closed(u64 p, unsigned n, int i, int j) {
  if (i < 0 || i > 1 || j < 0 || j > 1) fail(Errc::kBadArgument, "class index must be 0 or 1");
  const u64 q = checked_pow(p, n, u64{1} << 62);
  if (q % 4 == 1) {
    return (i == 0 && j == 0) ? (q - 5) / 4 : (q - 1) / 4;
  }
  return (i == 0 && j == 1) ? (q + 1) / 4 : (q - 3) / 4;
}

namespace {

FieldElement half_square(const FieldCtx& f, FieldElement num, FieldElement inv2) {
  FieldElement h = f.mul(num, inv2);
  return f.mul(h, h);
}

}  // namespace

ParametrizedQuadrant parametrize_quadrant(const ExtFieldCtx& ext, int i, int j) {
  if (i < 0 || i > 1 || j < 0 || j > 1) fail(Errc::kBadArgument, "class index must be 0 or 1");
  const FieldCtx& base = ext.base();
  const FieldCtx& big = ext.big();
  const u64 q = base.q();
  const bool q3mod4 = (q % 4 == 3);

  ParametrizedQuadrant out;
  out.i = i;
  out.j = j;

  const FieldElement inv2 = base.inv(base.from_int(2));
  const FieldElement alpha = base.alpha();
  const FieldElement alpha_inv = base.inv(alpha);

  if (i == 0 && j == 0) {
    // x = ((a^t - a^-t)/2)^2, t in [1,(q-3)/4] resp. [1,(q-5)/4]
    const u64 hi = q3mod4 ? (q - 3) / 4 : (q - 5) / 4;
    FieldElement at = alpha, amt = alpha_inv;
    for (u64 t = 1; t <= hi; ++t) {
      out.points.emplace_back(t, half_square(base, base.sub(at, amt), inv2));
      at = base.mul(at, alpha);
      amt = base.mul(amt, alpha_inv);
    }
    return out;
  }

  if (i == 1 && j == 1) {
    // x = gamma ((a^t - gamma^-1 a^-t)/2)^2 with gamma = -1 (q=3 mod 4,
    // t in T1) or gamma = -alpha (q=1 mod 4, t in T2 u {0}).
    out.used_gamma = true;
    out.gamma = q3mod4 ? base.neg(base.one()) : base.neg(alpha);
    const FieldElement ginv = base.inv(out.gamma);
    const u64 lo = q3mod4 ? 1 : 0;
    const u64 hi = q3mod4 ? (q - 3) / 4 : (q - 5) / 4;
    FieldElement at = base.pow(alpha, static_cast<i64>(lo));
    FieldElement amt = base.pow(alpha_inv, static_cast<i64>(lo));
    for (u64 t = lo; t <= hi; ++t) {
      FieldElement h = base.mul(base.sub(at, base.mul(ginv, amt)), inv2);
      out.points.emplace_back(t, base.mul(out.gamma, base.mul(h, h)));
      at = base.mul(at, alpha);
      amt = base.mul(amt, alpha_inv);
    }
    return out;
  }

  // E10 and E01 live on delta powers in the quadratic extension; the
  // results are pulled back through the inverse embedding.
  const FieldElement inv2_big = big.inv(big.from_int(2));
  const FieldElement delta2 = big.mul(ext.delta(), ext.delta());
  const FieldElement delta2_inv = big.inv(delta2);

  u64 lo, hi;
  FieldElement dt, dmt;
  if (i == 1 && j == 0) {
    // x = ((d^{2t} - d^{-2t})/2)^2, t in [1,(q-3)/4] resp. [1,(q-1)/4]
    lo = 1;
    hi = q3mod4 ? (q - 3) / 4 : (q - 1) / 4;
    dt = delta2;
    dmt = delta2_inv;
  } else {
    // x = ((d^{2t+1} - d^{-(2t+1)})/2)^2, t in [0,(q-3)/4] resp. [0,(q-5)/4]
    lo = 0;
    hi = q3mod4 ? (q - 3) / 4 : (q - 5) / 4;
    dt = ext.delta();
    dmt = big.inv(ext.delta());
  }
  for (u64 t = lo; t <= hi; ++t) {
    FieldElement xb = half_square(big, big.sub(dt, dmt), inv2_big);
    auto xs = ext.unembed(xb);
    if (!xs) fail(Errc::kInternal, "parametrized point left the subfield");
    out.points.emplace_back(t, *xs);
    dt = big.mul(dt, delta2);
    dmt = big.mul(dmt, delta2_inv);
  }
  return out;
}

u64 count_residue_pairs_closed(u64 N, u64 v, u64 mu) {
  if (N == 0) fail(Errc::kBadArgument, "N must be positive");
  if (v == 0) fail(Errc::kBadArgument, "v must be positive");
  if (2 * mu > v) fail(Errc::kMuOutOfRange, "mu must satisfy 0 <= mu <= v/2");
  const u64 quot = N / v;
  const u64 r = N % v;

  if (mu == 0) return quot;
  if (v % 2 == 0 && mu == v / 2) return (mu <= r) ? quot + 1 : quot;

  // 0 < mu < v/2
  if (v >= r && v - r <= mu && mu <= r) return 2 * (quot + 1);
  if (mu >= std::max(v - r, r + 1) || (r >= 1 && v >= r + 1 && mu <= std::min(r, v - r - 1)))
    return 2 * quot + 1;
  if (r < mu && mu < v - r) return 2 * quot;
  fail(Errc::kInternal, "residue-count case split is not exhaustive");
}

u64 count_residue_pairs(u64 N, u64 v, u64 mu) {
  const u64 closed = count_residue_pairs_closed(N, v, mu);
  if (N <= 1'000'000) {
    u64 scan = 0;
    const u64 other = (v - mu) % v;
    for (u64 a = 1; a <= N; ++a) {
      const u64 res = a % v;
      if (res == mu || res == other) ++scan;
    }
    if (scan != closed)
      fail(Errc::kInternal, "closed form disagrees with direct scan at N=" + std::to_string(N) +
                                " v=" + std::to_string(v) + " mu=" + std::to_string(mu));
  }
  return closed;
}

GcdPowerForm gcd_power_forms(u64 p, unsigned a, unsigned b) {
  if (p < 3 || !is_prime_u64(p)) fail(Errc::kNotPrime, "p must be an odd prime");
  if (p % 2 == 0) fail(Errc::kEvenCharacteristic, "p must be odd");
  if (a == 0 || b == 0) fail(Errc::kBadArgument, "exponents must be positive");
  const unsigned l = std::gcd(a, b);
  const unsigned ap = a / l, bp = b / l;
  GcdPowerForm out;
  if (ap % 2 == 1 && bp % 2 == 0) {
    out.value = checked_pow(p, l, ~u64{0} - 1) + 1;
  } else {
    out.value = 2;
  }
  if (pow_fits_u128(p, std::max(a, b))) {
    if (gcd_pow_direct(p, a, b) != out.value)
      fail(Errc::kInternal, "gcd closed form disagrees with direct computation");
    out.verified = true;
  }
  return out;
}

}  // namespace diffspec
