#include "diffspec/derivative.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "diffspec/parallel.hpp"

namespace diffspec {

u64 reduce_exponent(u64 d, u64 q) {
  if (d == 0) return 0;
  u64 r = d % (q - 1);
  return r == 0 ? q - 1 : r;
}

ExponentParams thm1_exponent(u64 p, unsigned n, unsigned k) {
  if (p < 3 || p % 2 == 0) fail(Errc::kBadArgument, "p must be an odd prime");
  if (n == 0 || k == 0) fail(Errc::kBadArgument, "n and k must be positive");
  const u64 q = checked_pow(p, n, u64{1} << 62);
  const u64 pk = checked_pow(p, k, u64{1} << 62);
  ExponentParams ep;
  ep.family = ExponentParams::Family::kThm1;
  ep.k = k;
  ep.d = reduce_exponent((pk + 1) / 2, q);
  ep.e = std::gcd(n, k);
  ep.g = std::gcd(2 * n, k);
  return ep;
}

ExponentParams thm2_exponent_params(u64 p, unsigned n, unsigned k) {
  if (p % 4 != 3) fail(Errc::kRegimeViolation, "requires p = 3 mod 4");
  if (n % 2 == 0) fail(Errc::kRegimeViolation, "requires odd n");
  if (k == 0 || n % k != 0) fail(Errc::kRegimeViolation, "requires k | n");
  const u64 q = checked_pow(p, n, u64{1} << 62);
  const u64 pk = checked_pow(p, k, u64{1} << 62);
  ExponentParams ep;
  ep.family = ExponentParams::Family::kThm2;
  ep.k = k;
  ep.d = reduce_exponent((q + 1) / (pk + 1) + (q - 1) / 2, q);
  ep.e = std::gcd(n, k);
  ep.g = std::gcd(2 * n, k);
  return ep;
}

ExponentParams raw_exponent(u64 q, u64 d) {
  ExponentParams ep;
  ep.family = ExponentParams::Family::kRaw;
  ep.d = reduce_exponent(d, q);
  return ep;
}

FieldElement derivative(const FieldCtx& ctx, u64 d, FieldElement x) {
  FieldElement xp1 = ctx.succ(x);
  return ctx.sub(ctx.pow(xp1, static_cast<i64>(d)), ctx.pow(x, static_cast<i64>(d)));
}

u64 count_solutions(const FieldCtx& ctx, u64 d, FieldElement a, FieldElement b) {
  if (a.v == 0) fail(Errc::kBadArgument, "a must be nonzero");
  const u64 q = ctx.q();
  const u64 dr = reduce_exponent(d, q);
  u64 count = 0;
  for (u64 v = 0; v < q; ++v) {
    FieldElement x{v};
    FieldElement lhs = ctx.sub(ctx.pow(ctx.add(x, a), static_cast<i64>(dr)),
                               ctx.pow(x, static_cast<i64>(dr)));
    if (lhs == b) ++count;
  }
  return count;
}

std::vector<u32> derivative_histogram(const FieldCtx& ctx, u64 d) {
  const u64 q = ctx.q();
  const u64 dr = reduce_exponent(d, q);
  if (dr == 0) fail(Errc::kBadArgument, "d = 0 has a constant derivative; rejected");
  std::vector<u32> hist(q, 0);

  unsigned workers = resolve_thread_count();
  if (q < 1u << 14) workers = 1;

  if (ctx.has_tables()) {
    const u64 m = q - 1;
    std::vector<std::vector<u32>> partial(workers);
    parallel_chunks(0, q, workers, [&](u64 lo, u64 hi, unsigned w) {
      std::vector<u32>& h = partial[w];
      h.assign(q, 0);
      for (u64 v = lo; v < hi; ++v) {
        const FieldElement x{v};
        const FieldElement s = ctx.succ(x);
        const FieldElement f1 = s.v ? ctx.antilog(ctx.dlog(s) * dr % m) : FieldElement{0};
        const FieldElement f0 = v ? ctx.antilog(ctx.dlog(x) * dr % m) : FieldElement{0};
        ++h[ctx.sub(f1, f0).v];
      }
    });
    for (const auto& h : partial)
      for (u64 b = 0; b < q; ++b) hist[b] += h[b];
  } else {
    for (u64 v = 0; v < q; ++v) ++hist[derivative(ctx, dr, {v}).v];
  }
  return hist;
}

Spectrum spectrum_bruteforce(const FieldCtx& ctx, u64 d) {
  const u64 q = ctx.q();
  std::vector<u32> hist = derivative_histogram(ctx, d);
  Spectrum s;
  s.q = q;
  for (u64 b = 0; b < q; ++b) ++s.omega[hist[b]];
  if (!s.mass_ok()) fail(Errc::kInternal, "spectrum mass invariant violated");
  return s;
}

std::vector<u64> DerivativeImageAnalysis::image_values(int i, int j) const {
  const auto& m = u_map(i, j);
  std::vector<u64> out;
  out.reserve(m.size());
  for (auto [b, c] : m) out.push_back(b);
  return out;
}

namespace {
std::vector<u64> sorted_union(std::vector<u64> a, const std::vector<u64>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}
}  // namespace

std::vector<u64> DerivativeImageAnalysis::s1_values() const {
  return sorted_union(image_values(0, 0), image_values(1, 1));
}

std::vector<u64> DerivativeImageAnalysis::s2_values() const {
  return sorted_union(image_values(0, 1), image_values(1, 0));
}

DerivativeImageAnalysis restricted_images(const FieldCtx& ctx, u64 d,
                                          const CyclotomicPartition& part) {
  const u64 dr = reduce_exponent(d, ctx.q());
  DerivativeImageAnalysis out;
  for (int s = 0; s < 4; ++s) {
    for (u64 v : part.e_sets[s]) ++out.multiplicity[s][derivative(ctx, dr, {v}).v];
  }
  out.d_at_zero = derivative(ctx, dr, ctx.zero());
  out.d_at_minus_one = derivative(ctx, dr, ctx.neg(ctx.one()));
  return out;
}

namespace {

void require_thm2_regime(const FieldCtx& ctx, unsigned k) {
  if (ctx.p() % 4 != 3) fail(Errc::kRegimeViolation, "requires p = 3 mod 4");
  if (ctx.n() % 2 == 0) fail(Errc::kRegimeViolation, "requires odd n");
  if (k == 0 || ctx.n() % k != 0) fail(Errc::kRegimeViolation, "requires k | n");
}

}  // namespace

HSolutionCounts h_solution_counts(const FieldCtx& ctx, unsigned k, FieldElement b,
                                  const CyclotomicPartition& part) {
  require_thm2_regime(ctx, k);
  if (b.v == 0) fail(Errc::kZeroInput, "b must be nonzero");
  const u64 pk = checked_pow(ctx.p(), k, u64{1} << 62);
  const i64 e2 = static_cast<i64>((pk + 1) / 2);
  const FieldElement target = ctx.pow(b, -e2);

  HSolutionCounts out;
  auto scan = [&](const std::vector<u64>& domain, std::array<u64, 4>& counts) {
    for (u64 v : domain) {
      const FieldElement x{v};
      const FieldElement hp = ctx.pow(ctx.succ(x), e2);
      const FieldElement hx = ctx.pow(x, e2);
      const FieldElement h1 = ctx.add(hp, hx);
      const FieldElement h2 = ctx.sub(hp, hx);
      if (h1 == target) ++counts[0];
      if (h2 == target) ++counts[1];
      if (ctx.neg(h2) == target) ++counts[2];
      if (ctx.neg(h1) == target) ++counts[3];
    }
  };
  scan(part.e_set(0, 0), out.lambda);
  scan(part.e_set(1, 1), out.chi);
  return out;
}

Lemma11Report verify_lemma11(const FieldCtx& ctx, unsigned k, const CyclotomicPartition& part) {
  require_thm2_regime(ctx, k);
  const u64 q = ctx.q();
  const u64 pk = checked_pow(ctx.p(), k, u64{1} << 62);
  const i64 e2 = static_cast<i64>((pk + 1) / 2);

  Lemma11Report report;
  report.q = q;
  report.k = k;
  report.d = thm2_exponent_params(ctx.p(), ctx.n(), k).d;

  // h-value histograms per quadrant; lambda_i(b) and chi_i(b) are lookups.
  std::array<std::unordered_map<u64, u32>, 4> h00, h11;
  auto fill = [&](const std::vector<u64>& domain, std::array<std::unordered_map<u64, u32>, 4>& h) {
    for (u64 v : domain) {
      const FieldElement x{v};
      const FieldElement hp = ctx.pow(ctx.succ(x), e2);
      const FieldElement hx = ctx.pow(x, e2);
      const FieldElement h1 = ctx.add(hp, hx);
      const FieldElement h2 = ctx.sub(hp, hx);
      ++h[0][h1.v];
      ++h[1][h2.v];
      ++h[2][ctx.neg(h2).v];
      ++h[3][ctx.neg(h1).v];
    }
  };
  fill(part.e_set(0, 0), h00);
  fill(part.e_set(1, 1), h11);

  auto sum4 = [](const std::array<std::unordered_map<u64, u32>, 4>& h, u64 c) {
    u64 s = 0;
    for (const auto& m : h) {
      auto it = m.find(c);
      if (it != m.end()) s += it->second;
    }
    return s;
  };

  const std::vector<u32> hist = derivative_histogram(ctx, report.d);
  const u64 minus_one = ctx.neg(ctx.one()).v;

  for (u64 bv = 1; bv < q; ++bv) {
    const FieldElement b{bv};
    const u64 c = ctx.pow(b, -e2).v;
    u64 expected;
    if (bv == 1) {
      expected = sum4(h00, c) + 1;
    } else if (bv == minus_one) {
      expected = sum4(h11, c) + 1;
    } else if (part.class_of[bv] == 0) {
      expected = sum4(h00, c);
    } else {
      expected = sum4(h11, c);
    }
    ++report.checked;
    if (expected != hist[bv]) report.failures.push_back(bv);
  }
  return report;
}

}  // namespace diffspec
