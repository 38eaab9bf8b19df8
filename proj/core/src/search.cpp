#include "diffspec/search.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "diffspec/parallel.hpp"

namespace diffspec {
namespace {

// Inverse of d mod m when gcd(d, m) = 1.
std::optional<u64> modinv(u64 d, u64 m) {
  i64 t = 0, newt = 1;
  i64 r = static_cast<i64>(m), newr = static_cast<i64>(d % m);
  while (newr != 0) {
    const i64 quot = r / newr;
    const i64 t2 = t - quot * newt;
    t = newt;
    newt = t2;
    const i64 r2 = r - quot * newr;
    r = newr;
    newr = r2;
  }
  if (r != 1) return std::nullopt;
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

}  // namespace

std::vector<u64> frobenius_orbit(u64 d, u64 p, u64 q) {
  const u64 m = q - 1;
  std::vector<u64> orbit;
  u64 cur = d % m;
  do {
    orbit.push_back(cur);
    cur = mulmod(cur, p, m);
  } while (cur != d % m);
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<SearchResult> search_exponents(const FieldCtx& ctx, const SearchOptions& opts) {
  const u64 q = ctx.q();
  if (q > opts.search_bound)
    fail(Errc::kSearchBoundExceeded,
         "field size " + std::to_string(q) + " above the search bound");
  const u64 p = ctx.p();

  struct Rep {
    u64 d;          // first scanned member
    u64 canonical;
    u64 twin;       // another class member for the dedup spot check (0 = none)
  };
  std::vector<Rep> reps;
  std::vector<u8> seen(q - 1, 0);
  for (u64 d = 2; d + 1 < q; ++d) {
    if (opts.dedup_frobenius && seen[d]) continue;
    std::vector<u64> orbit = frobenius_orbit(d, p, q);
    u64 canonical = orbit.front();
    u64 twin = 0;
    if (opts.dedup_frobenius) {
      for (u64 m : orbit) {
        seen[m] = 1;
        if (m != d && twin == 0) twin = m;
      }
      if (opts.merge_inverse) {
        if (auto inv = modinv(d, q - 1)) {
          std::vector<u64> iorbit = frobenius_orbit(*inv, p, q);
          canonical = std::min(canonical, iorbit.front());
          if (twin == 0 && iorbit.front() != d) twin = iorbit.front();
          for (u64 m : iorbit) seen[m] = 1;
        }
      }
    }
    reps.push_back({d, canonical, twin});
  }

  std::vector<SearchResult> results(reps.size());
  std::vector<u8> keep(reps.size(), 0);
  unsigned workers = resolve_thread_count();
  parallel_chunks(0, reps.size(), workers, [&](u64 lo, u64 hi, unsigned) {
    for (u64 i = lo; i < hi; ++i) {
      Spectrum s = spectrum_bruteforce(ctx, reps[i].d);
      if (s.delta() > opts.max_delta) continue;
      if (reps[i].twin != 0) {
        Spectrum st = spectrum_bruteforce(ctx, reps[i].twin);
        if (!(st == s))
          fail(Errc::kInternal, "orbit members disagree on the spectrum at d=" +
                                    std::to_string(reps[i].d));
      }
      results[i] = SearchResult{reps[i].d, reps[i].canonical, std::move(s)};
      keep[i] = 1;
    }
  });

  std::vector<SearchResult> out;
  for (size_t i = 0; i < results.size(); ++i)
    if (keep[i]) out.push_back(std::move(results[i]));
  std::sort(out.begin(), out.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.spectrum.delta() != b.spectrum.delta()) return a.spectrum.delta() < b.spectrum.delta();
    if (a.canonical != b.canonical) return a.canonical < b.canonical;
    return a.d < b.d;
  });
  return out;
}

}  // namespace diffspec
