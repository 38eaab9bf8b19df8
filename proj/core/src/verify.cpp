#include "diffspec/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "diffspec/closed_forms.hpp"
#include "diffspec/cyclotomy.hpp"
#include "diffspec/derivative.hpp"
#include "diffspec/ext_field.hpp"
#include "diffspec/field.hpp"
#include "diffspec/parallel.hpp"

namespace diffspec {
namespace {

std::string pn_label(u64 p, unsigned n) {
  return "p=" + std::to_string(p) + " n=" + std::to_string(n);
}

std::string pnk_label(u64 p, unsigned n, unsigned k) {
  return pn_label(p, n) + " k=" + std::to_string(k);
}

// (p, n) pairs with p^n <= limit, ordered by (p, n).
std::vector<std::pair<u64, unsigned>> field_grid(const std::vector<u64>& primes, u64 limit) {
  std::vector<std::pair<u64, unsigned>> grid;
  for (u64 p : primes) {
    u64 q = p;
    for (unsigned n = 1; q <= limit; ++n) {
      grid.emplace_back(p, n);
      if (q > limit / p) break;
      q *= p;
    }
  }
  return grid;
}

}  // namespace

std::vector<u64> odd_primes_upto(u64 x) {
  std::vector<u64> primes;
  if (x < 3) return primes;
  std::vector<u8> sieve(x + 1, 1);
  for (u64 i = 2; i * i <= x; ++i)
    if (sieve[i])
      for (u64 j = i * i; j <= x; j += i) sieve[j] = 0;
  for (u64 i = 3; i <= x; i += 2)
    if (sieve[i]) primes.push_back(i);
  return primes;
}

SuiteReport run_suite_cyclotomy(const VerifyLimits& lim) {
  SuiteReport report{"cyclotomy", {}};
  for (auto [p, n] : field_grid(odd_primes_upto(lim.cyclo_max), lim.cyclo_max)) {
    CheckResult check{pn_label(p, n), true, ""};
    FieldCtx ctx = build_field(p, n);
    CyclotomicPartition part = build_partition(ctx);
    u64 total = 0;
    for (int i = 0; i < 2 && check.pass; ++i) {
      for (int j = 0; j < 2 && check.pass; ++j) {
        const u64 closed = cyclotomic_number_closed(p, n, i, j);
        const u64 counted = part.number(i, j);
        total += counted;
        if (closed != counted) {
          check.pass = false;
          check.detail = "(" + std::to_string(i) + "," + std::to_string(j) + ") closed " +
                         std::to_string(closed) + " != counted " + std::to_string(counted);
        }
      }
    }
    if (check.pass && total != ctx.q() - 2) {
      check.pass = false;
      check.detail = "quadrant sizes sum to " + std::to_string(total) + " != q-2";
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

SuiteReport run_suite_lemma2(const VerifyLimits& lim) {
  SuiteReport report{"lemma2", {}};
  std::vector<std::pair<u64, unsigned>> grid;
  for (u64 p : odd_primes_upto(static_cast<u64>(1) << 12)) {
    for (unsigned n = 1;; ++n) {
      if (!pow_fits_u128(p, 2 * n)) break;
      u128 q2 = 1;
      for (unsigned i = 0; i < 2 * n; ++i) q2 *= p;
      if (q2 > lim.ext_bound) break;
      grid.emplace_back(p, n);
    }
  }
  std::sort(grid.begin(), grid.end());

  std::vector<CheckResult> checks(grid.size());
  parallel_chunks(0, grid.size(), resolve_thread_count(), [&](u64 lo, u64 hi, unsigned) {
    for (u64 gi = lo; gi < hi; ++gi) {
      auto [p, n] = grid[gi];
      CheckResult check{pn_label(p, n), true, ""};
      try {
        FieldCtx base = build_field(p, n);
        BuildOptions ext_opts;
        ext_opts.repr = ReprHint::kPoly;  // sweep: skip big-field tables
        ExtFieldCtx ext = build_quadratic_extension(base, ext_opts);
        CyclotomicPartition part = build_partition(base);
        for (int i = 0; i < 2 && check.pass; ++i) {
          for (int j = 0; j < 2 && check.pass; ++j) {
            ParametrizedQuadrant pq = parametrize_quadrant(ext, i, j);
            std::set<u64> got;
            std::set<u64> ts;
            for (auto& [t, x] : pq.points) {
              got.insert(x.v);
              ts.insert(t);
            }
            const auto& want = part.e_set(i, j);
            const u64 closed = cyclotomic_number_closed(p, n, i, j);
            if (ts.size() != pq.points.size()) {
              check = {check.label, false, "repeated t index"};
            } else if (got.size() != pq.points.size()) {
              check = {check.label, false, "parametrization produced repeated elements"};
            } else if (pq.points.size() != closed) {
              check = {check.label, false,
                       "E" + std::to_string(i) + std::to_string(j) + " size " +
                           std::to_string(pq.points.size()) + " != (i,j) = " +
                           std::to_string(closed)};
            } else if (!std::equal(got.begin(), got.end(), want.begin(), want.end())) {
              check = {check.label, false,
                       "E" + std::to_string(i) + std::to_string(j) + " set mismatch"};
            }
          }
        }
      } catch (const Error& e) {
        check = {check.label, false, e.what()};
      }
      checks[gi] = std::move(check);
    }
  });
  report.checks = std::move(checks);
  return report;
}

SuiteReport run_suite_lemma3(const VerifyLimits& lim) {
  SuiteReport report{"lemma3", {}};
  for (u64 N = 1; N <= lim.lemma3_n_max; ++N) {
    CheckResult check{"N=" + std::to_string(N) + " (all v<=N, all mu)", true, ""};
    for (u64 v = 1; v <= N && check.pass; ++v) {
      std::vector<u64> residue_count(v, 0);
      for (u64 a = 1; a <= N; ++a) ++residue_count[a % v];
      u64 mu_total = 0;
      for (u64 mu = 0; 2 * mu <= v; ++mu) {
        const u64 other = (v - mu) % v;
        const u64 scanned =
            residue_count[mu] + (other != mu ? residue_count[other] : 0);
        const u64 closed = count_residue_pairs_closed(N, v, mu);
        mu_total += scanned;
        if (closed != scanned) {
          check = {check.label, false,
                   "v=" + std::to_string(v) + " mu=" + std::to_string(mu) + ": closed " +
                       std::to_string(closed) + " != scan " + std::to_string(scanned)};
          break;
        }
      }
      if (check.pass && mu_total != N) {
        check = {check.label, false,
                 "v=" + std::to_string(v) + ": counts sum to " + std::to_string(mu_total) +
                     " != N"};
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

SuiteReport run_suite_lemma4(const VerifyLimits& lim) {
  SuiteReport report{"lemma4", {}};
  for (u64 p : odd_primes_upto(lim.lemma4_p_max)) {
    CheckResult check{"p=" + std::to_string(p) + " a,b<=" + std::to_string(lim.lemma4_exp_max),
                      true, ""};
    for (unsigned a = 1; a <= lim.lemma4_exp_max && check.pass; ++a) {
      for (unsigned b = 1; b <= lim.lemma4_exp_max; ++b) {
        GcdPowerForm form = gcd_power_forms(p, a, b);
        if (!form.verified) {
          check = {check.label, false,
                   "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                       ": direct cross-check did not run"};
          break;
        }
      }
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

namespace {

// Shared grid walk for the Lemma 5-7 and Lemma 8-10 suites.
template <typename CheckFn>
SuiteReport images_style_suite(const std::string& name, const VerifyLimits& lim, CheckFn&& fn) {
  SuiteReport report{name, {}};
  for (auto [p, n] : field_grid(lim.images_primes, lim.images_max)) {
    FieldCtx ctx = build_field(p, n);
    CyclotomicPartition part = build_partition(ctx);
    const u64 minus_one = ctx.neg(ctx.one()).v;
    for (unsigned k = 1; k <= 2 * n; ++k) {
      CheckResult check{pnk_label(p, n, k), true, ""};
      ExponentParams ep = thm1_exponent(p, n, k);
      DerivativeImageAnalysis analysis = restricted_images(ctx, ep.d, part);
      std::string err = fn(p, n, k, analysis, minus_one);
      if (!err.empty()) check = {check.label, false, std::move(err)};
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

}  // namespace

SuiteReport run_suite_images(const VerifyLimits& lim) {
  return images_style_suite("images", lim,
                            [](u64 p, unsigned n, unsigned k,
                               const DerivativeImageAnalysis& analysis, u64 minus_one) {
                              ImageExpectation expect = expected_image_cardinalities(p, n, k);
                              return check_image_cardinalities(expect, analysis, minus_one);
                            });
}

SuiteReport run_suite_relations(const VerifyLimits& lim) {
  return images_style_suite("relations", lim,
                            [](u64 p, unsigned n, unsigned k,
                               const DerivativeImageAnalysis& analysis, u64) {
                              ImageRelations expect = expected_image_relations(p, n, k);
                              return check_image_relations(expect, analysis);
                            });
}

SuiteReport run_suite_lemma11(const VerifyLimits& lim) {
  SuiteReport report{"lemma11", {}};
  for (u64 q : lim.lemma11_fields) {
    // Factor q = p^n.
    u64 p = 0;
    unsigned n = 0;
    for (u64 cand : odd_primes_upto(q)) {
      u64 t = q;
      unsigned e = 0;
      while (t % cand == 0) {
        t /= cand;
        ++e;
      }
      if (t == 1 && e >= 1) {
        p = cand;
        n = e;
        break;
      }
    }
    if (p == 0) {
      report.checks.push_back({"q=" + std::to_string(q), false, "not a prime power"});
      continue;
    }
    FieldCtx ctx = build_field(p, n);
    CyclotomicPartition part = build_partition(ctx);
    for (unsigned k = 1; k <= n; ++k) {
      if (n % k != 0) continue;
      CheckResult check{"q=" + std::to_string(q) + " k=" + std::to_string(k), true, ""};
      Lemma11Report rep = verify_lemma11(ctx, k, part);
      if (!rep.all_pass()) {
        check = {check.label, false,
                 std::to_string(rep.failures.size()) + " of " + std::to_string(rep.checked) +
                     " values of b fail, first b=" + std::to_string(rep.failures.front())};
      }
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

SuiteReport run_suite_thm1(const VerifyLimits& lim) {
  SuiteReport report{"thm1", {}};
  for (auto [p, n] : field_grid(lim.thm1_primes, lim.qn_max)) {
    FieldCtx ctx = build_field(p, n);
    for (unsigned k = 1; k <= 2 * n; ++k) {
      CheckResult check{pnk_label(p, n, k), true, ""};
      Spectrum closed = spectrum_thm1(p, n, k);
      Spectrum brute = spectrum_bruteforce(ctx, thm1_exponent(p, n, k).d);
      if (!(closed == brute)) {
        check = {check.label, false,
                 "closed {" + to_string(closed) + "} != brute {" + to_string(brute) + "}"};
      }
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

SuiteReport run_suite_thm2(const VerifyLimits& lim) {
  SuiteReport report{"thm2", {}};
  for (auto [p, n] : field_grid(lim.thm2_primes, lim.qn_max)) {
    if (p % 4 != 3 || n % 2 == 0) continue;
    FieldCtx ctx = build_field(p, n);
    for (unsigned k = 1; k <= n; ++k) {
      if (n % k != 0) continue;
      CheckResult check{pnk_label(p, n, k), true, ""};
      Spectrum closed = spectrum_thm2(p, n, k);
      Spectrum brute = spectrum_bruteforce(ctx, thm2_exponent_params(p, n, k).d);
      if (!(closed == brute)) {
        check = {check.label, false,
                 "closed {" + to_string(closed) + "} != brute {" + to_string(brute) + "}"};
      }
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

std::vector<std::string> suite_names() {
  return {"cyclotomy", "lemma2", "lemma3",    "lemma4", "images",
          "relations", "lemma11", "thm1",     "thm2"};
}

std::vector<SuiteReport> run_suites(const std::string& name, const VerifyLimits& lim) {
  std::vector<SuiteReport> out;
  auto run_one = [&](const std::string& s) {
    if (s == "cyclotomy") out.push_back(run_suite_cyclotomy(lim));
    else if (s == "lemma2") out.push_back(run_suite_lemma2(lim));
    else if (s == "lemma3") out.push_back(run_suite_lemma3(lim));
    else if (s == "lemma4") out.push_back(run_suite_lemma4(lim));
    else if (s == "images") out.push_back(run_suite_images(lim));
    else if (s == "relations") out.push_back(run_suite_relations(lim));
    else if (s == "lemma11") out.push_back(run_suite_lemma11(lim));
    else if (s == "thm1") out.push_back(run_suite_thm1(lim));
    else if (s == "thm2") out.push_back(run_suite_thm2(lim));
    else fail(Errc::kBadArgument, "unknown suite: " + s);
  };
  if (name == "all") {
    for (const std::string& s : suite_names()) run_one(s);
  } else {
    run_one(name);
  }
  return out;
}

}  // namespace diffspec
