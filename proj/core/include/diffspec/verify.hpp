#pragma once

#include <string>
#include <vector>

#include "diffspec/intmath.hpp"

namespace diffspec {

/// Oracle-equivalence suites: every closed form in the library checked
/// against enumeration over a parameter grid.

struct CheckResult {
  std::string label;
  bool pass = true;
  std::string detail;  // empty on pass
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  u64 passed() const {
    u64 n = 0;
    for (const auto& c : checks) n += c.pass;
    return n;
  }
  const CheckResult* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
};

struct VerifyLimits {
  u64 qn_max = 100000;            // thm1/thm2 grids: p^n <= qn_max
  u64 cyclo_max = 10000;          // lemma1 grid
  u64 ext_bound = u64{1} << 24;   // lemma2 grid: p^{2n} <= ext_bound
  u64 images_max = 10000;         // lemmas 5-10 grid
  u64 lemma3_n_max = 1000;
  u64 lemma4_p_max = 11;
  unsigned lemma4_exp_max = 12;
  std::vector<u64> thm1_primes = {3, 5, 7, 11};
  std::vector<u64> thm2_primes = {3, 7, 11, 19};
  std::vector<u64> images_primes = {3, 5, 7, 11, 13};
  std::vector<u64> lemma11_fields = {7, 27, 343, 1331};
};

std::vector<std::string> suite_names();  // cyclotomy, lemma2, ..., thm2

SuiteReport run_suite_cyclotomy(const VerifyLimits& lim);  // Lemma 1
SuiteReport run_suite_lemma2(const VerifyLimits& lim);
SuiteReport run_suite_lemma3(const VerifyLimits& lim);
SuiteReport run_suite_lemma4(const VerifyLimits& lim);
SuiteReport run_suite_images(const VerifyLimits& lim);     // Lemmas 5-7
SuiteReport run_suite_relations(const VerifyLimits& lim);  // Lemmas 8-10
SuiteReport run_suite_lemma11(const VerifyLimits& lim);
SuiteReport run_suite_thm1(const VerifyLimits& lim);
SuiteReport run_suite_thm2(const VerifyLimits& lim);

/// Runs one suite by name; "all" runs everything in declaration order.
std::vector<SuiteReport> run_suites(const std::string& name, const VerifyLimits& lim);

/// Odd primes up to and including x.
std::vector<u64> odd_primes_upto(u64 x);

}  // namespace diffspec
