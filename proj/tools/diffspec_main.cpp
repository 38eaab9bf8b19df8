// diffspec: differential spectra of power functions over odd-characteristic
// finite fields. Subcommands: spectrum, table1, search, verify, cyclotomy,
// cache. Exit codes: 0 success, 1 verification mismatch, 2 parameter error.

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "diffspec/closed_forms.hpp"
#include "diffspec/cyclotomy.hpp"
#include "diffspec/derivative.hpp"
#include "diffspec/field.hpp"
#include "diffspec/search.hpp"
#include "diffspec/spectrum.hpp"
#include "diffspec/table_cache.hpp"
#include "diffspec/verify.hpp"

using json = nlohmann::ordered_json;
using namespace diffspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

// Cache only fields that are worth caching.
BuildOptions field_options(u64 p, unsigned n) {
  BuildOptions opts;
  u64 q = 1;
  bool big = false;
  for (unsigned i = 0; i < n && !big; ++i) {
    q *= p;
    big = q >= (u64{1} << 16);
  }
  opts.use_cache = big;
  return opts;
}

json omega_to_json(const Spectrum& s) {
  json arr = json::array();
  for (auto [i, c] : s.omega) arr.push_back(json::array({i, c}));
  return arr;
}

std::string omega_to_csv(const Spectrum& s) {
  std::ostringstream os;
  bool first = true;
  for (auto [i, c] : s.omega) {
    if (!first) os << ';';
    os << i << ':' << c;
    first = false;
  }
  return os.str();
}

struct SpectrumRow {
  u64 p = 0;
  unsigned n = 0;
  std::optional<unsigned> k;
  u64 d = 0;
  Spectrum spectrum;            // brute force
  std::optional<Spectrum> closed;
  std::optional<u64> bound;
  std::optional<bool> match;
};

json row_to_json(const SpectrumRow& r) {
  json j;
  j["p"] = r.p;
  j["n"] = r.n;
  if (r.k)
    j["k"] = *r.k;
  else
    j["k"] = nullptr;
  j["d"] = r.d;
  j["omega"] = omega_to_json(r.spectrum);
  j["delta"] = r.spectrum.delta();
  if (r.bound)
    j["bound"] = *r.bound;
  else
    j["bound"] = nullptr;
  if (r.match)
    j["match"] = *r.match;
  else
    j["match"] = nullptr;
  return j;
}

void print_row_csv_header(std::ostream& os) { os << "p,n,k,d,omega,delta,bound,match\n"; }

void print_row_csv(std::ostream& os, const SpectrumRow& r) {
  os << r.p << ',' << r.n << ',';
  if (r.k) os << *r.k;
  os << ',' << r.d << ',' << omega_to_csv(r.spectrum) << ',' << r.spectrum.delta() << ',';
  if (r.bound) os << *r.bound;
  os << ',';
  if (r.match) os << (*r.match ? "true" : "false");
  os << '\n';
}

int cmd_spectrum(u64 p, unsigned n, std::optional<u64> d_flag, const std::string& family,
                 unsigned k, const std::string& format) {
  FieldCtx ctx = build_field(p, n, field_options(p, n));
  SpectrumRow row;
  row.p = p;
  row.n = n;
  if (!family.empty()) {
    if (k == 0) fail(Errc::kBadArgument, "--family requires --k");
    row.k = k;
    if (family == "thm1") {
      row.d = thm1_exponent(p, n, k).d;
      row.closed = spectrum_thm1(p, n, k);
      row.bound = helleseth_bound(p, n, k);
    } else if (family == "thm2") {
      row.d = thm2_exponent_params(p, n, k).d;
      row.closed = spectrum_thm2(p, n, k);
    } else {
      fail(Errc::kBadArgument, "--family must be thm1 or thm2");
    }
  } else {
    if (!d_flag) fail(Errc::kBadArgument, "give --d or --family/--k");
    row.d = reduce_exponent(*d_flag, ctx.q());
    if (row.d == 0) fail(Errc::kBadArgument, "d = 0 is rejected (constant derivative)");
  }
  row.spectrum = spectrum_bruteforce(ctx, row.d);
  if (row.closed) row.match = (*row.closed == row.spectrum);

  if (format == "json") {
    std::cout << row_to_json(row).dump() << '\n';
  } else if (format == "csv") {
    print_row_csv_header(std::cout);
    print_row_csv(std::cout, row);
  } else {
    std::cout << "field: p=" << p << " n=" << n << " (q=" << ctx.q() << ")  d=" << row.d;
    if (row.k) std::cout << "  family=" << family << " k=" << *row.k;
    std::cout << "\nbrute:  delta=" << row.spectrum.delta() << "  omega[" << to_string(row.spectrum)
              << "]\n";
    if (row.closed) {
      std::cout << "closed: delta=" << row.closed->delta() << "  omega[" << to_string(*row.closed)
                << "]\n";
      if (row.bound) std::cout << "bound:  " << *row.bound << "\n";
      std::cout << "match:  " << (*row.match ? "yes" : "NO") << "\n";
    }
  }
  return row.match && !*row.match ? kExitMismatch : kExitOk;
}

struct ReportRow {
  u64 p;
  unsigned n, k;
  u64 bound;
  u64 delta_closed;
  u64 delta_brute;
  bool match;
};

int cmd_table1(const std::string& format) {
  static constexpr struct { u64 p; unsigned n, k; } kRows[] = {
      {5, 3, 2}, {5, 5, 2}, {5, 5, 4}, {7, 3, 2}, {7, 5, 2},
      {7, 5, 4}, {7, 7, 2}, {7, 7, 4}, {7, 7, 6}, {11, 3, 2},
  };
  std::vector<ReportRow> rows;
  FieldCtx ctx;  // reused across rows sharing (p, n)
  u64 cp = 0;
  unsigned cn = 0;
  for (auto [p, n, k] : kRows) {
    if (p != cp || n != cn) {
      ctx = build_field(p, n, field_options(p, n));
      cp = p;
      cn = n;
    }
    ReportRow row{p, n, k, 0, 0, 0, false};
    row.bound = helleseth_bound(p, n, k);
    row.delta_closed = spectrum_thm1(p, n, k).delta();
    row.delta_brute = spectrum_bruteforce(ctx, thm1_exponent(p, n, k).d).delta();
    row.match = row.delta_closed == row.delta_brute;
    rows.push_back(row);
  }

  bool all = true;
  for (const auto& r : rows) all = all && r.match;

  if (format == "json") {
    for (const auto& r : rows) {
      json j;
      j["p"] = r.p;
      j["n"] = r.n;
      j["k"] = r.k;
      j["bound"] = r.bound;
      j["delta_closed"] = r.delta_closed;
      j["delta_brute"] = r.delta_brute;
      j["match"] = r.match;
      std::cout << j.dump() << '\n';
    }
  } else if (format == "csv") {
    std::cout << "p,n,k,bound,delta_closed,delta_brute,match\n";
    for (const auto& r : rows)
      std::cout << r.p << ',' << r.n << ',' << r.k << ',' << r.bound << ',' << r.delta_closed
                << ',' << r.delta_brute << ',' << (r.match ? "true" : "false") << '\n';
  } else {
    std::cout << "  p  n  k  bound  delta  brute  match\n";
    for (const auto& r : rows) {
      std::cout << std::setw(3) << r.p << std::setw(3) << r.n << std::setw(3) << r.k
                << std::setw(7) << r.bound << std::setw(7) << r.delta_closed << std::setw(7)
                << r.delta_brute << std::setw(7) << (r.match ? "yes" : "NO") << '\n';
    }
    std::cout << (all ? "all rows match\n" : "MISMATCH\n");
  }
  return all ? kExitOk : kExitMismatch;
}

int cmd_search(u64 p, unsigned n, u64 max_delta, bool dedup, bool merge_inverse, u64 bound,
               const std::string& format) {
  FieldCtx ctx = build_field(p, n, field_options(p, n));
  SearchOptions so;
  so.max_delta = max_delta;
  so.dedup_frobenius = dedup;
  so.merge_inverse = merge_inverse;
  so.search_bound = bound;
  std::vector<SearchResult> results = search_exponents(ctx, so);

  if (format == "json") {
    for (const auto& r : results) {
      json j;
      j["p"] = p;
      j["n"] = n;
      j["d"] = r.d;
      j["canonical"] = r.canonical;
      j["omega"] = omega_to_json(r.spectrum);
      j["delta"] = r.spectrum.delta();
      std::cout << j.dump() << '\n';
    }
  } else if (format == "csv") {
    std::cout << "p,n,d,canonical,omega,delta\n";
    for (const auto& r : results)
      std::cout << p << ',' << n << ',' << r.d << ',' << r.canonical << ','
                << omega_to_csv(r.spectrum) << ',' << r.spectrum.delta() << '\n';
  } else {
    std::cout << "search p=" << p << " n=" << n << " (q=" << ctx.q()
              << ") max-delta=" << max_delta << (dedup ? " dedup=frobenius" : " dedup=off")
              << (merge_inverse ? "+inverse" : "") << "\n";
    for (const auto& r : results)
      std::cout << "  d=" << std::setw(7) << r.d << "  canonical=" << std::setw(7) << r.canonical
                << "  delta=" << r.spectrum.delta() << "  omega[" << to_string(r.spectrum) << "]\n";
    std::cout << results.size() << " exponent class(es)\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const VerifyLimits& lim, bool quiet) {
  std::vector<SuiteReport> reports = run_suites(suite, lim);
  bool all = true;
  for (const auto& r : reports) {
    std::cout << "suite " << r.suite << ": " << r.passed() << "/" << r.checks.size()
              << " checks pass\n";
    if (!quiet)
      for (const auto& c : r.checks)
        std::cout << "  " << c.label << ": " << (c.pass ? "ok" : "FAIL " + c.detail) << '\n';
    all = all && r.all_pass();
  }
  if (!all) {
    for (const auto& r : reports) {
      if (const CheckResult* f = r.first_failure()) {
        std::cout << "FIRST FAILURE [" << r.suite << "] " << f->label << ": " << f->detail << '\n';
        break;
      }
    }
  }
  return all ? kExitOk : kExitMismatch;
}

int cmd_cyclotomy(u64 p, unsigned n, const std::string& format) {
  FieldCtx ctx = build_field(p, n, field_options(p, n));
  CyclotomicPartition part = build_partition(ctx);
  bool all = true;
  json rows = json::array();
  std::ostringstream human;
  human << "cyclotomic numbers for p=" << p << " n=" << n << " (q=" << ctx.q() << ", q mod 4 = "
        << ctx.q() % 4 << ")\n";
  human << "  (i,j)  counted  closed  match\n";
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const u64 counted = part.number(i, j);
      const u64 closed = cyclotomic_number_closed(p, n, i, j);
      const bool match = counted == closed;
      all = all && match;
      human << "  (" << i << ',' << j << ")  " << std::setw(7) << counted << std::setw(8) << closed
            << std::setw(7) << (match ? "yes" : "NO") << '\n';
      json j2;
      j2["p"] = p;
      j2["n"] = n;
      j2["i"] = i;
      j2["j"] = j;
      j2["counted"] = counted;
      j2["closed"] = closed;
      j2["match"] = match;
      rows.push_back(j2);
    }
  }
  if (format == "json") {
    for (const auto& r : rows) std::cout << r.dump() << '\n';
  } else if (format == "csv") {
    std::cout << "p,n,i,j,counted,closed,match\n";
    for (const auto& r : rows)
      std::cout << r["p"] << ',' << r["n"] << ',' << r["i"] << ',' << r["j"] << ','
                << r["counted"] << ',' << r["closed"] << ','
                << (r["match"].get<bool>() ? "true" : "false") << '\n';
  } else {
    std::cout << human.str();
  }
  return all ? kExitOk : kExitMismatch;
}

int cmd_cache_inspect(const std::string& dir) {
  std::vector<CacheEntryInfo> entries = inspect_cache(dir);
  std::cout << "cache directory: " << cache_directory(dir) << '\n';
  for (const auto& e : entries)
    std::cout << "  " << e.file << "  p=" << e.p << " n=" << e.n << " q=" << e.q
              << " alpha=" << e.alpha << "  " << e.bytes << " bytes\n";
  std::cout << entries.size() << " entr" << (entries.size() == 1 ? "y" : "ies") << '\n';
  return kExitOk;
}

int cmd_cache_clear(const std::string& dir) {
  const u64 removed = clear_cache(dir);
  std::cout << "removed " << removed << " cache file(s) from " << cache_directory(dir) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differential spectra of power functions over F_{p^n}"};
  app.require_subcommand(1);

  std::string format = "human";
  u64 p = 0;
  unsigned n = 1, k = 0;
  std::optional<u64> d_flag;
  std::string family;

  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "json", "csv"}))
        ->capture_default_str();
  };

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "brute-force spectrum of x^d, optionally against the closed form");
  spectrum->add_option("--p", p, "odd prime characteristic")->required();
  spectrum->add_option("--n", n, "extension degree")->required();
  CLI::Option* dopt = spectrum->add_option("--d", d_flag, "exponent");
  CLI::Option* fopt =
      spectrum->add_option("--family", family, "closed-form family (thm1 or thm2)")
          ->check(CLI::IsMember({"thm1", "thm2"}));
  spectrum->add_option("--k", k, "family parameter k");
  dopt->excludes(fopt);
  add_format(spectrum);

  CLI::App* table1 = app.add_subcommand("table1", "reproduce the ten bound-vs-exact rows");
  add_format(table1);

  u64 max_delta = 2, search_bound = 100000;
  bool dedup = true, merge_inverse = false;
  CLI::App* search = app.add_subcommand("search", "scan exponents for low uniformity");
  search->add_option("--p", p, "odd prime characteristic")->required();
  search->add_option("--n", n, "extension degree")->required();
  search->add_option("--max-delta", max_delta, "report classes with delta <= this")
      ->capture_default_str();
  search->add_flag("--dedup,!--no-dedup", dedup, "deduplicate by Frobenius orbit")
      ->capture_default_str();
  search->add_flag("--merge-inverse", merge_inverse,
                   "also merge permutation exponents with their inverses (spectra re-verified)");
  search->add_option("--search-bound", search_bound, "largest admissible field size")
      ->capture_default_str();
  add_format(search);

  std::string suite = "all";
  VerifyLimits lim;
  bool quiet = false;
  CLI::App* verify = app.add_subcommand("verify", "oracle-equivalence suites");
  verify->add_option("--suite", suite, "suite name or 'all'")
      ->check(CLI::IsMember({"cyclotomy", "lemma2", "lemma3", "lemma4", "images", "relations",
                             "lemma11", "thm1", "thm2", "all"}))
      ->capture_default_str();
  CLI::Option* qn_opt =
      verify->add_option("--qn-max", lim.qn_max, "field-size cap for thm1/thm2 (and for the "
                                                 "images/relations grids unless --images-max is given)")
          ->capture_default_str();
  verify->add_option("--cyclo-max", lim.cyclo_max, "lemma1 field-size cap")->capture_default_str();
  verify->add_option("--ext-bound", lim.ext_bound, "lemma2 p^{2n} cap")->capture_default_str();
  CLI::Option* images_opt =
      verify->add_option("--images-max", lim.images_max, "lemma5-10 field-size cap")
          ->capture_default_str();
  verify->add_option("--lemma3-max", lim.lemma3_n_max, "lemma3 N cap")->capture_default_str();
  verify->add_option("--p-max", lim.lemma4_p_max, "lemma4 prime cap")->capture_default_str();
  verify->add_option("--exp-max", lim.lemma4_exp_max, "lemma4 exponent cap")
      ->capture_default_str();
  verify->add_flag("--quiet", quiet, "omit the per-check lines");

  CLI::App* cyclotomy =
      app.add_subcommand("cyclotomy", "partition counts against the closed form");
  cyclotomy->add_option("--p", p, "odd prime characteristic")->required();
  cyclotomy->add_option("--n", n, "extension degree")->required();
  add_format(cyclotomy);

  std::string cache_dir;
  CLI::App* cache = app.add_subcommand("cache", "inspect or clear the antilog table cache");
  cache->add_option("--dir", cache_dir, "cache directory (default: $DIFFSPEC_CACHE)");
  CLI::App* cache_inspect = cache->add_subcommand("inspect", "list cache entries");
  CLI::App* cache_clear = cache->add_subcommand("clear", "remove cache entries");
  cache->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (qn_opt->count() > 0 && images_opt->count() == 0)
    lim.images_max = std::min(lim.images_max, lim.qn_max);

  try {
    if (spectrum->parsed()) return cmd_spectrum(p, n, d_flag, family, k, format);
    if (table1->parsed()) return cmd_table1(format);
    if (search->parsed()) return cmd_search(p, n, max_delta, dedup, merge_inverse, search_bound, format);
    if (verify->parsed()) return cmd_verify(suite, lim, quiet);
    if (cyclotomy->parsed()) return cmd_cyclotomy(p, n, format);
    if (cache->parsed()) {
      if (cache_inspect->parsed()) return cmd_cache_inspect(cache_dir);
      if (cache_clear->parsed()) return cmd_cache_clear(cache_dir);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
