#pragma once

#include <vector>

#include "diffspec/derivative.hpp"

namespace diffspec {

/// Exponent-space scan for low differential uniformity.

struct SearchOptions {
  u64 max_delta = 2;
  bool dedup_frobenius = true;  // identify d ~ p*d mod (q-1)
  bool merge_inverse = false;   // also identify permutation exponents with their inverses
  u64 search_bound = 100000;    // largest admissible field size
};

struct SearchResult {
  u64 d = 0;          // smallest scanned exponent of the class
  u64 canonical = 0;  // minimum over the Frobenius orbit (and inverse orbit when merged)
  Spectrum spectrum;
  u64 delta() const { return spectrum.delta(); }
};

/// Scans d in [2, q-2] and reports every class with delta <= max_delta,
/// sorted by (delta, canonical, d). When dedup is on, one representative
/// per orbit is computed and a second orbit member is re-evaluated as an
/// equal-spectrum check; merge_inverse additionally verifies the
/// inverse-exponent spectrum empirically before merging.
std::vector<SearchResult> search_exponents(const FieldCtx& ctx, const SearchOptions& opts);

/// Frobenius orbit {d * p^i mod (q-1)} of an exponent, sorted ascending.
std::vector<u64> frobenius_orbit(u64 d, u64 p, u64 q);

}  // namespace diffspec
