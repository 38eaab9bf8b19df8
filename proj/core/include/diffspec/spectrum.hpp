#pragma once

#include <map>
#include <string>

#include "diffspec/intmath.hpp"

namespace diffspec {

/// Differential spectrum of one exponent over one field: omega maps a
/// multiplicity i to the number of b with N(1,b) = i; only nonzero counts
/// are stored. b ranges over all of F_q (including b = 0), so
/// sum omega_i = q and sum i*omega_i = q.
struct Spectrum {
  u64 q = 0;
  std::map<u64, u64> omega;

  u64 delta() const { return omega.empty() ? 0 : omega.rbegin()->first; }
  u64 omega_at(u64 i) const {
    auto it = omega.find(i);
    return it == omega.end() ? 0 : it->second;
  }
  bool mass_ok() const {
    u64 total = 0, weighted = 0;
    for (auto [i, c] : omega) {
      total += c;
      weighted += i * c;
    }
    return total == q && weighted == q;
  }
  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// "0:99 4:15 5:1 6:10" — ascending multiplicity.
std::string to_string(const Spectrum& s);

}  // namespace diffspec
