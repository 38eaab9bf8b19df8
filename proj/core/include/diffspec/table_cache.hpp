#pragma once

#include <string>
#include <vector>

#include "diffspec/field.hpp"

namespace diffspec {

/// Antilog table cache, one file per (p, n, modulus) keyed by a content
/// hash. Layout: header (magic, version, p, n, modulus coefficients,
/// alpha, entry width, q) followed by the antilog table as fixed-width
/// little-endian integers.

/// Resolves the cache directory: explicit override, else $DIFFSPEC_CACHE,
/// else ./.diffspec-cache.
std::string cache_directory(const std::string& override_dir = {});

/// File path for a table. `alpha_tag` is 0 for the standard deterministic
/// build; extension fields rebased to a specific primitive element pass
/// that element's value so they get their own entry.
std::string cache_path_for(const std::string& override_dir, u64 p, unsigned n,
                           const std::vector<u32>& modulus, u64 alpha_tag);

struct CachedTable {
  u64 alpha = 0;
  std::vector<u32> antilog;
};

/// Returns false if the file is absent; throws CacheCorrupt on a header or
/// payload mismatch.
bool load_cached_table(const std::string& path, u64 p, unsigned n, const std::vector<u32>& modulus,
                       CachedTable* out);

void store_cached_table(const std::string& path, const FieldParams& params, u64 alpha,
                        const std::vector<u32>& antilog);

struct CacheEntryInfo {
  std::string file;
  u64 p = 0;
  unsigned n = 0;
  u64 q = 0;
  u64 alpha = 0;
  u64 bytes = 0;
};

std::vector<CacheEntryInfo> inspect_cache(const std::string& override_dir = {});
/// Removes all cache files; returns how many were deleted.
u64 clear_cache(const std::string& override_dir = {});

}  // namespace diffspec
