#include "diffspec/table_cache.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace diffspec {
namespace {

constexpr char kMagic[4] = {'D', 'S', 'P', 'C'};
constexpr u32 kVersion = 1;
constexpr const char* kSuffix = ".dstab";

u64 fnv1a_update(u64 h, const void* data, size_t len) {
  const unsigned char* b = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= b[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

u64 key_hash(u64 p, unsigned n, const std::vector<u32>& modulus, u64 alpha_tag) {
  u64 h = 0xcbf29ce484222325ull;
  h = fnv1a_update(h, &p, sizeof p);
  u64 n64 = n;
  h = fnv1a_update(h, &n64, sizeof n64);
  for (u32 c : modulus) h = fnv1a_update(h, &c, sizeof c);
  h = fnv1a_update(h, &alpha_tag, sizeof alpha_tag);
  return h;
}

template <typename T>
void write_le(std::ofstream& os, T v) {
  unsigned char buf[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), sizeof buf);
}

template <typename T>
bool read_le(std::ifstream& is, T* v) {
  unsigned char buf[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(buf), sizeof buf)) return false;
  T r = 0;
  for (size_t i = 0; i < sizeof(T); ++i) r |= static_cast<T>(buf[i]) << (8 * i);
  *v = r;
  return true;
}

unsigned entry_width_for(u64 q) {
  if (q <= 0x100) return 1;
  if (q <= 0x10000) return 2;
  return 4;
}

}  // namespace

std::string cache_directory(const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (const char* env = std::getenv("DIFFSPEC_CACHE"); env && *env) return env;
  return ".diffspec-cache";
}

std::string cache_path_for(const std::string& override_dir, u64 p, unsigned n,
                           const std::vector<u32>& modulus, u64 alpha_tag) {
  char name[128];
  std::snprintf(name, sizeof name, "p%llu_n%u_%016llx%s", static_cast<unsigned long long>(p), n,
                static_cast<unsigned long long>(key_hash(p, n, modulus, alpha_tag)), kSuffix);
  return (fs::path(cache_directory(override_dir)) / name).string();
}

bool load_cached_table(const std::string& path, u64 p, unsigned n, const std::vector<u32>& modulus,
                       CachedTable* out) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return false;
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    fail(Errc::kCacheCorrupt, path + ": bad magic");
  u32 version = 0;
  u64 fp = 0, fq = 0, falpha = 0;
  u32 fn = 0, width = 0;
  if (!read_le(is, &version) || version != kVersion) fail(Errc::kCacheCorrupt, path + ": version");
  if (!read_le(is, &fp) || !read_le(is, &fn)) fail(Errc::kCacheCorrupt, path + ": header");
  if (fp != p || fn != n) fail(Errc::kCacheCorrupt, path + ": field mismatch");
  std::vector<u32> fmod(n + 1);
  for (u32& c : fmod)
    if (!read_le(is, &c)) fail(Errc::kCacheCorrupt, path + ": modulus");
  if (fmod != modulus) fail(Errc::kCacheCorrupt, path + ": modulus mismatch");
  if (!read_le(is, &falpha) || !read_le(is, &width) || !read_le(is, &fq))
    fail(Errc::kCacheCorrupt, path + ": header");
  u64 expected_q = 1;
  for (unsigned i = 0; i < n; ++i) expected_q *= p;
  if (fq != expected_q) fail(Errc::kCacheCorrupt, path + ": q mismatch");
  if (width != entry_width_for(fq)) fail(Errc::kCacheCorrupt, path + ": entry width");
  out->alpha = falpha;
  out->antilog.assign(fq - 1, 0);
  for (u64 i = 0; i < fq - 1; ++i) {
    u32 v = 0;
    if (width == 1) {
      u8 b = 0;
      if (!read_le(is, &b)) fail(Errc::kCacheCorrupt, path + ": payload");
      v = b;
    } else if (width == 2) {
      std::uint16_t h = 0;
      if (!read_le(is, &h)) fail(Errc::kCacheCorrupt, path + ": payload");
      v = h;
    } else {
      if (!read_le(is, &v)) fail(Errc::kCacheCorrupt, path + ": payload");
    }
    out->antilog[i] = v;
  }
  return true;
}

void store_cached_table(const std::string& path, const FieldParams& params, u64 alpha,
                        const std::vector<u32>& antilog) {
  fs::path target(path);
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) return;  // cache is best-effort
    os.write(kMagic, 4);
    write_le(os, kVersion);
    write_le(os, params.p);
    write_le(os, static_cast<u32>(params.n));
    for (u32 c : params.modulus) write_le(os, c);
    write_le(os, alpha);
    const u32 width = entry_width_for(params.q);
    write_le(os, width);
    write_le(os, params.q);
    for (u32 v : antilog) {
      if (width == 1)
        write_le(os, static_cast<u8>(v));
      else if (width == 2)
        write_le(os, static_cast<std::uint16_t>(v));
      else
        write_le(os, v);
    }
    if (!os) return;
  }
  fs::rename(tmp, target, ec);
  if (ec) fs::remove(tmp, ec);
}

std::vector<CacheEntryInfo> inspect_cache(const std::string& override_dir) {
  std::vector<CacheEntryInfo> out;
  fs::path dir(cache_directory(override_dir));
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() != kSuffix) continue;
    std::ifstream is(entry.path(), std::ios::binary);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) continue;
    u32 version = 0;
    CacheEntryInfo info;
    info.file = entry.path().filename().string();
    info.bytes = entry.file_size(ec);
    u32 n = 0, width = 0;
    if (!read_le(is, &version) || !read_le(is, &info.p) || !read_le(is, &n)) continue;
    info.n = n;
    std::vector<u32> mod(n + 1);
    bool ok = true;
    for (u32& c : mod) ok = ok && read_le(is, &c);
    if (!ok || !read_le(is, &info.alpha) || !read_le(is, &width) || !read_le(is, &info.q)) continue;
    out.push_back(std::move(info));
  }
  std::sort(out.begin(), out.end(),
            [](const CacheEntryInfo& a, const CacheEntryInfo& b) { return a.file < b.file; });
  return out;
}

u64 clear_cache(const std::string& override_dir) {
  fs::path dir(cache_directory(override_dir));
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return 0;
  u64 removed = 0;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == kSuffix) {
      if (fs::remove(entry.path(), ec)) ++removed;
    }
  }
  return removed;
}

}  // namespace diffspec
