#include "diffspec/field.hpp"

#include <algorithm>
#include <numeric>

#include "diffspec/table_cache.hpp"

namespace diffspec {
namespace {

constexpr u64 kMaxQ = u64{1} << 62;        // packing + exponent width limit
constexpr u64 kMaxTableQ = u64{1} << 32;   // antilog entries are u32
constexpr u64 kDlogScanBound = u64{1} << 26;

// Dense little-endian polynomial over Z_p, used only during construction.
struct Poly {
  std::vector<u64> c;

  unsigned deg() const {
    for (size_t i = c.size(); i-- > 0;)
      if (c[i] != 0) return static_cast<unsigned>(i);
    return 0;
  }
  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](u64 x) { return x == 0; });
  }
  void trim() {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
  }
};

Poly poly_x() { return {{0, 1}}; }

Poly poly_mod(Poly a, const Poly& f, u64 p) {
  a.trim();
  const unsigned df = f.deg();
  while (!a.is_zero() && a.deg() >= df) {
    const unsigned da = a.deg();
    // f is monic, so the quotient digit is just the leading coefficient.
    const u64 lead = a.c[da];
    for (unsigned i = 0; i <= df; ++i) {
      u64& t = a.c[da - df + i];
      t = (t + (p - mulmod(lead, f.c[i], p))) % p;
    }
    a.trim();
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  Poly r;
  r.c.assign(a.c.size() + b.c.size(), 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j], p)) % p;
    }
  }
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly r{{1}};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), 0);
  for (size_t i = 0; i < b.c.size(); ++i) a.c[i] = (a.c[i] + p - b.c[i]) % p;
  a.trim();
  return a;
}

// Monicize then Euclid; only constant-vs-nonconstant matters to callers.
Poly poly_gcd(Poly a, Poly b, u64 p) {
  a.trim();
  b.trim();
  while (!b.is_zero()) {
    // Scale b monic so poly_mod's monic assumption holds.
    Poly bm = b;
    u64 lead = bm.c[bm.deg()];
    u64 linv = powmod(lead, p - 2, p);
    for (u64& x : bm.c) x = mulmod(x, linv, p);
    Poly r = poly_mod(std::move(a), bm, p);
    a = std::move(bm);
    b = std::move(r);
    b.trim();
  }
  return a;
}

u64 poly_eval(const Poly& f, u64 x, u64 p) {
  u64 r = 0;
  for (size_t i = f.c.size(); i-- > 0;) r = (mulmod(r, x, p) + f.c[i]) % p;
  return r;
}

bool is_irreducible(const Poly& f, u64 p, unsigned n) {
  if (n == 1) return true;
  if (n <= 3) {
    // Degree 2 and 3 are irreducible exactly when rootless.
    for (u64 r = 0; r < p; ++r)
      if (poly_eval(f, r, p) == 0) return false;
    return true;
  }
  // x^{p^i} chain: f is irreducible iff x^{p^n} == x (mod f) and
  // gcd(x^{p^{n/r}} - x, f) = 1 for every prime r | n.
  std::vector<u64> nfactors = distinct_prime_factors(n);
  std::vector<unsigned> checkpoints;
  for (u64 r : nfactors) checkpoints.push_back(n / static_cast<unsigned>(r));
  Poly h = poly_x();
  for (unsigned i = 1; i <= n; ++i) {
    h = poly_powmod(std::move(h), p, f, p);
    if (std::find(checkpoints.begin(), checkpoints.end(), i) != checkpoints.end()) {
      Poly g = poly_gcd(poly_sub(h, poly_x(), p), f, p);
      if (g.deg() != 0) return false;
    }
  }
  return poly_sub(h, poly_x(), p).is_zero();
}

u64 pack_coeffs(const std::vector<u64>& c, u64 p, unsigned n) {
  u64 v = 0;
  for (unsigned i = n; i-- > 0;) v = v * p + (i < c.size() ? c[i] : 0);
  return v;
}

Poly unpack_element(u64 v, u64 p, unsigned n) {
  Poly r;
  r.c.assign(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    r.c[i] = v % p;
    v /= p;
  }
  return r;
}

void validate_p_n(u64 p, unsigned n) {
  if (p < 2 || !is_prime_u64(p)) fail(Errc::kNotPrime, std::to_string(p) + " is not prime");
  if (p == 2) fail(Errc::kEvenCharacteristic, "characteristic 2 is out of scope");
  if (n < 1) fail(Errc::kBadArgument, "extension degree must be >= 1");
}

}  // namespace

std::vector<u32> FieldBuilder::lex_first_irreducible(u64 p, unsigned n) {
  // Candidates are the non-leading coefficients (c0,...,c_{n-1}) in
  // lexicographic order, constant coefficient compared first.
  Poly f;
  f.c.assign(n + 1, 0);
  f.c[n] = 1;
  const u64 q = checked_pow(p, n, kMaxQ);
  for (u64 rank = 0; rank < q; ++rank) {
    u64 r = rank;
    for (unsigned i = 0; i < n; ++i) {
      f.c[n - 1 - i] = r % p;
      r /= p;
    }
    if (f.c[0] == 0 && n > 1) continue;  // divisible by x
    if (is_irreducible(f, p, n)) {
      std::vector<u32> out(n + 1);
      for (unsigned i = 0; i <= n; ++i) out[i] = static_cast<u32>(f.c[i]);
      return out;
    }
  }
  fail(Errc::kInternal, "no irreducible polynomial found");
}

FieldElement FieldCtx::from_coeffs(std::span<const u32> coeffs) const {
  if (coeffs.size() > params_.n) fail(Errc::kBadArgument, "too many coefficients");
  u64 v = 0;
  for (size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= params_.p) fail(Errc::kBadArgument, "coefficient not reduced mod p");
    v = v * params_.p + coeffs[i];
  }
  return {v};
}

std::vector<u32> FieldCtx::coeffs(FieldElement x) const {
  std::vector<u32> out(params_.n);
  u64 v = x.v;
  for (unsigned i = 0; i < params_.n; ++i) {
    out[i] = static_cast<u32>(v % params_.p);
    v /= params_.p;
  }
  return out;
}

FieldElement FieldCtx::element_at(u64 rank) const {
  // Digit-reverse the rank in base p: the constant coefficient is the most
  // significant digit of the rank, so ranks enumerate coefficient-lex order.
  u64 rev = 0;
  for (unsigned i = 0; i < params_.n; ++i) {
    rev = rev * params_.p + rank % params_.p;
    rank /= params_.p;
  }
  return {rev};
}

FieldElement FieldCtx::add(FieldElement a, FieldElement b) const {
  const u64 p = params_.p;
  u64 r = 0, m = 1, av = a.v, bv = b.v;
  for (unsigned i = 0; i < params_.n; ++i) {
    u64 s = av % p + bv % p;
    if (s >= p) s -= p;
    r += s * m;
    av /= p;
    bv /= p;
    m *= p;
  }
  return {r};
}

FieldElement FieldCtx::sub(FieldElement a, FieldElement b) const {
  const u64 p = params_.p;
  u64 r = 0, m = 1, av = a.v, bv = b.v;
  for (unsigned i = 0; i < params_.n; ++i) {
    u64 da = av % p, db = bv % p;
    r += (da >= db ? da - db : da + p - db) * m;
    av /= p;
    bv /= p;
    m *= p;
  }
  return {r};
}

FieldElement FieldCtx::neg(FieldElement a) const {
  const u64 p = params_.p;
  u64 r = 0, m = 1, av = a.v;
  for (unsigned i = 0; i < params_.n; ++i) {
    u64 d = av % p;
    r += (d == 0 ? 0 : p - d) * m;
    av /= p;
    m *= p;
  }
  return {r};
}

FieldElement FieldCtx::mul(FieldElement a, FieldElement b) const {
  if (a.v == 0 || b.v == 0) return {0};
  if (repr_ == Repr::kLogTable) {
    u64 s = static_cast<u64>(log_[a.v]) + log_[b.v];
    const u64 m = params_.q - 1;
    if (s >= m) s -= m;
    return {antilog_[s]};
  }
  Poly pa = unpack_element(a.v, params_.p, params_.n);
  Poly pb = unpack_element(b.v, params_.p, params_.n);
  Poly f;
  f.c.assign(params_.modulus.begin(), params_.modulus.end());
  Poly r = poly_mulmod(pa, pb, f, params_.p);
  return {pack_coeffs(r.c, params_.p, params_.n)};
}

FieldElement FieldCtx::inv(FieldElement a) const {
  if (a.v == 0) fail(Errc::kZeroInverse, "inverse of zero");
  if (repr_ == Repr::kLogTable) {
    const u64 m = params_.q - 1;
    u64 e = (m - log_[a.v]) % m;
    return {antilog_[e]};
  }
  return pow(a, static_cast<i64>(params_.q) - 2);
}

FieldElement FieldCtx::pow(FieldElement a, i64 e) const {
  const u64 m = params_.q - 1;
  if (a.v == 0) {
    if (e > 0) return {0};
    if (e == 0) return {1};
    fail(Errc::kZeroInverse, "negative power of zero");
  }
  u64 er = static_cast<u64>(((e % static_cast<i64>(m)) + static_cast<i64>(m)) % static_cast<i64>(m));
  if (repr_ == Repr::kLogTable) {
    return {antilog_[mulmod(log_[a.v], er, m)]};
  }
  Poly base = unpack_element(a.v, params_.p, params_.n);
  Poly f;
  f.c.assign(params_.modulus.begin(), params_.modulus.end());
  Poly r = poly_powmod(std::move(base), er, f, params_.p);
  return {pack_coeffs(r.c, params_.p, params_.n)};
}

u64 FieldCtx::dlog(FieldElement x) const {
  if (x.v == 0) fail(Errc::kLogOfZero, "discrete log of zero");
  if (repr_ == Repr::kLogTable) return log_[x.v];
  if (params_.q > kDlogScanBound)
    fail(Errc::kTableBoundExceeded, "dlog linear scan infeasible at this field size");
  FieldElement acc = one();
  for (u64 t = 0; t < params_.q - 1; ++t) {
    if (acc == x) return t;
    acc = mul(acc, alpha_);
  }
  fail(Errc::kInternal, "dlog scan failed");
}

FieldElement FieldCtx::antilog(u64 e) const {
  e %= params_.q - 1;
  if (repr_ == Repr::kLogTable) return {antilog_[e]};
  return pow(alpha_, static_cast<i64>(e));
}

bool FieldCtx::is_square(FieldElement x) const {
  if (x.v == 0) fail(Errc::kZeroInput, "square test on zero");
  if (repr_ == Repr::kLogTable) return (log_[x.v] & 1) == 0;
  return pow(x, static_cast<i64>((params_.q - 1) / 2)) == one();
}

u64 FieldCtx::element_order(FieldElement x) const {
  if (x.v == 0) fail(Errc::kZeroInput, "order of zero");
  const u64 m = params_.q - 1;
  if (repr_ == Repr::kLogTable) return m / std::gcd<u64>(log_[x.v], m);
  u64 order = m;
  for (u64 f : qm1_factors_) {
    while (order % f == 0 && pow(x, static_cast<i64>(order / f)) == one()) order /= f;
  }
  return order;
}

namespace {

bool has_full_order(const FieldCtx& ctx, FieldElement x, const std::vector<u64>& factors) {
  if (x.v == 0) return false;
  const u64 m = ctx.q() - 1;
  for (u64 f : factors)
    if (ctx.pow(x, static_cast<i64>(m / f)) == ctx.one()) return false;
  return true;
}

void build_tables(FieldCtx& ctx, FieldParams& params, FieldElement alpha, std::vector<u32>& log,
                  std::vector<u32>& antilog) {
  const u64 q = params.q;
  antilog.assign(q - 1, 0);
  log.assign(q, 0);
  std::vector<u8> seen(q, 0);
  FieldElement cur{1};
  for (u64 t = 0; t < q - 1; ++t) {
    antilog[t] = static_cast<u32>(cur.v);
    if (cur.v == 0 || cur.v >= q || seen[cur.v])
      fail(Errc::kInternal, "primitive element order defect during table build");
    seen[cur.v] = 1;
    log[cur.v] = static_cast<u32>(t);
    cur = ctx.mul(cur, alpha);
  }
  if (cur.v != 1) fail(Errc::kInternal, "alpha^(q-1) != 1");
}

}  // namespace

FieldCtx FieldBuilder::with_alpha(u64 p, unsigned n, std::vector<u32> modulus, FieldElement alpha,
                                  Repr repr, u64 table_bound, std::vector<u32> antilog) {
  validate_p_n(p, n);
  FieldCtx ctx;
  ctx.params_.p = p;
  ctx.params_.n = n;
  ctx.params_.q = checked_pow(p, n, kMaxQ);
  ctx.params_.modulus = std::move(modulus);
  ctx.alpha_ = alpha;
  ctx.repr_ = Repr::kPoly;  // arithmetic runs in poly mode until tables exist
  ctx.qm1_factors_ = distinct_prime_factors(ctx.params_.q - 1);
  const u64 q = ctx.params_.q;
  if (alpha.v == 0 || alpha.v >= q) fail(Errc::kBadArgument, "alpha outside field");

  if (repr == Repr::kLogTable) {
    if (q > table_bound || q > kMaxTableQ)
      fail(Errc::kTableBoundExceeded, "field size " + std::to_string(q) + " above table bound");
    if (!antilog.empty()) {
      if (antilog.size() != q - 1 || antilog[0] != 1 || antilog[1] != alpha.v)
        fail(Errc::kCacheCorrupt, "antilog table does not match header");
      ctx.log_.assign(q, 0);
      std::vector<u8> seen(q, 0);
      for (u64 t = 0; t < q - 1; ++t) {
        u64 x = antilog[t];
        if (x == 0 || x >= q || seen[x]) fail(Errc::kCacheCorrupt, "antilog table is not a bijection");
        seen[x] = 1;
        ctx.log_[x] = static_cast<u32>(t);
      }
      ctx.antilog_ = std::move(antilog);
    } else {
      if (!has_full_order(ctx, alpha, ctx.qm1_factors_))
        fail(Errc::kBadArgument, "alpha is not primitive");
      build_tables(ctx, ctx.params_, alpha, ctx.log_, ctx.antilog_);
    }
    ctx.repr_ = Repr::kLogTable;
  } else {
    if (!has_full_order(ctx, alpha, ctx.qm1_factors_))
      fail(Errc::kBadArgument, "alpha is not primitive");
  }
  return ctx;
}

FieldCtx build_field(u64 p, unsigned n, const BuildOptions& opts) {
  validate_p_n(p, n);
  const u64 q = checked_pow(p, n, kMaxQ);
  if (q < 3) fail(Errc::kBadArgument, "field too small");

  Repr repr = Repr::kPoly;
  switch (opts.repr) {
    case ReprHint::kAuto:
      repr = (q <= opts.table_bound && q <= kMaxTableQ) ? Repr::kLogTable : Repr::kPoly;
      break;
    case ReprHint::kLogTable:
      if (q > opts.table_bound || q > kMaxTableQ)
        fail(Errc::kTableBoundExceeded, "field size " + std::to_string(q) + " above table bound");
      repr = Repr::kLogTable;
      break;
    case ReprHint::kPoly:
      repr = Repr::kPoly;
      break;
  }

  std::vector<u32> modulus = FieldBuilder::lex_first_irreducible(p, n);

  if (repr == Repr::kLogTable && opts.use_cache) {
    CachedTable cached;
    if (load_cached_table(cache_path_for(opts.cache_dir, p, n, modulus, 0), p, n, modulus, &cached)) {
      return FieldBuilder::with_alpha(p, n, std::move(modulus), {cached.alpha}, Repr::kLogTable,
                                      opts.table_bound, std::move(cached.antilog));
    }
  }

  // Assemble a poly-mode context first; its arithmetic drives the
  // primitive-element search.
  FieldCtx ctx;
  ctx.params_.p = p;
  ctx.params_.n = n;
  ctx.params_.q = q;
  ctx.params_.modulus = modulus;
  ctx.repr_ = Repr::kPoly;
  ctx.qm1_factors_ = distinct_prime_factors(q - 1);

  // Primitive element: first in coefficient-lex order with order q-1.
  FieldElement alpha{0};
  for (u64 rank = 1; rank < q; ++rank) {
    FieldElement cand = ctx.element_at(rank);
    if (has_full_order(ctx, cand, ctx.qm1_factors_)) {
      alpha = cand;
      break;
    }
  }
  if (alpha.v == 0) fail(Errc::kInternal, "no primitive element found");
  ctx.alpha_ = alpha;

  if (repr == Repr::kLogTable) {
    build_tables(ctx, ctx.params_, alpha, ctx.log_, ctx.antilog_);
    ctx.repr_ = Repr::kLogTable;
    if (opts.use_cache) {
      store_cached_table(cache_path_for(opts.cache_dir, p, n, ctx.params_.modulus, 0), ctx.params_,
                         alpha.v, ctx.antilog_);
    }
  }
  return ctx;
}

}  // namespace diffspec
