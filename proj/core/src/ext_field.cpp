#include "diffspec/ext_field.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "diffspec/table_cache.hpp"

namespace diffspec {
namespace {

// Minimal polynomial of x over Z_p, as scalar coefficients. x must generate
// the field (true for any primitive element).
std::vector<u64> minimal_polynomial(const FieldCtx& f, FieldElement x) {
  const unsigned n = f.n();
  std::vector<FieldElement> m{f.one()};  // monic, little-endian
  FieldElement conj = x;
  for (unsigned i = 0; i < n; ++i) {
    // m *= (y - conj)
    std::vector<FieldElement> next(m.size() + 1, f.zero());
    for (size_t j = 0; j < m.size(); ++j) {
      next[j + 1] = f.add(next[j + 1], m[j]);
      next[j] = f.sub(next[j], f.mul(m[j], conj));
    }
    m = std::move(next);
    conj = f.pow(conj, static_cast<i64>(f.p()));
  }
  if (!(conj == x)) fail(Errc::kInternal, "Frobenius orbit did not close");
  std::vector<u64> out(m.size());
  for (size_t j = 0; j < m.size(); ++j) {
    if (m[j].v >= f.p()) fail(Errc::kInternal, "minimal polynomial has non-scalar coefficient");
    out[j] = m[j].v;
  }
  return out;
}

u64 eval_scalar_poly(const FieldCtx& f, const std::vector<u64>& coeffs, FieldElement x) {
  FieldElement acc = f.zero();
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = f.mul(acc, x);
    acc = f.add(acc, f.from_int(coeffs[i]));
  }
  return acc.v;
}

}  // namespace

ExtFieldCtx build_quadratic_extension(const FieldCtx& base, const BuildOptions& opts) {
  const u64 p = base.p();
  const unsigned n = base.n();
  const u64 q = base.q();
  const u64 bigq = checked_pow(p, 2 * n, u64{1} << 62);

  Repr big_repr = Repr::kPoly;
  switch (opts.repr) {
    case ReprHint::kAuto:
    case ReprHint::kLogTable:
      if (bigq > opts.table_bound)
        fail(Errc::kTableBoundExceeded,
             "p^{2n} = " + std::to_string(bigq) + " above the table bound");
      big_repr = Repr::kLogTable;
      break;
    case ReprHint::kPoly:
      big_repr = Repr::kPoly;
      break;
  }

  // Standard deterministic big field first; its primitive element B anchors
  // discrete logs during the search for beta.
  BuildOptions big_opts = opts;
  big_opts.repr = (big_repr == Repr::kLogTable) ? ReprHint::kLogTable : ReprHint::kPoly;
  FieldCtx big0 = build_field(p, 2 * n, big_opts);

  const std::vector<u64> malpha = minimal_polynomial(base, base.alpha());

  // Root exponents of m_alpha inside the subfield: walk G^u for
  // G = B^{q+1}, the generator of the order-(q-1) subgroup.
  const FieldElement ggen = big0.antilog(q + 1);
  std::vector<u64> root_exponents;
  {
    FieldElement acc = big0.one();
    for (u64 u = 0; u + 1 < q; ++u) {
      if (eval_scalar_poly(big0, malpha, acc) == 0) root_exponents.push_back(u);
      acc = big0.mul(acc, ggen);
    }
  }
  if (root_exponents.size() != n)
    fail(Errc::kInternal, "expected n conjugate roots in the subfield");

  // beta: first element in coefficient-lex order that is primitive and
  // whose (q+1)-st power is a conjugate of alpha, so that
  // alpha -> beta^{q+1} extends to a field homomorphism.
  FieldElement beta{0};
  const u64 bigm = bigq - 1;
  if (big0.has_tables()) {
    std::unordered_set<u64> roots_mod(root_exponents.begin(), root_exponents.end());
    for (u64 rank = 1; rank < bigq; ++rank) {
      FieldElement cand = big0.element_at(rank);
      const u64 lg = big0.dlog(cand);
      if (std::gcd(lg, bigm) != 1) continue;
      if (roots_mod.count(lg % (q - 1))) {
        beta = cand;
        break;
      }
    }
  } else {
    for (u64 rank = 1; rank < bigq; ++rank) {
      FieldElement cand = big0.element_at(rank);
      FieldElement a = big0.pow(cand, static_cast<i64>(q + 1));
      if (eval_scalar_poly(big0, malpha, a) != 0) continue;
      bool primitive = true;
      for (u64 f : big0.qm1_prime_factors()) {
        if (big0.pow(cand, static_cast<i64>(bigm / f)) == big0.one()) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        beta = cand;
        break;
      }
    }
  }
  if (beta.v == 0) fail(Errc::kInternal, "no homomorphism-compatible primitive element found");

  ExtFieldCtx ext;
  ext.base_ = base;
  if (big0.has_tables()) {
    // Rebase the antilog table from B to beta: beta^t = B^{s t}.
    const u64 s = big0.dlog(beta);
    const std::vector<u32>& old = big0.antilog_table();
    std::vector<u32> rebased(bigm);
    u64 idx = 0;
    for (u64 t = 0; t < bigm; ++t) {
      rebased[t] = old[idx];
      idx += s;
      if (idx >= bigm) idx -= bigm;
    }
    ext.big_ = FieldBuilder::with_alpha(p, 2 * n, big0.params().modulus, beta, Repr::kLogTable,
                                        opts.table_bound, std::move(rebased));
  } else {
    ext.big_ = FieldBuilder::with_alpha(p, 2 * n, big0.params().modulus, beta, Repr::kPoly,
                                        opts.table_bound);
  }

  const FieldCtx& big = ext.big_;
  ext.delta_ = big.antilog((q - 1) / 2);

  // Subfield embedding by discrete-log transport of alpha -> beta^{q+1}.
  const FieldElement asub = big.antilog(q + 1);
  ext.embed_.assign(q, 0);
  {
    FieldElement xs = base.one();
    FieldElement xb = big.one();
    for (u64 t = 0; t + 1 < q; ++t) {
      ext.embed_[xs.v] = xb.v;
      xs = base.mul(xs, base.alpha());
      xb = big.mul(xb, asub);
    }
    if (!(xs == base.one() && xb == big.one()))
      fail(Errc::kInternal, "embedding transport did not close");
  }
  ext.unembed_.reserve(q);
  for (u64 v = 0; v < q; ++v) ext.unembed_.emplace(ext.embed_[v], v);

  // Construction-time sanity: delta^{2(q+1)} = 1 and the embedding is
  // additive on a few pairs (it is multiplicative by construction).
  if (!(big.pow(ext.delta_, static_cast<i64>(2 * (q + 1))) == big.one()))
    fail(Errc::kInternal, "delta order check failed");
  if (big.element_order(asub) != q - 1)
    fail(Errc::kInternal, "beta^{q+1} does not generate the subfield");
  for (u64 a = 1; a < std::min<u64>(q, 8); ++a) {
    for (u64 b = a; b < std::min<u64>(q, 8); ++b) {
      FieldElement lhs = ext.embed(base.add({a}, {b}));
      FieldElement rhs = big.add(ext.embed({a}), ext.embed({b}));
      if (!(lhs == rhs)) fail(Errc::kInternal, "embedding is not additive");
    }
  }
  return ext;
}

}  // namespace diffspec
