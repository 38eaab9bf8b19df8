#pragma once

#include <optional>
#include <unordered_map>

#include "diffspec/field.hpp"

namespace diffspec {

/// Quadratic extension F_{p^{2n}} over a base F_{p^n}, with
///   beta   a primitive element of the big field,
///   delta  = beta^{(p^n-1)/2},
/// and a subfield embedding that is a genuine field homomorphism sending
/// the base field's alpha to beta^{p^n+1}.
class ExtFieldCtx {
 public:
  const FieldCtx& base() const { return base_; }
  const FieldCtx& big() const { return big_; }
  FieldElement beta() const { return big_.alpha(); }
  FieldElement delta() const { return delta_; }
  u64 alpha_embed_exponent() const { return base_.q() + 1; }

  FieldElement embed(FieldElement x) const { return {embed_[x.v]}; }
  /// Preimage under embed; empty when X is outside the embedded subfield.
  std::optional<FieldElement> unembed(FieldElement x) const {
    auto it = unembed_.find(x.v);
    if (it == unembed_.end()) return std::nullopt;
    return FieldElement{it->second};
  }

 private:
  friend ExtFieldCtx build_quadratic_extension(const FieldCtx&, const BuildOptions&);
  FieldCtx base_;
  FieldCtx big_;
  FieldElement delta_;
  std::vector<u64> embed_;
  std::unordered_map<u64, u64> unembed_;
};

/// `opts.repr` governs the big field: kAuto and kLogTable require
/// p^{2n} within the table bound; kPoly skips tables entirely (slower
/// per-operation, but cheap to construct — useful for sweeps).
ExtFieldCtx build_quadratic_extension(const FieldCtx& base, const BuildOptions& opts = {});

}  // namespace diffspec
