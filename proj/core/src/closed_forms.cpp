#include "diffspec/closed_forms.hpp"

#include <algorithm>
#include <numeric>

#include "diffspec/cyclotomy.hpp"

namespace diffspec {
namespace {

constexpr u64 kMaxQ = u64{1} << 62;

void require_odd_prime(u64 p) {
  if (p % 2 == 0) fail(Errc::kEvenCharacteristic, "p must be odd");
  if (!is_prime_u64(p)) fail(Errc::kNotPrime, std::to_string(p) + " is not prime");
}

u64 u128_div_exact(u128 num, u128 den, const char* what) {
  if (den == 0 || num % den != 0) fail(Errc::kInternal, std::string("non-exact division: ") + what);
  u128 r = num / den;
  if (r > ~u64{0}) fail(Errc::kOverflow, what);
  return static_cast<u64>(r);
}

u128 u128_pow(u64 base, unsigned exp) {
  if (!pow_fits_u128(base, exp)) fail(Errc::kOverflow, "power exceeds 128-bit range");
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

u64 helleseth_bound(u64 p, unsigned n, unsigned k) {
  require_odd_prime(p);
  if (n == 0 || k == 0) fail(Errc::kBadArgument, "n and k must be positive");
  const u64 a = (checked_pow(p, k, ~u64{0}) - 1) / 2;
  const u128 m = u128_pow(p, 2 * n) - 1;
  if (a == 0) return 0;
  u64 b = static_cast<u64>(m % a);
  return std::gcd(a, b);
}

Spectrum spectrum_thm1(u64 p, unsigned n, unsigned k) {
  require_odd_prime(p);
  if (n == 0 || k == 0) fail(Errc::kBadArgument, "n and k must be positive");
  const unsigned e = std::gcd(n, k);
  const u64 pe = checked_pow(p, e, kMaxQ);
  const u64 pn = checked_pow(p, n, kMaxQ);

  Spectrum s;
  s.q = pn;
  auto addw = [&s](u64 i, u64 c) {
    if (c) s.omega[i] += c;
  };

  u64 omega0_row;
  if ((k / e) % 2 == 1) {
    const u64 mid = (pn - pe) / (pe - 1);
    if (pe % 4 == 3) {
      addw((pe + 1) / 4, 2);          // b = +-1
      addw((pe - 1) / 2, mid);
      addw(1, (pn - 1) / 2);
      omega0_row = (pn - 3) / 2 - mid;
    } else {
      addw((pe + 3) / 4, 1);          // b = 1
      addw((pe - 1) / 4, 1);          // b = -1
      addw((pe - 1) / 2, mid);
      addw(2, (pn - 1) / 4);
      omega0_row = u128_div_exact((u128)(pn - 1) * (3 * pe - 7), 4 * (u128)(pe - 1), "omega0");
    }
  } else {
    addw(pe, 1);                      // b = 1
    addw(pe - 1, (pn - pe) / (2 * (pe - 1)));
    addw(pe + 1, (pn - pe) / (2 * (pe + 1)));
    const u64 ratio = u128_div_exact(u128_pow(p, n + e) - 1, u128_pow(p, 2 * e) - 1, "omega0");
    omega0_row = pn - ratio;
  }

  u64 assigned = 0;
  for (auto [i, c] : s.omega) assigned += c;
  const u64 omega0_complement = pn - assigned;
  if (omega0_row != omega0_complement)
    fail(Errc::kInternal, "omega_0 row disagrees with complement at p=" + std::to_string(p) +
                              " n=" + std::to_string(n) + " k=" + std::to_string(k));
  addw(0, omega0_row);
  if (!s.mass_ok()) fail(Errc::kInternal, "closed-form spectrum mass violated");
  return s;
}

u64 uniformity_cor1(u64 p, unsigned n, unsigned k) {
  require_odd_prime(p);
  const unsigned e = std::gcd(n, k);
  const u64 pe = checked_pow(p, e, kMaxQ);
  return (k / e) % 2 == 1 ? (pe - 1) / 2 : pe + 1;
}

u64 exponent_thm2(u64 p, unsigned n, unsigned k) {
  require_odd_prime(p);
  if (p % 4 != 3) fail(Errc::kRegimeViolation, "requires p = 3 mod 4");
  if (n % 2 == 0) fail(Errc::kRegimeViolation, "requires odd n");
  if (k == 0 || n % k != 0) fail(Errc::kRegimeViolation, "requires k | n");
  const u64 pn = checked_pow(p, n, kMaxQ);
  const u64 pk = checked_pow(p, k, kMaxQ);
  return (pn + 1) / (pk + 1) + (pn - 1) / 2;
}

Spectrum spectrum_thm2(u64 p, unsigned n, unsigned k) {
  (void)exponent_thm2(p, n, k);  // regime validation
  const u64 pn = checked_pow(p, n, kMaxQ);
  const u64 pk = checked_pow(p, k, kMaxQ);

  Spectrum s;
  s.q = pn;
  auto addw = [&s](u64 i, u64 c) {
    if (c) s.omega[i] += c;
  };
  const u64 top = (pn - pk) / (pk - 1);
  addw((pk + 1) / 4, 2);  // b = +-1
  addw((pk + 1) / 2, top);
  addw(1, (pn - 1) / 2 - top);

  u64 assigned = 0;
  for (auto [i, c] : s.omega) assigned += c;
  if ((pn - 3) / 2 != pn - assigned)
    fail(Errc::kInternal, "omega_0 row disagrees with complement");
  addw(0, (pn - 3) / 2);
  if (!s.mass_ok()) fail(Errc::kInternal, "closed-form spectrum mass violated");
  return s;
}

Thm2Uniformity uniformity_cor2(u64 p, unsigned n, unsigned k) {
  Thm2Uniformity out;
  const u64 pk = checked_pow(p, k, kMaxQ);
  out.corollary_value = (pk + 1) / 2;
  Spectrum s = spectrum_thm2(p, n, k);
  out.actual = s.delta();
  out.degenerate = out.actual != out.corollary_value;
  return out;
}

ImageExpectation expected_image_cardinalities(u64 p, unsigned n, unsigned k) {
  require_odd_prime(p);
  if (n == 0 || k == 0) fail(Errc::kBadArgument, "n and k must be positive");
  const unsigned e = std::gcd(n, k);
  const u64 pe = checked_pow(p, e, kMaxQ);
  const u64 pn = checked_pow(p, n, kMaxQ);
  const bool ne_odd = ((n / e) % 2 == 1);
  const bool ke_even = ((k / e) % 2 == 0);
  const bool pn1mod4 = (pn % 4 == 1);
  const bool pe1mod4 = (pe % 4 == 1);

  ImageExpectation out;
  out.e = e;
  out.k_over_e_even = ke_even;

  auto finalize = [](QuadrantExpectation& qe) {
    // An empty distinguished class removes its b from the image.
    if (qe.u_at_one && *qe.u_at_one == 0 && !qe.bijective) --qe.image_size;
    if (qe.u_at_minus_one && *qe.u_at_minus_one == 0) --qe.image_size;
  };

  // E00
  {
    QuadrantExpectation& qe = out.quad[0][0];
    qe.domain_size = cyclotomic_number_closed(p, n, 0, 0);
    qe.u_generic = (pe - 1) / 2;
    if (ne_odd) {
      qe.image_size = (pn + pe - 2) / (2 * (pe - 1));
      qe.u_at_one = pn1mod4 ? (pe - 5) / 4 : (pe - 3) / 4;
    } else {
      qe.image_size = (pn + 2 * pe - 3) / (2 * (pe - 1));
      if (pe1mod4) {
        qe.u_at_one = (pe - 5) / 4;
        qe.u_at_minus_one = (pe - 1) / 4;
      } else {
        qe.u_at_one = (pe - 3) / 4;
        qe.u_at_minus_one = (pe - 3) / 4;
      }
    }
    finalize(qe);
  }

  // E11
  {
    QuadrantExpectation& qe = out.quad[1][1];
    qe.domain_size = cyclotomic_number_closed(p, n, 1, 1);
    qe.u_generic = (pe - 1) / 2;
    if (ne_odd) {
      qe.image_size = (pn + pe - 2) / (2 * (pe - 1));
      const u64 special = pn1mod4 ? (pe - 1) / 4 : (pe - 3) / 4;
      if (ke_even)
        qe.u_at_one = special;
      else
        qe.u_at_minus_one = special;
    } else {
      qe.image_size = (pn - 1) / (2 * (pe - 1));
    }
    finalize(qe);
  }

  // E10 / E01
  if (!ke_even) {
    QuadrantExpectation& q10 = out.quad[1][0];
    q10.domain_size = cyclotomic_number_closed(p, n, 1, 0);
    q10.bijective = true;
    q10.image_size = q10.domain_size;
    q10.u_generic = 1;
    q10.u_at_one = 0;  // 1 is never in I10
    QuadrantExpectation& q01 = out.quad[0][1];
    q01.domain_size = cyclotomic_number_closed(p, n, 0, 1);
    q01.bijective = true;
    q01.image_size = q01.domain_size;
    q01.u_generic = 1;
    q01.u_at_one = 0;
  } else {
    const u64 size = (pn + pe + 2) / (2 * (pe + 1));
    QuadrantExpectation& q10 = out.quad[1][0];
    q10.domain_size = cyclotomic_number_closed(p, n, 1, 0);
    q10.image_size = size;
    q10.u_generic = (pe + 1) / 2;
    q10.u_at_one = pn1mod4 ? (pe - 1) / 4 : (pe - 3) / 4;
    finalize(q10);
    QuadrantExpectation& q01 = out.quad[0][1];
    q01.domain_size = cyclotomic_number_closed(p, n, 0, 1);
    q01.image_size = size;
    q01.u_generic = (pe + 1) / 2;
    q01.u_at_one = pn1mod4 ? (pe - 1) / 4 : (pe + 1) / 4;
    finalize(q01);
  }
  return out;
}

ImageRelations expected_image_relations(u64 p, unsigned n, unsigned k) {
  ImageExpectation cards = expected_image_cardinalities(p, n, k);
  const unsigned e = cards.e;
  const u64 pe = checked_pow(p, e, kMaxQ);
  const bool ke_even = cards.k_over_e_even;

  ImageRelations out;
  out.r00_11 = ke_even ? SetRelation::kEqual : SetRelation::kDisjoint;
  out.r10_01 = (!ke_even && pe % 4 == 3) ? SetRelation::kDisjoint : SetRelation::kEqual;
  // u_at_one is absent only for E11 with odd k/e, where 1 is never hit
  // (it would force the square argument of the half-trace to equal -1).
  auto in_image_at_one = [](const QuadrantExpectation& qe) {
    return qe.u_at_one ? *qe.u_at_one > 0 : false;
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.one_in[i][j] = in_image_at_one(cards.at(i, j));
  out.one_in_s1 = out.one_in[0][0] || out.one_in[1][1];
  out.one_in_s2 = out.one_in[1][0] || out.one_in[0][1];
  out.s1s2_meet_at_one = ke_even && out.one_in_s1 && out.one_in_s2;
  return out;
}

namespace {

std::string quadrant_name(int i, int j) { return "I" + std::to_string(i) + std::to_string(j); }

std::vector<u64> without_one(std::vector<u64> v) {
  v.erase(std::remove(v.begin(), v.end(), u64{1}), v.end());
  return v;
}

bool disjoint_sorted(const std::vector<u64>& a, const std::vector<u64>& b) {
  std::vector<u64> meet;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
  return meet.empty();
}

}  // namespace

std::string check_image_cardinalities(const ImageExpectation& expect,
                                      const DerivativeImageAnalysis& actual, u64 minus_one) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const QuadrantExpectation& qe = expect.at(i, j);
      const auto& umap = actual.u_map(i, j);
      const std::string name = quadrant_name(i, j);
      if (actual.image_size(i, j) != qe.image_size)
        return name + " size " + std::to_string(actual.image_size(i, j)) + " != expected " +
               std::to_string(qe.image_size);
      u64 total = 0;
      for (auto [b, c] : umap) {
        total += c;
        u64 want = qe.u_generic;
        if (b == 1 && qe.u_at_one)
          want = *qe.u_at_one;
        else if (b == minus_one && qe.u_at_minus_one)
          want = *qe.u_at_minus_one;
        if (c != want)
          return "U_" + name.substr(1) + "(" + std::to_string(b) + ") = " + std::to_string(c) +
                 " != expected " + std::to_string(want);
      }
      // Distinguished values absent from the image must be expected absent.
      if (qe.u_at_one && actual.u_at(i, j, 1) != *qe.u_at_one)
        return name + ": multiplicity at b=1 is " + std::to_string(actual.u_at(i, j, 1)) +
               " != expected " + std::to_string(*qe.u_at_one);
      if (qe.u_at_minus_one && actual.u_at(i, j, minus_one) != *qe.u_at_minus_one)
        return name + ": multiplicity at b=-1 is " + std::to_string(actual.u_at(i, j, minus_one)) +
               " != expected " + std::to_string(*qe.u_at_minus_one);
      if (total != qe.domain_size)
        return name + ": multiplicities sum to " + std::to_string(total) + " != |E| = " +
               std::to_string(qe.domain_size);
    }
  }
  return "";
}

std::string check_image_relations(const ImageRelations& expect,
                                  const DerivativeImageAnalysis& actual) {
  const std::vector<u64> i00 = actual.image_values(0, 0);
  const std::vector<u64> i11 = actual.image_values(1, 1);
  const std::vector<u64> i10 = actual.image_values(1, 0);
  const std::vector<u64> i01 = actual.image_values(0, 1);

  if (expect.r00_11 == SetRelation::kDisjoint) {
    if (!disjoint_sorted(i00, i11)) return "I00 and I11 intersect";
  } else {
    if (without_one(i00) != without_one(i11)) return "I00 != I11 away from b=1";
  }
  if (expect.r10_01 == SetRelation::kDisjoint) {
    if (!disjoint_sorted(i10, i01)) return "I10 and I01 intersect";
  } else {
    if (without_one(i10) != without_one(i01)) return "I10 != I01 away from b=1";
  }

  // Pairwise across the S1/S2 quadrants: each intersection is {1} exactly
  // when both multiplicity tables put 1 in the image, otherwise empty.
  const std::vector<u64>* s1_parts[2] = {&i00, &i11};
  const int s1_idx[2][2] = {{0, 0}, {1, 1}};
  const std::vector<u64>* s2_parts[2] = {&i10, &i01};
  const int s2_idx[2][2] = {{1, 0}, {0, 1}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      std::vector<u64> pair_meet;
      std::set_intersection(s1_parts[a]->begin(), s1_parts[a]->end(), s2_parts[b]->begin(),
                            s2_parts[b]->end(), std::back_inserter(pair_meet));
      const bool want_one = expect.one_in[s1_idx[a][0]][s1_idx[a][1]] &&
                            expect.one_in[s2_idx[b][0]][s2_idx[b][1]];
      const std::vector<u64> want = want_one ? std::vector<u64>{1} : std::vector<u64>{};
      if (pair_meet != want)
        return "I" + std::to_string(s1_idx[a][0]) + std::to_string(s1_idx[a][1]) + " n I" +
               std::to_string(s2_idx[b][0]) + std::to_string(s2_idx[b][1]) +
               (want_one ? " != {1}" : " is not empty");
    }
  }

  const std::vector<u64> s1 = actual.s1_values();
  const std::vector<u64> s2 = actual.s2_values();
  std::vector<u64> meet;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(meet));
  if (expect.s1s2_meet_at_one) {
    if (meet != std::vector<u64>{1}) return "S1 n S2 != {1}";
  } else {
    if (!meet.empty()) return "S1 n S2 is not empty";
  }
  const bool s1_has_one = std::binary_search(s1.begin(), s1.end(), u64{1});
  const bool s2_has_one = std::binary_search(s2.begin(), s2.end(), u64{1});
  if (s1_has_one != expect.one_in_s1) return "membership of 1 in S1 differs from the tables";
  if (s2_has_one != expect.one_in_s2) return "membership of 1 in S2 differs from the tables";
  return "";
}

}  // namespace diffspec
