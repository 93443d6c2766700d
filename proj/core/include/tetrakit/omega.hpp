#pragma once

#include <optional>
#include <vector>

#include "tetrakit/level.hpp"

namespace tetrakit {

struct OmegaConfig {
  unsigned long enumeration_cap = 20'000'000;  // candidates = L(lcm(u, v))
  unsigned threads = 1;
};

/// Exact census of W_{u,v} = {a in Z*_{L(k)} : lev_u(a) = lev_v(a)} with
/// k = lcm(u, v). omega = |W| / phi(L(k)) as an exact rational.
struct OmegaReport {
  Int u;
  Int v;
  Int k;            // lcm(u, v)
  Int big_l;        // L(k)
  Int numerator;    // |W_{u,v}|
  Int denominator;  // phi(L(k))
  mpq_class omega;
  std::optional<mpq_class> bound;         // divisor-sum bound (prime pairs)
  std::optional<bool> equality_expected;  // p does not divide L(q); prime pairs
};

/// Streams every unit of Z*_{L(k)} and compares levels; per-candidate work
/// reuses one lambda chain per side plus a residue-class level table.
/// Throws TooLarge when L(k) exceeds the enumeration cap.
OmegaReport omega_brute(const Int& u, const Int& v, const OmegaConfig& ocfg = {},
                        const FactorConfig& cfg = {});

struct OmegaBound {
  mpq_class value;
  bool exact;  // every inner omega was enumerated (no recursive bounding)
};

/// The divisor-sum bound for primes p < q:
///   (1/phi(pq)) * sum_{r | p-1} phi(r) sum_{s | q-1} phi(s) * omega(r, s),
/// with inner omegas enumerated whenever they fit the cap and bounded
/// recursively (prime pairs only) otherwise.
OmegaBound omega_bound(const Int& p, const Int& q, const OmegaConfig& ocfg = {},
                       const FactorConfig& cfg = {});

/// Bases a in [2, base_max] for which tetration_split finds no factor of n.
/// The supplied factorization seeds the chain cache, so only the chain
/// below n must be factorable.
std::vector<unsigned long> base_success_report(const FactoredInteger& n,
                                               unsigned long base_max,
                                               const FactorConfig& cfg = {});

}  // namespace tetrakit
