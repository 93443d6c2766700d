#pragma once

#include <map>
#include <vector>

#include "tetrakit/tetration.hpp"

namespace tetrakit {

/// lev_n(a), its iterated-order chain and L_a(n) for one (a, n) pair.
struct LevelProfile {
  Int base;
  Int modulus;
  unsigned long level = 0;       // lev_n(a), from the tetration sequence
  std::vector<Int> order_chain;  // ord_n^(0) = n, ord_n^(1), ..., 1
  Int order_lcm;                 // L_a(n)
};

/// Multiplicative order of a modulo m (gcd(a, m) = 1) by refining the
/// factored group exponent lambda(m) prime by prime.
Int multiplicative_order_factored(const Int& a, const Int& m,
                                  const FactorConfig& cfg = {});

/// ord_n^(0)(a) = n, ord_n^(k)(a) = ord over the coprime part of the
/// previous term; the chain is returned up to its first 1.
std::vector<Int> order_chain(const Int& a, const Int& n, const FactorConfig& cfg = {});

/// ord_n^(k)(a); 1 for every k past the end of the chain.
Int iterated_order(const Int& a, const Int& n, unsigned long k,
                   const FactorConfig& cfg = {});

/// lev_n(a) as the least k with ^{k+1} a = ^k a mod n, scanned with
/// tetration_mod. Terminates within H(n)+1 steps.
unsigned long level_direct(const Int& a, const Int& n, const FactorConfig& cfg = {});
unsigned long level_direct(const Int& a, const LambdaChain& chain);

/// lev_n(a) by the closed form over the order chain. Requires
/// gcd(a, L(n)) = 1 (NotCoprimeToL otherwise); cross-validates both closed
/// forms and throws Error on internal disagreement.
unsigned long level_via_orders(const Int& a, const Int& n,
                               const FactorConfig& cfg = {});

/// L_a(n): lcm of the full order chain.
Int order_lcm(const Int& a, const Int& n, const FactorConfig& cfg = {});

/// lev_{p^n}(a) = lev_p(a) + ceil(n/(M-1) - 1) with
/// M = min{j : p | ord_{p^j}(a)}. Throws NotCoprime when p | a and
/// MNotFound when no j <= m_scan_cap qualifies.
unsigned long prime_power_level(const Int& a, const Int& p, unsigned long n,
                                unsigned long m_scan_cap = 64,
                                const FactorConfig& cfg = {});

/// lev over each maximal prime-power divisor of n; the maximum over the
/// map equals lev_n(a).
std::map<Int, unsigned long> level_decompose(const Int& a, const Int& n,
                                             const FactorConfig& cfg = {});

LevelProfile level_profile(const Int& a, const Int& n, const FactorConfig& cfg = {});

}  // namespace tetrakit
