#include "tetrakit/level.hpp"

namespace tetrakit {

Int multiplicative_order_factored(const Int& a, const Int& m,
                                  const FactorConfig& cfg) {
  if (m < 1) throw DomainError("multiplicative_order: modulus must be >= 1");
  if (m == 1) return 1;
  if (gcd(a, m) != 1)
    throw NotCoprime("multiplicative_order: base shares a factor with the modulus");
  FactoredInteger lam = lambda(factorize(m, cfg), cfg);
  Int ord = lam.value;
  for (const auto& [p, e] : lam.factors) {
    while (mpz_divisible_p(ord.get_mpz_t(), p.get_mpz_t()) &&
           mod_pow(a, ord / p, m) == 1)
      ord /= p;
  }
  return ord;
}

std::vector<Int> order_chain(const Int& a, const Int& n, const FactorConfig& cfg) {
  if (a < 1 || n < 1) throw DomainError("order_chain: a, n must be >= 1");
  std::vector<Int> chain{n};
  // ord^(k) divides lambda^(k), so 1 is reached within H(n) steps.
  const unsigned long guard = ceil_log2(n) + 2;
  while (chain.back() != 1) {
    if (chain.size() > guard)
      throw Error("order_chain: did not reach 1 within the height bound");
    Int v = orthogonal_decomposition(a, chain.back()).v;
    chain.push_back(multiplicative_order_factored(a, v, cfg));
  }
  return chain;
}

Int iterated_order(const Int& a, const Int& n, unsigned long k,
                   const FactorConfig& cfg) {
  auto chain = order_chain(a, n, cfg);
  return k < chain.size() ? chain[k] : Int(1);
}

unsigned long level_direct(const Int& a, const Int& n, const FactorConfig& cfg) {
  if (a < 1 || n < 1) throw DomainError("level_direct: a, n must be >= 1");
  if (n == 1 || a == 1) return 0;
  return level_direct(a, *cached_chain(n, cfg));
}

unsigned long level_direct(const Int& a, const LambdaChain& chain) {
  const Int& n = chain.value();
  if (n == 1 || a == 1) return 0;
  Int prev = 1;
  // The preperiod is at most H(n)+1, so the scan always returns.
  for (unsigned long k = 0; k <= chain.height() + 1; ++k) {
    Int cur = tetration_mod(a, Int(k + 1), chain);
    if (cur == prev) return k;
    prev = cur;
  }
  throw Error("level_direct: sequence did not stabilize by H(n)+1");
}

unsigned long level_via_orders(const Int& a, const Int& n, const FactorConfig& cfg) {
  if (a < 1 || n < 1) throw DomainError("level_via_orders: a, n must be >= 1");
  if (a == 1 || n == 1) return 0;  // constant sequence; the chain collapses
  auto chain_ptr = cached_chain(n, cfg);
  if (gcd(a, chain_ptr->big_l()) != 1)
    throw NotCoprimeToL("level_via_orders: gcd(a, L(n)) > 1");
  auto oc = order_chain(a, n, cfg);
  unsigned long nu1 = 0;
  while (oc[nu1] != 1) ++nu1;
  unsigned long lev = nu1 - 1;  // nu1 >= 1 since oc[0] = n > 1
  // Second closed form: least nu with ord^(nu) | a - 1.
  unsigned long nu2 = 0;
  while (!mpz_divisible_p(Int(a - 1).get_mpz_t(), oc[nu2].get_mpz_t())) ++nu2;
  if (nu2 != lev)
    throw Error("level_via_orders: the two closed forms disagree");
  return lev;
}

Int order_lcm(const Int& a, const Int& n, const FactorConfig& cfg) {
  auto chain = order_chain(a, n, cfg);
  Int acc = 1;
  for (const auto& o : chain) acc = lcm(acc, o);
  return acc;
}

unsigned long prime_power_level(const Int& a, const Int& p, unsigned long n,
                                unsigned long m_scan_cap,
                                const FactorConfig& cfg) {
  if (n < 1) throw DomainError("prime_power_level: exponent must be >= 1");
  if (!is_prime(p)) throw DomainError("prime_power_level: p must be prime");
  if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()))
    throw NotCoprime("prime_power_level: p divides a");
  unsigned long lev_p = level_direct(a, p, cfg);
  if (n == 1) return lev_p;
  unsigned long m = 0;
  for (unsigned long j = 1; j <= m_scan_cap; ++j) {
    Int ord = multiplicative_order_factored(a, pow_ui(p, j), cfg);
    if (mpz_divisible_p(ord.get_mpz_t(), p.get_mpz_t())) {
      m = j;
      break;
    }
  }
  if (m == 0)
    throw MNotFound("prime_power_level: p never divides ord_{p^j}(a) within the scan cap");
  // lev_p(a) + ceil(n/(M-1) - 1); M >= 2 since ord_p(a) | p-1.
  if (n <= m - 1) return lev_p;
  return lev_p + (n - (m - 1) + (m - 2)) / (m - 1);
}

std::map<Int, unsigned long> level_decompose(const Int& a, const Int& n,
                                             const FactorConfig& cfg) {
  if (a < 1 || n < 1) throw DomainError("level_decompose: a, n must be >= 1");
  FactoredInteger f = factorize(n, cfg);
  std::map<Int, unsigned long> out;
  for (const auto& [p, e] : f.factors)
    out[pow_ui(p, e)] = level_direct(a, pow_ui(p, e), cfg);
  return out;
}

LevelProfile level_profile(const Int& a, const Int& n, const FactorConfig& cfg) {
  LevelProfile prof;
  prof.base = a;
  prof.modulus = n;
  prof.level = level_direct(a, n, cfg);
  prof.order_chain = order_chain(a, n, cfg);
  prof.order_lcm = 1;
  for (const auto& o : prof.order_chain) prof.order_lcm = lcm(prof.order_lcm, o);
  return prof;
}

}  // namespace tetrakit
