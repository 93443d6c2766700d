#include "tetrakit/omega.hpp"

#include <atomic>
#include <cstdint>
#include <map>
#include <thread>

#include "tetrakit/factorizer.hpp"

namespace tetrakit {

namespace {

using u64 = std::uint64_t;

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Levels are constant on residue classes mod L(n) for candidates >= E(n)
// (congruent bases of that size share the whole tetration sequence mod n).
// Class values are cached in an atomic table; racing fills write identical
// values. Small candidates bypass the table.
class LevelTable {
 public:
  LevelTable(const Int& n, const FactorConfig& cfg)
      : chain_(cached_chain(n, cfg)), period_(chain_->big_l().get_ui()),
        table_(period_) {
    for (auto& c : table_) c.store(-1, std::memory_order_relaxed);
  }

  unsigned long level_of(u64 candidate) {
    if (candidate < 64) return level_direct(Int(candidate), *chain_);
    u64 cls = candidate % period_;
    int v = table_[cls].load(std::memory_order_relaxed);
    if (v < 0) {
      v = static_cast<int>(level_direct(Int(candidate), *chain_));
      table_[cls].store(v, std::memory_order_relaxed);
    }
    return static_cast<unsigned long>(v);
  }

 private:
  std::shared_ptr<const LambdaChain> chain_;
  u64 period_;
  std::vector<std::atomic<int>> table_;
};

}  // namespace

OmegaReport omega_brute(const Int& u, const Int& v, const OmegaConfig& ocfg,
                        const FactorConfig& cfg) {
  if (u < 1 || v < 1) throw DomainError("omega_brute: u, v must be >= 1");
  OmegaReport rep;
  rep.u = u;
  rep.v = v;
  rep.k = lcm(u, v);
  auto chain_k = cached_chain(rep.k, cfg);
  rep.big_l = chain_k->big_l();
  rep.denominator = totient(chain_k->big_l_factored());
  if (is_prime(u) && is_prime(v) && u != v) {
    const Int& q = u < v ? v : u;
    const Int& p = u < v ? u : v;
    rep.equality_expected =
        !mpz_divisible_p(cached_chain(q, cfg)->big_l().get_mpz_t(),
                         p.get_mpz_t());
  }
  if (u == v) {  // identical levels: every unit is in W
    rep.numerator = rep.denominator;
    rep.omega = 1;
    return rep;
  }
  if (rep.big_l > ocfg.enumeration_cap)
    throw TooLarge("omega_brute: L(lcm(u, v)) = " + rep.big_l.get_str() +
                   " exceeds the enumeration cap");

  const u64 L = rep.big_l.get_ui();
  LevelTable table_u(u, cfg);
  LevelTable table_v(v, cfg);

  unsigned threads = ocfg.threads ? ocfg.threads : 1;
  if (threads > 1 && L < 4096) threads = 1;
  std::vector<u64> counts(threads, 0);
  auto worker = [&](unsigned id) {
    // contiguous blocks; the census is an order-independent integer sum
    u64 lo = 1 + L / threads * id;
    u64 hi = (id + 1 == threads) ? L + 1 : 1 + L / threads * (id + 1);
    u64 local = 0;
    for (u64 x = lo; x < hi; ++x) {
      if (gcd_u64(x, L) != 1) continue;
      if (table_u.level_of(x) == table_v.level_of(x)) ++local;
    }
    counts[id] = local;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  u64 total = 0;
  for (u64 c : counts) total += c;
  rep.numerator = Int(mpz_class(static_cast<unsigned long>(total)));
  rep.omega = mpq_class(rep.numerator) / mpq_class(rep.denominator);
  rep.omega.canonicalize();
  return rep;
}

namespace {

struct PairKey {
  Int a, b;
  bool operator<(const PairKey& o) const {
    return a < o.a || (a == o.a && b < o.b);
  }
};

// omega(r, s) exactly when enumerable, else the recursive bound for prime
// pairs. Memoized on the unordered pair (omega is symmetric).
mpq_class omega_value(const Int& r, const Int& s, const OmegaConfig& ocfg,
                      const FactorConfig& cfg, std::map<PairKey, mpq_class>& memo,
                      bool& exact);

mpq_class bound_sum(const Int& p, const Int& q, const OmegaConfig& ocfg,
                    const FactorConfig& cfg, std::map<PairKey, mpq_class>& memo,
                    bool& exact) {
  mpq_class sum = 0;
  for (const auto& [r, phi_r] : divisors_with_totient(factorize(p - 1, cfg))) {
    for (const auto& [s, phi_s] : divisors_with_totient(factorize(q - 1, cfg))) {
      sum += mpq_class(phi_r * phi_s) * omega_value(r, s, ocfg, cfg, memo, exact);
    }
  }
  sum /= mpq_class((p - 1) * (q - 1));
  sum.canonicalize();
  return sum;
}

mpq_class omega_value(const Int& r, const Int& s, const OmegaConfig& ocfg,
                      const FactorConfig& cfg, std::map<PairKey, mpq_class>& memo,
                      bool& exact) {
  if (r == s) return mpq_class(1);
  PairKey key{std::min(r, s), std::max(r, s)};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  mpq_class value;
  try {
    value = omega_brute(key.a, key.b, ocfg, cfg).omega;
  } catch (const TooLarge&) {
    if (!(is_prime(key.a) && is_prime(key.b)))
      throw;  // the divisor-sum bound only covers prime pairs
    exact = false;
    value = bound_sum(key.a, key.b, ocfg, cfg, memo, exact);
  }
  memo.emplace(key, value);
  return value;
}

}  // namespace

OmegaBound omega_bound(const Int& p, const Int& q, const OmegaConfig& ocfg,
                       const FactorConfig& cfg) {
  if (!is_prime(p) || !is_prime(q) || p >= q)
    throw DomainError("omega_bound: requires primes p < q");
  std::map<PairKey, mpq_class> memo;
  OmegaBound out{mpq_class(0), true};
  out.value = bound_sum(p, q, ocfg, cfg, memo, out.exact);
  return out;
}

std::vector<unsigned long> base_success_report(const FactoredInteger& n,
                                               unsigned long base_max,
                                               const FactorConfig& cfg) {
  if (n.value < 2)
    throw DomainError("base_success_report: modulus must be >= 2");
  warm_chain_cache(n, cfg);
  std::vector<unsigned long> failing;
  for (unsigned long a = 2; a <= base_max; ++a) {
    SplitOutcome out = tetration_split(n.value, Int(a), cfg);
    if (out.status != SplitStatus::split) failing.push_back(a);
  }
  return failing;
}

}  // namespace tetrakit
