#include "tetrakit/tetration.hpp"

#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace tetrakit {

namespace {

struct IntHash {
  std::size_t operator()(const Int& v) const {
    const __mpz_struct* z = v.get_mpz_t();
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(z->_mp_size);
    for (int i = 0; i < std::abs(z->_mp_size); ++i) {
      h ^= static_cast<std::size_t>(z->_mp_d[i]);
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::mutex g_chain_mutex;
std::unordered_map<Int, std::shared_ptr<const LambdaChain>, IntHash> g_chains;

// a^e exact if <= cap, otherwise nullopt. a >= 2, e >= 0.
std::optional<Int> pow_capped(const Int& a, const Int& e, const Int& cap) {
  if (e == 0) return Int(1);
  // a^e >= 2^e > cap once e >= bits(cap).
  unsigned long cap_bits = mpz_sizeinbase(cap.get_mpz_t(), 2);
  if (e > cap_bits) return std::nullopt;
  Int r = pow_ui(a, e.get_ui());
  if (r > cap) return std::nullopt;
  return r;
}

// CRT lift of one chain step: ^t a known mod lambda-term above, extend to
// the decomposition m = V W. The V part is a^B (orders mod V divide the
// level above); the W part is 0 once the true exponent exceeds E(W).
Int lift_step(const Int& a, const Int& b, const Int& m) {
  auto [v, w] = orthogonal_decomposition(a, m);
  return crt({{mod_pow(a, b, v), v}, {Int(0), w}}).residue;
}

}  // namespace

CappedTower tower_below(const Int& a, const Int& cap) {
  if (a < 2) throw DomainError("tower_below: base must be >= 2");
  CappedTower t;
  t.exact.push_back(1);
  while (t.exact.back() <= cap) {
    auto next = pow_capped(a, t.exact.back(), cap);
    if (!next) break;
    t.exact.push_back(*next);
  }
  return t;
}

Int tetration_mod(const Int& base, const Int& height, const LambdaChain& chain) {
  const Int& n = chain.value();
  if (base < 1) throw DomainError("tetration_mod: base must be >= 1");
  if (height < 0) throw DomainError("tetration_mod: height must be >= 0");
  if (n == 1) return 0;
  if (height == 0 || base == 1) return 1;
  if (height == 1) return base % n;

  const std::size_t h = chain.height();

  if (height > h) {
    // Stabilized regime: build B_t = ^t a mod lambda^(h+1-t)(N) upward.
    // lambda^(h-1)(N) is 2, so B_2 is the parity of the base.
    Int b = mpz_odd_p(base.get_mpz_t()) ? 1 : 0;
    for (std::size_t t = 2; t <= h; ++t)
      b = lift_step(base, b, chain.term(h - t).value);
    return b;
  }

  // height <= h: find the smallest g with ^g a > N.
  const unsigned long k = height.get_ui();  // k <= h <= ceil(log2 n)
  CappedTower tower = tower_below(base, n);
  const std::size_t g = tower.exact.size();
  if (g >= k)  // exact exponent ^{k-1} a <= N
    return mod_pow(base, tower.exact[k - 1], n);
  Int b = mod_pow(base, tower.exact[g - 1], chain.term(k - g).value);
  for (std::size_t t = g + 1; t <= k; ++t)
    b = lift_step(base, b, chain.term(k - t).value);
  return b;
}

Int tetration_mod(const TetrationQuery& q, const FactorConfig& cfg) {
  return tetration_mod(q.base, q.height, q.modulus, cfg);
}

Int tetration_mod(const Int& base, const Int& height, const Int& modulus,
                  const FactorConfig& cfg) {
  if (modulus < 1) throw DomainError("tetration_mod: modulus must be >= 1");
  if (base < 1) throw DomainError("tetration_mod: base must be >= 1");
  if (height < 0) throw DomainError("tetration_mod: height must be >= 0");
  if (modulus == 1) return 0;
  if (height == 0 || base == 1) return 1;
  if (height == 1) return base % modulus;
  return tetration_mod(base, height, *cached_chain(modulus, cfg));
}

Int naive_tetration_mod(const TetrationQuery& q, OracleMode mode,
                        const OracleBudget& budget) {
  const Int &a = q.base, &k = q.height, &n = q.modulus;
  if (n < 1 || a < 1 || k < 0)
    throw DomainError("naive_tetration_mod: bad query");
  if (n == 1) return 0;
  if (k == 0 || a == 1) return 1;
  if (k == 1) return a % n;

  if (mode == OracleMode::exact_tower) {
    // ^k a materialized; bits(a^v) <= v * bits(a).
    const unsigned long abits = mpz_sizeinbase(a.get_mpz_t(), 2);
    Int v = a;
    for (Int j = 2; j <= k; ++j) {
      if (v > budget.max_bits ||
          static_cast<unsigned __int128>(v.get_ui()) * abits > budget.max_bits)
        throw OracleInfeasible("exact-tower: bit budget exceeded");
      v = pow_ui(a, v.get_ui());
    }
    return v % n;
  }

  // squaring-chain: ^k a = a^(a^m) with m = ^{k-2} a; iterate x -> x^a
  // exactly m times starting from a. For a = 2 these are plain squarings.
  Int m = 1;  // ^0 a
  if (k > 2) {
    CappedTower tower = tower_below(a, Int(budget.max_steps));
    unsigned long idx = mpz_fits_ulong_p(Int(k - 2).get_mpz_t())
                            ? Int(k - 2).get_ui()
                            : budget.max_steps + 1;  // forces the throw below
    if (idx >= tower.exact.size())
      throw OracleInfeasible("squaring-chain: step budget exceeded");
    m = tower.exact[idx];
  }
  Int x = a % n;
  for (Int i = 0; i < m; ++i) x = mod_pow(x, a, n);
  return x;
}

unsigned long stabilization_height(const Int& n, const FactorConfig& cfg) {
  if (n < 1) throw DomainError("stabilization_height: n must be >= 1");
  return cached_chain(n, cfg)->height() + 1;
}

std::shared_ptr<const LambdaChain> cached_chain(const Int& n,
                                                const FactorConfig& cfg) {
  {
    std::lock_guard<std::mutex> lock(g_chain_mutex);
    auto it = g_chains.find(n);
    if (it != g_chains.end()) return it->second;
  }
  auto chain = std::make_shared<const LambdaChain>(LambdaChain::compute(n, cfg));
  std::lock_guard<std::mutex> lock(g_chain_mutex);
  return g_chains.emplace(n, std::move(chain)).first->second;
}

void warm_chain_cache(const FactoredInteger& n, const FactorConfig& cfg) {
  auto chain = std::make_shared<const LambdaChain>(LambdaChain::compute(n, cfg));
  std::lock_guard<std::mutex> lock(g_chain_mutex);
  g_chains.insert_or_assign(n.value, std::move(chain));
}

void clear_chain_cache() {
  std::lock_guard<std::mutex> lock(g_chain_mutex);
  g_chains.clear();
}

}  // namespace tetrakit
