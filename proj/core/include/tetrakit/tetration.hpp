#pragma once

#include <memory>
#include <vector>

#include "tetrakit/carmichael.hpp"

namespace tetrakit {

/// The triple (a, k, N) of the modular tetration problem: compute
/// ^k a mod N, where ^0 a = 1 and ^k a = a^(^{k-1} a).
struct TetrationQuery {
  Int base;
  Int height;
  Int modulus;
};

/// ^k a mod N through the lambda chain of N: above the stabilization
/// height the seeds B1, B2 are lifted through the chain by CRT over
/// orthogonal decompositions; below it the exact integer tower is used as
/// far as it fits and the same CRT lift finishes from there. Never wrong
/// when it returns; throws EffortExceeded if the chain cannot be factored.
Int tetration_mod(const TetrationQuery& q, const FactorConfig& cfg = {});
Int tetration_mod(const Int& base, const Int& height, const Int& modulus,
                  const FactorConfig& cfg = {});

/// Same algorithm against a caller-supplied chain for modulus chain.value().
Int tetration_mod(const Int& base, const Int& height, const LambdaChain& chain);

enum class OracleMode { exact_tower, squaring_chain };

struct OracleBudget {
  unsigned long max_bits = 1ul << 24;   // exact-tower: bit size of ^k a
  unsigned long max_steps = 1ul << 20;  // squaring-chain: pow-by-a steps
};

/// Oracle value of ^k a mod N computed without any lambda-chain knowledge.
/// exact_tower materializes the tower; squaring_chain iterates x -> x^a
/// exactly ^{k-2} a times. Throws OracleInfeasible beyond the budget.
Int naive_tetration_mod(const TetrationQuery& q, OracleMode mode,
                        const OracleBudget& budget = {});

/// H(N) + 1: the height from which (^k a mod N) is constant in k for every a.
unsigned long stabilization_height(const Int& n, const FactorConfig& cfg = {});

/// Shared chain cache. Factorizations are canonical, so entries are keyed
/// by the modulus alone; only successful chains are stored.
std::shared_ptr<const LambdaChain> cached_chain(const Int& n,
                                                const FactorConfig& cfg = {});
/// Seeds the cache from a known factorization of the modulus.
void warm_chain_cache(const FactoredInteger& n, const FactorConfig& cfg = {});
void clear_chain_cache();

/// Exact values ^0 a, ^1 a, ... while they stay <= cap (a >= 2).
/// exact.size() is the smallest g with ^g a > cap.
struct CappedTower {
  std::vector<Int> exact;
};
CappedTower tower_below(const Int& a, const Int& cap);

}  // namespace tetrakit
