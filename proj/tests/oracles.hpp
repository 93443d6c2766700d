#pragma once

// Brute-force reference implementations used only by the tests. They stay
// deliberately independent of the library's chain/CRT algorithms: tetration
// is evaluated by the classic exponent-lifting recursion on a brute-force
// Carmichael function, orders and exponents by plain scans.

#include <cstdint>

#include <tetrakit/arith.hpp>

namespace oracles {

using u64 = std::uint64_t;

u64 powmod(u64 a, u64 e, u64 n);

/// Group exponent of Z*_n: lcm of the unit orders, by scan.
u64 group_exponent_brute(u64 n);

/// Minimal m >= 1 with a^m = 1 mod n (requires gcd(a, n) = 1).
u64 order_brute(u64 a, u64 n);

/// Memoized brute-force Carmichael function.
u64 lambda_brute(u64 n);

/// ^k a mod n by reducing the exponent mod lambda_brute(n) and lifting it
/// back above the largest prime-power exponent of n.
u64 euler_tower_mod(u64 a, u64 k, u64 n);

/// Preperiod length of (^k a mod n), from euler_tower_mod.
u64 level_brute(u64 a, u64 n);

/// Squarefree part from a complete factorization.
tetrakit::Int squarefree_from_factorization(const tetrakit::Int& n);

/// Primality by trial division (for cross-checking is_prime).
bool trial_division_prime(u64 n);

}  // namespace oracles
