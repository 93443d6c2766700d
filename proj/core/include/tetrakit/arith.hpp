#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "tetrakit/errors.hpp"

namespace tetrakit {

using Int = mpz_class;

/// Work budget for the factorization engine.
struct FactorConfig {
  unsigned long trial_division_bound = 10'000;
  unsigned long rho_iteration_cap = 5'000'000;
};

/// A nonnegative integer together with its prime-power factorization.
/// Invariants: value == prod p^e, keys prime, exponents >= 1,
/// empty map iff value == 1.
struct FactoredInteger {
  Int value{1};
  std::map<Int, unsigned long> factors;

  static FactoredInteger one() { return FactoredInteger{}; }
  static FactoredInteger from_prime_power(const Int& p, unsigned long e);

  /// Builds from an explicit map, checking primality of every key and that
  /// the product reconstructs a value. Throws DomainError on violation.
  static FactoredInteger from_factors(std::map<Int, unsigned long> factors);

  bool is_one() const { return factors.empty(); }
};

struct Congruence {
  Int residue;
  Int modulus;
};

using ResidueSystem = std::vector<Congruence>;

/// a^e mod n for e >= 0, n >= 1. Returns 0 when n == 1.
Int mod_pow(const Int& base, const Int& exp, const Int& mod);

/// Deterministic Miller-Rabin for n < 2^64 (fixed witness set); base-2
/// strong probable prime + strong Lucas beyond, with composite verdicts
/// always correct.
bool is_prime(const Int& n);

/// Complete prime factorization of n >= 1: trial division up to the
/// configured bound, then Brent's rho with parameters derived
/// deterministically from n. Throws EffortExceeded when the iteration
/// budget runs out before the factorization is complete.
FactoredInteger factorize(const Int& n, const FactorConfig& cfg = {});

/// Solves the simultaneous congruences. Moduli must be pairwise coprime
/// (NotCoprime otherwise); returns the unique residue mod prod(moduli).
Congruence crt(const ResidueSystem& system);

// -- small helpers shared across modules --

/// ceil(log2(n)) for n >= 1; 0 for n == 1.
unsigned long ceil_log2(const Int& n);

/// Euler phi from a factorization.
Int totient(const FactoredInteger& n);

/// Product of the distinct primes.
Int radical(const FactoredInteger& n);

/// lcm taken exponent-wise on the factored forms.
FactoredInteger lcm_factored(const FactoredInteger& a, const FactoredInteger& b);

/// All divisors with their totients, sorted by divisor.
std::vector<std::pair<Int, Int>> divisors_with_totient(const FactoredInteger& n);

Int pow_ui(const Int& base, unsigned long e);

}  // namespace tetrakit
