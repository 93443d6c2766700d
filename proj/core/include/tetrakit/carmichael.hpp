#pragma once

#include <cstddef>
#include <vector>

#include "tetrakit/arith.hpp"

namespace tetrakit {

/// Carmichael's function in factored form, computed from the prime-power
/// formulas (never by exponent search). Factoring each p-1 may throw
/// EffortExceeded.
FactoredInteger lambda(const FactoredInteger& n, const FactorConfig& cfg = {});

/// The sequence n, lambda(n), lambda^(2)(n), ..., 1 with every term
/// factored, plus the derived quantities H(n), L(n), E(n).
class LambdaChain {
 public:
  static LambdaChain compute(const Int& n, const FactorConfig& cfg = {});
  static LambdaChain compute(const FactoredInteger& n, const FactorConfig& cfg = {});

  const Int& value() const { return terms_.front().value; }
  const std::vector<FactoredInteger>& terms() const { return terms_; }

  /// lambda^(k)(n); k may exceed the height (the chain is constant 1 there).
  const FactoredInteger& term(std::size_t k) const;

  /// H(n): least k with lambda^(k)(n) == 1.
  std::size_t height() const { return terms_.size() - 1; }

  /// L(n) = lcm(n, lambda(n), ..., 1).
  const Int& big_l() const { return big_l_.value; }
  const FactoredInteger& big_l_factored() const { return big_l_; }

  /// E(n): largest exponent in n's factorization (0 for n == 1).
  unsigned long e_max() const { return e_max_; }

  /// L(t, n): lcm of the last t+1 terms, so L(0, n) == 1.
  Int l_partial(std::size_t t) const;

 private:
  std::vector<FactoredInteger> terms_;
  FactoredInteger big_l_;
  unsigned long e_max_ = 0;
};

/// n = v * w with v the largest divisor of n coprime to a; every prime
/// factor of w divides a. Needs no factorization of n.
struct OrthogonalDecomposition {
  Int v;
  Int w;
};

OrthogonalDecomposition orthogonal_decomposition(const Int& a, const Int& n);

}  // namespace tetrakit
