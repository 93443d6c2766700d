#include "tetrakit/carmichael.hpp"

#include <algorithm>

namespace tetrakit {

namespace {

// lambda(p^e) per the prime-power formulas.
FactoredInteger lambda_prime_power(const Int& p, unsigned long e,
                                   const FactorConfig& cfg) {
  if (p == 2) {
    if (e == 1) return FactoredInteger::one();
    if (e == 2) return FactoredInteger::from_prime_power(2, 1);
    return FactoredInteger::from_prime_power(2, e - 2);
  }
  FactoredInteger out = factorize(p - 1, cfg);
  if (e > 1) {
    out.factors[p] = e - 1;
    out.value *= pow_ui(p, e - 1);
  }
  return out;
}

}  // namespace

FactoredInteger lambda(const FactoredInteger& n, const FactorConfig& cfg) {
  FactoredInteger out = FactoredInteger::one();
  for (const auto& [p, e] : n.factors)
    out = lcm_factored(out, lambda_prime_power(p, e, cfg));
  return out;
}

LambdaChain LambdaChain::compute(const Int& n, const FactorConfig& cfg) {
  if (n < 1) throw DomainError("lambda_chain: n must be >= 1");
  return compute(factorize(n, cfg), cfg);
}

LambdaChain LambdaChain::compute(const FactoredInteger& n, const FactorConfig& cfg) {
  LambdaChain chain;
  chain.terms_.push_back(n);
  while (chain.terms_.back().value != 1)
    chain.terms_.push_back(lambda(chain.terms_.back(), cfg));
  chain.big_l_ = FactoredInteger::one();
  for (const auto& t : chain.terms_) chain.big_l_ = lcm_factored(chain.big_l_, t);
  for (const auto& [p, e] : n.factors) chain.e_max_ = std::max(chain.e_max_, e);
  return chain;
}

const FactoredInteger& LambdaChain::term(std::size_t k) const {
  return k < terms_.size() ? terms_[k] : terms_.back();
}

Int LambdaChain::l_partial(std::size_t t) const {
  if (t > height()) throw DomainError("l_partial: t must be <= H(n)");
  FactoredInteger acc = FactoredInteger::one();
  for (std::size_t k = height() - t; k < terms_.size(); ++k)
    acc = lcm_factored(acc, terms_[k]);
  return acc.value;
}

OrthogonalDecomposition orthogonal_decomposition(const Int& a, const Int& n) {
  if (a < 1 || n < 1)
    throw DomainError("orthogonal_decomposition: a, n must be >= 1");
  Int v = n;
  while (true) {
    Int g = gcd(v, a);
    if (g == 1) break;
    v /= g;
  }
  return {v, n / v};
}

}  // namespace tetrakit
