#pragma once

#include <optional>
#include <vector>

#include "tetrakit/tetration.hpp"

namespace tetrakit {

struct DlpConfig {
  Int modulus_cap = Int(1) << 48;      // BSGS refuses larger moduli
  unsigned long brute_threshold = 1000;  // below this, orders by linear scan
};

enum class OrderMethod { brute, bsgs, factored_refinement };

struct OrderQuery {
  Int base;
  Int modulus;
  Int order;
  OrderMethod method;
};

/// Record of every order-oracle call made while answering a query.
struct OrderOracleTrace {
  std::vector<OrderQuery> queries;
};

/// Minimal x >= 0 with g^x = h mod n, by baby-step/giant-step; nullopt when
/// h is outside <g>. Requires gcd(g, n) = 1; throws TooLarge over the cap.
std::optional<Int> discrete_log(const Int& g, const Int& h, const Int& n,
                                const DlpConfig& cfg = {});

/// Minimal m >= 1 with a^m = 1 mod n, found by linear scan or a BSGS
/// collision (largest-j table gives minimality directly). No factorization
/// of n or its group order is used.
Int multiplicative_order(const Int& a, const Int& n, const DlpConfig& cfg = {},
                         OrderOracleTrace* trace = nullptr);

/// Order by stripping primes from a known factored multiple of it.
Int multiplicative_order_from_multiple(const Int& a, const Int& n,
                                       const FactoredInteger& multiple,
                                       OrderOracleTrace* trace = nullptr);

/// ^k a mod N using only iterated multiplicative orders of a (no lambda
/// chain): seeds from the exact tower below N, then CRT-lifts through the
/// order chain, extracting the W part as gcd(a^ceil(log2 N), ord).
Int tetration_mod_via_orders(const TetrationQuery& q, const DlpConfig& cfg = {},
                             OrderOracleTrace* trace = nullptr);

}  // namespace tetrakit
