#include "tetrakit/dlp.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace tetrakit {

namespace {

using u64 = std::uint64_t;

Int isqrt_ceil(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r < n) ++r;
  return r;
}

void record(OrderOracleTrace* trace, const Int& a, const Int& n, const Int& ord,
            OrderMethod method) {
  if (trace) trace->queries.push_back({a, n, ord, method});
}

Int order_brute(const Int& a, const Int& n) {
  Int x = a % n, m = 1;
  while (x != 1) {
    x = x * a % n;
    ++m;
  }
  return m;
}

// BSGS collision with a largest-j baby table: scanning giants in ascending
// i makes i*B - j minimal, which is exactly the order.
Int order_bsgs(const Int& a, const Int& n) {
  const Int B = isqrt_ceil(n);
  const u64 b = B.get_ui();
  std::unordered_map<u64, u64> baby;
  baby.reserve(b + 1);
  Int x = 1 % n;
  for (u64 j = 0; j < b; ++j) {
    baby[x.get_ui()] = j;  // overwrite keeps the largest j
    x = x * a % n;
  }
  const Int giant = mod_pow(a, B, n);
  Int cur = giant;
  for (u64 i = 1; i <= b + 1; ++i) {
    auto it = baby.find(cur.get_ui());
    if (it != baby.end()) return Int(i) * B - it->second;
    cur = cur * giant % n;
  }
  throw Error("order_bsgs: no collision within the group bound");
}

}  // namespace

std::optional<Int> discrete_log(const Int& g, const Int& h, const Int& n,
                                const DlpConfig& cfg) {
  if (n < 2) throw DomainError("discrete_log: modulus must be >= 2");
  if (gcd(g, n) != 1)
    throw NotCoprime("discrete_log: base shares a factor with the modulus");
  if (n > cfg.modulus_cap || !mpz_fits_ulong_p(n.get_mpz_t()))
    throw TooLarge("discrete_log: modulus exceeds the BSGS cap");
  const Int base = g % n;
  const Int target = ((h % n) + n) % n;
  if (target == 1 % n) return Int(0);

  const Int ord = multiplicative_order(base, n, cfg);
  const Int B = isqrt_ceil(ord);
  const u64 b = B.get_ui();
  std::unordered_map<u64, u64> baby;
  baby.reserve(b);
  Int x = 1 % n;
  for (u64 j = 0; j < b; ++j) {
    if (!baby.count(x.get_ui())) baby[x.get_ui()] = j;  // smallest j wins
    x = x * base % n;
  }
  Int inv;
  mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), n.get_mpz_t());
  const Int giant = mod_pow(inv, B, n);
  Int cur = target;
  for (Int i = 0; i * B <= ord; ++i) {
    auto it = baby.find(cur.get_ui());
    if (it != baby.end()) return i * B + it->second;
    cur = cur * giant % n;
  }
  return std::nullopt;
}

Int multiplicative_order(const Int& a, const Int& n, const DlpConfig& cfg,
                         OrderOracleTrace* trace) {
  if (n < 1) throw DomainError("multiplicative_order: modulus must be >= 1");
  if (n == 1) {
    record(trace, a, n, 1, OrderMethod::brute);
    return 1;
  }
  if (gcd(a, n) != 1)
    throw NotCoprime("multiplicative_order: base shares a factor with the modulus");
  if (n <= cfg.brute_threshold) {
    Int ord = order_brute(a % n, n);
    record(trace, a, n, ord, OrderMethod::brute);
    return ord;
  }
  if (n > cfg.modulus_cap || !mpz_fits_ulong_p(n.get_mpz_t()))
    throw TooLarge("multiplicative_order: modulus exceeds the BSGS cap");
  Int ord = order_bsgs(a % n, n);
  record(trace, a, n, ord, OrderMethod::bsgs);
  return ord;
}

Int multiplicative_order_from_multiple(const Int& a, const Int& n,
                                       const FactoredInteger& multiple,
                                       OrderOracleTrace* trace) {
  if (n < 1) throw DomainError("multiplicative_order: modulus must be >= 1");
  if (n > 1 && gcd(a, n) != 1)
    throw NotCoprime("multiplicative_order: base shares a factor with the modulus");
  if (n > 1 && mod_pow(a, multiple.value, n) != 1)
    throw DomainError("multiplicative_order: supplied multiple is not one");
  Int ord = n == 1 ? Int(1) : multiple.value;
  for (const auto& [p, e] : multiple.factors) {
    while (mpz_divisible_p(ord.get_mpz_t(), p.get_mpz_t()) &&
           mod_pow(a, ord / p, n) == 1)
      ord /= p;
  }
  record(trace, a, n, ord, OrderMethod::factored_refinement);
  return ord;
}

Int tetration_mod_via_orders(const TetrationQuery& q, const DlpConfig& cfg,
                             OrderOracleTrace* trace) {
  const Int &a = q.base, &k = q.height, &n = q.modulus;
  if (n < 1 || a < 1 || k < 0)
    throw DomainError("tetration_mod_via_orders: bad query");
  if (n == 1) return 0;
  if (k == 0 || a == 1) return 1;
  if (k == 1) return a % n;

  const unsigned long h = ceil_log2(n);
  // ^k a is stable from height H(N)+1 <= h+1 on, so computing at
  // min(k, h+1) always yields ^k a.
  const Int m = k <= h + 1 ? k : Int(h + 1);

  CappedTower tower = tower_below(a, n);
  const unsigned long g = tower.exact.size();
  if (g >= m) return mod_pow(a, tower.exact[m.get_ui() - 1], n);

  // Order chain o_0 = N, o_{i+1} = ord_{V(a, o_i)}(a), down to 1. The W
  // part of o_i is gcd(a^h, o_i) since its exponents are below h.
  auto w_part = [&](const Int& o) -> Int {
    return gcd(mod_pow(a % o, Int(h), o), o);
  };
  std::vector<Int> ochain{n};
  while (ochain.back() != 1) {
    if (ochain.size() > h + 2)
      throw Error("tetration_mod_via_orders: order chain did not reach 1");
    const Int& o = ochain.back();
    Int v = o / w_part(o);
    ochain.push_back(multiplicative_order(a, v, cfg, trace));
  }
  const unsigned long s = ochain.size() - 1;  // first index with value 1

  // B_t = ^t a mod ochain[m-t], t = t0..m; indices above s are all 1.
  const unsigned long mu = m.get_ui();  // m <= h+1 fits
  unsigned long t0 = std::max(g, mu >= s ? mu - s : 0);
  Int b;
  if (t0 == g)
    b = mod_pow(a, tower.exact[g - 1], ochain[mu - g]);
  else
    b = 0;  // modulus ochain[s] = 1
  for (unsigned long t = t0 + 1; t <= mu; ++t) {
    const Int& o = ochain[mu - t];
    Int w = w_part(o);
    Int v = o / w;
    b = crt({{mod_pow(a, b, v), v}, {Int(0), w}}).residue;
  }
  return b;
}

}  // namespace tetrakit
