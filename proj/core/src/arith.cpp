#include "tetrakit/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace tetrakit {

namespace {

constexpr std::array<unsigned, 25> kSmallPrimes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod64(u64 a, u64 b, u64 n) { return static_cast<u64>(u128(a) * b % n); }

u64 powmod64(u64 a, u64 e, u64 n) {
  u64 r = n == 1 ? 0 : 1;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod64(r, a, n);
    a = mulmod64(a, a, n);
    e >>= 1;
  }
  return r;
}

u64 gcd64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Deterministic for all n < 2^64 with the first twelve prime witnesses.
bool miller_rabin64(u64 n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool strong_probable_prime_base2(const Int& n) {
  Int d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Int x = mod_pow(2, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Strong Lucas probable prime test with Selfridge's parameter choice
// (P = 1, Q = (1 - D) / 4, D the first of 5, -7, 9, ... with (D|n) = -1).
bool strong_lucas_probable_prime(const Int& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long d_abs = 5;
  int sign = 1;
  Int D;
  while (true) {
    D = sign * d_abs;
    int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && n != d_abs) return false;
    d_abs += 2;
    sign = -sign;
  }
  Int Q = (1 - D) / 4;

  Int delta = n + 1;
  unsigned long s = mpz_scan1(delta.get_mpz_t(), 0);
  Int d = delta >> s;

  auto half_mod = [&n](Int x) {
    x %= n;
    if (x < 0) x += n;
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    return Int(x / 2 % n);
  };

  // U_1 = 1, V_1 = 1; walk the bits of d from the second-highest down.
  Int U = 1, V = 1, Qk = Q % n;
  if (Qk < 0) Qk += n;
  unsigned long bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (unsigned long i = bits - 1; i-- > 0;) {
    // double: (U, V, Q^k) -> (U V, V^2 - 2 Q^k, Q^2k)
    U = U * V % n;
    V = (V * V - 2 * Qk) % n;
    if (V < 0) V += n;
    Qk = Qk * Qk % n;
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      Int U1 = half_mod(U + V);
      Int V1 = half_mod(D * U + V);
      U = U1;
      V = V1;
      Qk = Qk * (Q % n) % n;
      if (Qk < 0) Qk += n;
    }
  }

  if (U == 0 || V == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = (V * V - 2 * Qk) % n;
    if (V < 0) V += n;
    if (V == 0) return true;
    Qk = Qk * Qk % n;
  }
  return false;
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Brent's cycle variant of Pollard rho with batched gcds. Parameters for
// attempt j are derived deterministically from (n, j). Decrements *budget
// per f-evaluation and throws EffortExceeded when it runs out.
Int brent_rho(const Int& n, unsigned long* budget) {
  u64 seed = mpz_fdiv_ui(n.get_mpz_t(), 0xffffffffffffffc5ull);
  for (unsigned attempt = 0;; ++attempt) {
    u64 h = splitmix64(seed + 0x100000001b3ull * attempt);
    Int c = Int(1) + Int(mpz_class(static_cast<unsigned long>(h))) % (n - 3);
    Int y = Int(2) +
            Int(mpz_class(static_cast<unsigned long>(splitmix64(h)))) % (n - 3);
    Int x, ys, q = 1, g = 1;
    const unsigned long batch = 128;
    unsigned long r = 1;
    auto step = [&](Int& v) {
      v = (v * v + c) % n;
      if (*budget == 0) throw EffortExceeded("factorize: rho iteration cap exhausted");
      --*budget;
    };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      for (unsigned long k = 0; k < r && g == 1; k += batch) {
        ys = y;
        unsigned long lim = std::min(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          step(y);
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      // gcd folded too many steps; replay one at a time.
      do {
        step(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

u64 brent_rho64(u64 n, unsigned long* budget) {
  for (unsigned attempt = 0;; ++attempt) {
    u64 h = splitmix64(n + 0x100000001b3ull * attempt);
    u64 c = 1 + h % (n - 3);
    u64 y = 2 + splitmix64(h) % (n - 3);
    u64 x = 0, ys = 0, q = 1, g = 1;
    const unsigned long batch = 128;
    unsigned long r = 1;
    auto step = [&](u64& v) {
      v = (mulmod64(v, v, n) + c) % n;
      if (*budget == 0) throw EffortExceeded("factorize: rho iteration cap exhausted");
      --*budget;
    };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      for (unsigned long k = 0; k < r && g == 1; k += batch) {
        ys = y;
        unsigned long lim = std::min(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          step(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = gcd64(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      do {
        step(ys);
        g = gcd64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factorize_u64(u64 n, const FactorConfig& cfg, unsigned long* budget,
                   std::map<Int, unsigned long>& out) {
  for (u64 d : {2ull, 3ull, 5ull}) {
    while (n % d == 0) {
      ++out[Int(mpz_class(d))];
      n /= d;
    }
  }
  u64 bound = cfg.trial_division_bound;
  for (u64 d = 7; d <= bound && u128(d) * d <= n; d += 2) {
    while (n % d == 0) {
      ++out[Int(mpz_class(d))];
      n /= d;
    }
  }
  if (n == 1) return;
  std::vector<u64> stack{n};
  while (!stack.empty()) {
    u64 m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (u128(m) < u128(bound) * bound || miller_rabin64(m)) {
      ++out[Int(mpz_class(m))];
      continue;
    }
    u64 d = brent_rho64(m, budget);
    stack.push_back(d);
    stack.push_back(m / d);
  }
}

void factorize_mpz(Int n, const FactorConfig& cfg, unsigned long* budget,
                   std::map<Int, unsigned long>& out) {
  for (unsigned long d : {2ul, 3ul, 5ul}) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++out[Int(mpz_class(d))];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
  }
  for (unsigned long d = 7; d <= cfg.trial_division_bound; d += 2) {
    if (Int(mpz_class(d)) * d > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++out[Int(mpz_class(d))];
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
    }
  }
  if (n == 1) return;
  std::vector<Int> stack{n};
  while (!stack.empty()) {
    Int m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (mpz_fits_ulong_p(m.get_mpz_t())) {
      factorize_u64(m.get_ui(), cfg, budget, out);
      continue;
    }
    if (is_prime(m)) {
      ++out[m];
      continue;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      for (unsigned long k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k)) {
          std::map<Int, unsigned long> inner;
          factorize_mpz(root, cfg, budget, inner);
          for (auto& [p, e] : inner) out[p] += e * k;
          m = 1;
          break;
        }
      }
      if (m == 1) continue;
    }
    Int d = brent_rho(m, budget);
    stack.push_back(d);
    stack.push_back(m / d);
  }
}

}  // namespace

FactoredInteger FactoredInteger::from_prime_power(const Int& p, unsigned long e) {
  FactoredInteger f;
  if (e == 0) return f;
  f.value = pow_ui(p, e);
  f.factors[p] = e;
  return f;
}

FactoredInteger FactoredInteger::from_factors(std::map<Int, unsigned long> factors) {
  FactoredInteger f;
  f.value = 1;
  for (const auto& [p, e] : factors) {
    if (e == 0) throw DomainError("FactoredInteger: exponents must be >= 1");
    if (!is_prime(p))
      throw DomainError("FactoredInteger: " + p.get_str() + " is not prime");
    f.value *= pow_ui(p, e);
  }
  f.factors = std::move(factors);
  return f;
}

Int mod_pow(const Int& base, const Int& exp, const Int& mod) {
  if (mod < 1) throw DomainError("mod_pow: modulus must be >= 1");
  if (exp < 0) throw DomainError("mod_pow: exponent must be >= 0");
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 97 * 97) return true;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return miller_rabin64(n.get_ui());
  return strong_probable_prime_base2(n) && strong_lucas_probable_prime(n);
}

FactoredInteger factorize(const Int& n, const FactorConfig& cfg) {
  if (n < 1) throw DomainError("factorize: n must be >= 1");
  FactoredInteger f;
  f.value = n;
  if (n == 1) return f;
  unsigned long budget = cfg.rho_iteration_cap;
  if (mpz_fits_ulong_p(n.get_mpz_t()))
    factorize_u64(n.get_ui(), cfg, &budget, f.factors);
  else
    factorize_mpz(n, cfg, &budget, f.factors);
  return f;
}

Congruence crt(const ResidueSystem& system) {
  Int r = 0, m = 1;
  for (const auto& c : system) {
    if (c.modulus < 1) throw DomainError("crt: moduli must be >= 1");
    if (c.residue < 0 || c.residue >= c.modulus)
      throw DomainError("crt: residues must satisfy 0 <= r < modulus");
    Int g = gcd(m, c.modulus);
    if (g != 1)
      throw NotCoprime("crt: moduli share the factor " + g.get_str());
    if (c.modulus == 1) continue;
    Int inv;
    mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
    Int t = (c.residue - r) % c.modulus * inv % c.modulus;
    if (t < 0) t += c.modulus;
    r += m * t;
    m *= c.modulus;
  }
  return {r, m};
}

unsigned long ceil_log2(const Int& n) {
  if (n < 1) throw DomainError("ceil_log2: n must be >= 1");
  if (n == 1) return 0;
  Int t = n - 1;
  return mpz_sizeinbase(t.get_mpz_t(), 2);
}

Int totient(const FactoredInteger& n) {
  Int phi = 1;
  for (const auto& [p, e] : n.factors) phi *= pow_ui(p, e - 1) * (p - 1);
  return phi;
}

Int radical(const FactoredInteger& n) {
  Int r = 1;
  for (const auto& [p, e] : n.factors) r *= p;
  return r;
}

FactoredInteger lcm_factored(const FactoredInteger& a, const FactoredInteger& b) {
  FactoredInteger out = a;
  for (const auto& [p, e] : b.factors) {
    auto it = out.factors.find(p);
    if (it == out.factors.end())
      out.factors[p] = e;
    else
      it->second = std::max(it->second, e);
  }
  out.value = 1;
  for (const auto& [p, e] : out.factors) out.value *= pow_ui(p, e);
  return out;
}

std::vector<std::pair<Int, Int>> divisors_with_totient(const FactoredInteger& n) {
  std::vector<std::pair<Int, Int>> out{{1, 1}};
  for (const auto& [p, e] : n.factors) {
    std::size_t base = out.size();
    Int pk = 1, phi = 1;
    for (unsigned long i = 1; i <= e; ++i) {
      phi = (i == 1) ? Int(p - 1) : Int(phi * p);
      pk *= p;
      for (std::size_t j = 0; j < base; ++j)
        out.emplace_back(out[j].first * pk, out[j].second * phi);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

Int pow_ui(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace tetrakit
