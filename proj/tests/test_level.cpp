#include <doctest.h>

#include <tetrakit/level.hpp>

#include "oracles.hpp"

using namespace tetrakit;

TEST_CASE("level_direct examples") {
  CHECK(level_direct(3, 2) == 0);
  CHECK(level_direct(9, 1) == 0);
  CHECK(level_direct(2, 5) == 3);
  CHECK(level_direct(1, 17) == 0);
}

TEST_CASE("level_direct matches the exponent-lifting oracle") {
  for (unsigned long n = 1; n <= 300; ++n)
    for (unsigned long a = 1; a <= 30; ++a)
      CHECK(level_direct(Int(a), Int(n)) == oracles::level_brute(a, n));
}

TEST_CASE("iterated_order examples") {
  CHECK(iterated_order(3, 5, 1) == 4);
  CHECK(iterated_order(9, 14, 0) == 14);
  CHECK(iterated_order(3, 5, 3) == 1);
  CHECK(iterated_order(3, 5, 17) == 1);  // past the chain end
  CHECK(order_chain(3, 5) == std::vector<Int>{5, 4, 2, 1});
  CHECK(order_chain(2, 5) == std::vector<Int>{5, 4, 1});
}

TEST_CASE("order chains terminate within the height bound") {
  for (unsigned long n = 1; n <= 500; ++n) {
    unsigned long h = cached_chain(Int(n))->height();
    for (unsigned long a = 1; a <= 30; ++a)
      CHECK(order_chain(Int(a), Int(n)).size() <= h + 2);
  }
}

TEST_CASE("level_via_orders examples") {
  CHECK(level_via_orders(3, 5) == 2);
  CHECK(level_via_orders(1, 12) == 0);
  CHECK(level_via_orders(7, 4) == 1);
  CHECK(level_direct(7, 4) == 1);
  CHECK_THROWS_AS(level_via_orders(2, 5), NotCoprimeToL);
}

TEST_CASE("the closed form needs gcd(a, L(n)) = 1: witness (2, 5)") {
  // order chain of 2 mod 5 is 5, 4, 1, so the formula would give 1
  auto oc = order_chain(2, 5);
  REQUIRE(oc == std::vector<Int>{5, 4, 1});
  unsigned long formula = 0;
  while (oc[formula] != 1) ++formula;
  CHECK(formula - 1 == 1);
  CHECK(level_direct(2, 5) == 3);  // the true level differs
}

TEST_CASE("level_via_orders equals level_direct on coprime pairs") {
  for (unsigned long n = 1; n <= 300; ++n) {
    Int L = cached_chain(Int(n))->big_l();
    for (unsigned long a = 1; a <= 50; ++a) {
      if (gcd(Int(a), L) != 1) continue;
      CHECK(level_via_orders(Int(a), Int(n)) == level_direct(Int(a), Int(n)));
    }
  }
}

TEST_CASE("level lower bound from the order chain holds for every base") {
  for (unsigned long n = 1; n <= 300; ++n) {
    for (unsigned long a = 1; a <= 30; ++a) {
      auto oc = order_chain(Int(a), Int(n));
      unsigned long nu = 0;
      while (oc[nu] != 1) ++nu;
      long bound = static_cast<long>(nu) - 1;
      CHECK(static_cast<long>(level_direct(Int(a), Int(n))) >= bound);
    }
  }
}

TEST_CASE("level is invariant modulo the order lcm for coprime bases") {
  for (unsigned long n = 2; n <= 200; ++n) {
    Int L = cached_chain(Int(n))->big_l();
    for (unsigned long a = 2; a <= 30; ++a) {
      if (gcd(Int(a), L) != 1) continue;
      Int la = order_lcm(Int(a), Int(n));
      Int r = Int(a) % la;
      CHECK(level_direct(Int(a), Int(n)) == level_direct(r, Int(n)));
    }
  }
}

TEST_CASE("order_lcm examples") {
  CHECK(order_lcm(3, 5) == 20);
  CHECK(order_lcm(8, 1) == 1);
  CHECK(order_lcm(2, 5) == 20);
}

TEST_CASE("prime_power_level examples") {
  CHECK(prime_power_level(2, 3, 2) == 3);
  CHECK(level_direct(2, 9) == 3);
  CHECK(prime_power_level(2, 3, 1) == 2);
  CHECK(prime_power_level(3, 5, 3) == level_direct(3, 125));
  CHECK_THROWS_AS(prime_power_level(6, 3, 2), NotCoprime);
  CHECK_THROWS_AS(prime_power_level(2, 4, 2), DomainError);
  CHECK_THROWS_AS(prime_power_level(2, 3, 2, /*m_scan_cap=*/1), MNotFound);
}

TEST_CASE("prime_power_level matches level_direct, including M > 2 pairs") {
  // ord(18) is 3 modulo 7, 49 and 343, so M = 4 for the pair (18, 7)
  CHECK(multiplicative_order_factored(18, 49) == 3);
  CHECK(multiplicative_order_factored(18, 343) == 3);
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    for (unsigned long a = 2; a <= 20; ++a) {
      if (a % p == 0) continue;
      for (unsigned long n = 1; n <= 4; ++n) {
        Int pn = pow_ui(Int(p), n);
        if (prime_power_level(Int(a), Int(p), n) != level_direct(Int(a), pn)) {
          CAPTURE(a);
          CAPTURE(p);
          CAPTURE(n);
          REQUIRE(false);
        }
      }
    }
  }
}

TEST_CASE("level_decompose examples") {
  auto d = level_decompose(2, 15);
  REQUIRE(d.size() == 2);
  CHECK(d.at(3) == 2);
  CHECK(d.at(5) == 3);
  CHECK(level_direct(2, 15) == 3);

  auto d20 = level_decompose(3, 20);
  unsigned long max_lev = 0;
  for (const auto& [pp, l] : d20) max_lev = std::max(max_lev, l);
  CHECK(max_lev == level_direct(3, 20));

  CHECK(level_decompose(5, 7).size() == 1);
}

TEST_CASE("level_decompose maximum equals the level for n <= 200") {
  for (unsigned long n = 2; n <= 200; ++n) {
    for (unsigned long a = 2; a <= 12; ++a) {
      unsigned long max_lev = 0;
      for (const auto& [pp, l] : level_decompose(Int(a), Int(n)))
        max_lev = std::max(max_lev, l);
      CHECK(max_lev == level_direct(Int(a), Int(n)));
    }
  }
}

TEST_CASE("consecutive tower differences divide the next difference") {
  // exact towers: ^5 2 is 2^65536, still materializable
  std::vector<Int> t2{1, 2, 4, 16, 65536};
  t2.push_back(pow_ui(Int(2), 65536));
  for (std::size_t k = 1; k + 1 < t2.size(); ++k) {
    Int prev = t2[k] - t2[k - 1];
    Int next = t2[k + 1] - t2[k];
    CHECK(mpz_divisible_p(next.get_mpz_t(), prev.get_mpz_t()));
  }
  std::vector<Int> t3{1, 3, 27, pow_ui(Int(3), 27)};
  for (std::size_t k = 1; k + 1 < t3.size(); ++k) {
    Int prev = t3[k] - t3[k - 1];
    Int next = t3[k + 1] - t3[k];
    CHECK(mpz_divisible_p(next.get_mpz_t(), prev.get_mpz_t()));
  }
}

TEST_CASE("level_profile bundles the pieces") {
  auto prof = level_profile(3, 5);
  CHECK(prof.level == 2);
  CHECK(prof.order_chain == std::vector<Int>{5, 4, 2, 1});
  CHECK(prof.order_lcm == 20);
}
