#include <doctest.h>

#include <numeric>

#include <tetrakit/dlp.hpp>
#include <tetrakit/level.hpp>

#include "oracles.hpp"

using namespace tetrakit;

TEST_CASE("discrete_log examples") {
  CHECK(*discrete_log(2, 3, 5) == 3);
  CHECK(*discrete_log(9, 1, 23) == 0);
  CHECK(*discrete_log(3, 2, 7) == 2);
  CHECK_FALSE(discrete_log(4, 3, 5).has_value());
  CHECK_THROWS_AS(discrete_log(6, 1, 9), NotCoprime);
  CHECK_THROWS_AS(discrete_log(3, 2, Int(1) << 60), TooLarge);
}

TEST_CASE("discrete_log returns the minimal exponent") {
  for (unsigned long n = 2; n <= 150; ++n) {
    for (unsigned long g = 1; g <= n; ++g) {
      if (std::gcd(g, n) != 1) continue;
      // walk the cycle of g and ask for each element
      unsigned long ord = oracles::order_brute(g, n);
      unsigned long x = 1;
      for (unsigned long e = 0; e < ord; ++e) {
        auto got = discrete_log(Int(g), Int(x), Int(n));
        REQUIRE(got.has_value());
        CHECK(*got == e);
        x = x * g % n;
      }
    }
  }
}

TEST_CASE("multiplicative_order examples and agreement") {
  CHECK(multiplicative_order(3, 5) == 4);
  CHECK(multiplicative_order(1, 31) == 1);
  CHECK(multiplicative_order(2, 9) == 6);
  CHECK(multiplicative_order(5, 1) == 1);
  CHECK_THROWS_AS(multiplicative_order(2, 4), NotCoprime);

  DlpConfig bsgs_only;
  bsgs_only.brute_threshold = 1;
  for (unsigned long n = 2; n <= 300; ++n) {
    for (unsigned long a = 1; a <= 30; ++a) {
      if (std::gcd(a, n) != 1) continue;
      unsigned long expected = oracles::order_brute(a, n);
      CHECK(multiplicative_order(Int(a), Int(n)) == expected);
      CHECK(multiplicative_order(Int(a), Int(n), bsgs_only) == expected);
    }
  }
}

TEST_CASE("order trace records the method") {
  OrderOracleTrace trace;
  multiplicative_order(2, 9, {}, &trace);
  REQUIRE(trace.queries.size() == 1);
  CHECK(trace.queries[0].method == OrderMethod::brute);
  CHECK(trace.queries[0].order == 6);

  DlpConfig bsgs_only;
  bsgs_only.brute_threshold = 1;
  OrderOracleTrace trace2;
  multiplicative_order(2, 9, bsgs_only, &trace2);
  CHECK(trace2.queries[0].method == OrderMethod::bsgs);
}

TEST_CASE("order refinement from a factored multiple") {
  OrderOracleTrace trace;
  auto lam9 = lambda(factorize(9));
  CHECK(multiplicative_order_from_multiple(2, 9, lam9, &trace) == 6);
  CHECK(trace.queries[0].method == OrderMethod::factored_refinement);
  CHECK_THROWS_AS(
      multiplicative_order_from_multiple(2, 9, factorize(5), nullptr),
      DomainError);
  for (unsigned long n = 2; n <= 200; ++n) {
    auto lam = lambda(factorize(Int(n)));
    for (unsigned long a = 2; a <= 20; ++a) {
      if (std::gcd(a, n) != 1) continue;
      CHECK(multiplicative_order_from_multiple(Int(a), Int(n), lam, nullptr) ==
            oracles::order_brute(a, n));
    }
  }
}

TEST_CASE("tetration through orders: examples") {
  CHECK(tetration_mod_via_orders({2, 3, 10}) == 6);
  CHECK(tetration_mod_via_orders({9, 0, 100}) == 1);
  CHECK(tetration_mod_via_orders({3, 100, 7}) == tetration_mod(3, 100, 7));
  CHECK(tetration_mod_via_orders({5, 2, 1}) == 0);
}

TEST_CASE("tetration through orders agrees with the chain algorithm") {
  for (unsigned long n = 1; n <= 120; ++n) {
    for (unsigned long a = 2; a <= 10; ++a) {
      for (unsigned long k = 0; k <= 10; ++k) {
        if (tetration_mod_via_orders({Int(a), Int(k), Int(n)}) !=
            tetration_mod(Int(a), Int(k), Int(n))) {
          CAPTURE(n);
          CAPTURE(a);
          CAPTURE(k);
          REQUIRE(false);
        }
      }
    }
  }
}

TEST_CASE("order chain consistency with the lambda chain") {
  for (unsigned long n : {10ul, 36ul, 97ul, 210ul, 255ul}) {
    auto chain = cached_chain(Int(n));
    for (unsigned long a = 2; a <= 12; ++a) {
      auto oc = order_chain(Int(a), Int(n));
      for (std::size_t i = 0; i < oc.size(); ++i)
        CHECK(mpz_divisible_p(chain->term(i).value.get_mpz_t(),
                              oc[i].get_mpz_t()));

      // the gcd power trick extracts exactly the orthogonal W part
      unsigned long h = ceil_log2(Int(n));
      for (const auto& o : oc) {
        Int w = gcd(mod_pow(Int(a) % o, Int(h), o), o);
        CHECK(w == orthogonal_decomposition(Int(a), o).w);
      }
    }
  }
}

TEST_CASE("the order oracle is queried while lifting") {
  OrderOracleTrace trace;
  Int n = 97;
  Int result = tetration_mod_via_orders({2, 50, n}, {}, &trace);
  CHECK(result == tetration_mod(2, 50, n));
  REQUIRE(!trace.queries.empty());
  auto chain = cached_chain(n);
  for (std::size_t i = 0; i < trace.queries.size(); ++i) {
    // query i produced ord^(i+1), which divides lambda^(i+1)(n)
    CHECK(mpz_divisible_p(chain->term(i + 1).value.get_mpz_t(),
                          trace.queries[i].order.get_mpz_t()));
  }
}
