#include <doctest.h>

#include <tetrakit/factorizer.hpp>
#include <tetrakit/level.hpp>

#include "oracles.hpp"

using namespace tetrakit;

namespace {
const Int kExampleN("60507095029");
}

TEST_CASE("tetration_split examples") {
  auto out = tetration_split(kExampleN, 2);
  REQUIRE(out.status == SplitStatus::split);
  CHECK(*out.divisor == 224951);
  CHECK(*out.witness_base == 2);
  CHECK(*out.witness_height == 6);

  out = tetration_split(15, 2);
  REQUIRE(out.status == SplitStatus::split);
  CHECK(*out.divisor == 3);
  CHECK(*out.witness_height == 2);

  out = tetration_split(7, 2);
  CHECK(out.status == SplitStatus::no_split);
  CHECK_FALSE(out.divisor.has_value());

  CHECK(tetration_split(1, 2).status == SplitStatus::input_unit);
  CHECK_THROWS_AS(tetration_split(15, 1), DomainError);
}

TEST_CASE("splits for other bases of the Example 4.7 modulus") {
  // every base finds the same prime, at heights fixed by the level gap
  auto check = [](unsigned long a, unsigned long k) {
    auto out = tetration_split(kExampleN, Int(a));
    REQUIRE(out.status == SplitStatus::split);
    CHECK(*out.divisor == 224951);
    CHECK(*out.witness_height == k);
  };
  check(3, 5);
  check(4, 4);
  check(9, 3);
}

TEST_CASE("find_split examples") {
  auto out = find_split(15, 10);
  REQUIRE(out.status == SplitStatus::split);
  CHECK(*out.witness_base == 2);
  CHECK(*out.divisor == 3);
  CHECK(out.bases_tried == 1);

  CHECK(find_split(17, {}).status == SplitStatus::no_split);
  CHECK(default_base_bound(Int(1541)) == 113);
  CHECK_THROWS_AS(find_split(1, {}), DomainError);
}

TEST_CASE("split found iff some prime level differs (squarefree n <= 2000)") {
  for (unsigned long n = 6; n <= 2000; ++n) {
    auto f = factorize(Int(n));
    if (f.factors.size() < 2) continue;
    bool squarefree = true;
    for (const auto& [p, e] : f.factors)
      if (e > 1) squarefree = false;
    if (!squarefree) continue;
    for (unsigned long a = 2; a <= 20; ++a) {
      unsigned long lev_n = level_direct(Int(a), Int(n));
      bool differs = false;
      for (const auto& [p, e] : f.factors)
        if (level_direct(Int(a), p) != lev_n) differs = true;
      auto out = tetration_split(Int(n), Int(a));
      if ((out.status == SplitStatus::split) != differs) {
        CAPTURE(n);
        CAPTURE(a);
        REQUIRE(false);
      }
      if (out.divisor) {
        CHECK(*out.divisor > 1);
        CHECK(*out.divisor < n);
        CHECK(n % out.divisor->get_ui() == 0);
      }
    }
  }
}

TEST_CASE("non-squarefree inputs coprime to 6 always split") {
  for (unsigned long n = 25; n <= 2000; ++n) {
    if (n % 2 == 0 || n % 3 == 0) continue;
    bool has_square = false;
    for (const auto& [p, e] : factorize(Int(n)).factors)
      if (p >= 5 && e >= 2) has_square = true;
    if (!has_square) continue;
    auto out = find_split(Int(n), {});
    if (out.status != SplitStatus::split) {
      CAPTURE(n);
      REQUIRE(false);
    }
  }
}

TEST_CASE("squarefree_part examples") {
  CHECK(squarefree_part(12).r == 3);
  CHECK(squarefree_part(1).r == 1);
  auto res = squarefree_part(360);
  CHECK(res.r == 10);
  CHECK(res.certified == Certificate::unconditional);
  CHECK(res.tree.stripped_twos == 3);
  CHECK(res.tree.stripped_threes == 2);
  CHECK(res.tree.reduced == 5);
}

TEST_CASE("squarefree_part agrees with the factorization oracle up to 3000") {
  for (unsigned long n = 1; n <= 3000; ++n) {
    auto res = squarefree_part(Int(n));
    Int expected = oracles::squarefree_from_factorization(Int(n));
    if (res.r != expected) {
      CAPTURE(n);
      REQUIRE(res.r == expected);
    }
    // N / r must always be a perfect square
    Int quotient = Int(n) / res.r;
    CHECK(mpz_perfect_square_p(quotient.get_mpz_t()));
  }
}

TEST_CASE("factor tree reconstructs the squarefree part structurally") {
  for (unsigned long n : {360ul, 4900ul, 9702ul, 104329ul, 2048ul, 91125ul}) {
    auto res = squarefree_part(Int(n));
    const auto& tree = res.tree;
    for (const auto& node : tree.nodes) {
      CHECK(node.r == oracles::squarefree_from_factorization(node.value));
      if (node.kind == FactorTreeNode::Kind::split) {
        const Int& u = *node.split_divisor;
        const Int g = gcd(u, Int(node.value / u));
        CHECK(*node.split_gcd == g);
        CHECK(tree.nodes[node.left].value == u / g);
        CHECK(tree.nodes[node.right].value == node.value / (u * g));
        CHECK(node.r == tree.nodes[node.left].r * tree.nodes[node.right].r);
        // children are at least two times smaller
        CHECK(tree.nodes[node.left].value * 2 <= node.value);
        CHECK(tree.nodes[node.right].value * 2 <= node.value);
      }
    }
  }
}

TEST_CASE("power_probe examples") {
  CHECK(power_probe(1541, 2, 1) == 23);
  CHECK(power_probe(91, 3, 1) == 91);
  CHECK(power_probe(1541, 1542, 1) == 1541);  // base = 1 mod n: trivial gcd
  CHECK_THROWS_AS(power_probe(1541, 23, 1), NotCoprime);
  CHECK_THROWS_AS(power_probe(15, 2, 0), DomainError);
  CHECK_THROWS_AS(power_probe(14, 3, 1), DomainError);
}

TEST_CASE("full_factorization_via_mtp examples") {
  auto f = full_factorization_via_mtp(15);
  CHECK(f.factors == std::map<Int, unsigned long>{{3, 1}, {5, 1}});

  f = full_factorization_via_mtp(8);
  CHECK(f.factors == std::map<Int, unsigned long>{{2, 3}});

  f = full_factorization_via_mtp(17);
  CHECK(f.factors == std::map<Int, unsigned long>{{17, 1}});

  f = full_factorization_via_mtp(1);
  CHECK(f.factors.empty());

  f = full_factorization_via_mtp(kExampleN);
  CHECK(f.factors ==
        std::map<Int, unsigned long>{{Int(224951), 1}, {Int(268979), 1}});
}

TEST_CASE("full factorization reconstructs n below 1000") {
  for (unsigned long n = 1; n <= 1000; ++n) {
    auto f = full_factorization_via_mtp(Int(n));
    Int prod = 1;
    for (const auto& [p, e] : f.factors) {
      CHECK(is_prime(p));
      prod *= pow_ui(p, e);
    }
    CHECK(prod == n);
  }
}

TEST_CASE("unresolved composites surface instead of being guessed") {
  // all of 2..5 fail as bases for 1541, so a tiny bound gets stuck
  CHECK_THROWS_AS(full_factorization_via_mtp(1541, 5), Unresolved);
  try {
    full_factorization_via_mtp(1541, 5);
  } catch (const Unresolved& e) {
    CHECK(e.cofactor() == 1541);
  }
  auto f = mtp_factorization(1541, 5);
  REQUIRE(f.unresolved.size() == 1);
  CHECK(f.unresolved.front() == 1541);
  // the direct fallback finishes the job and says so
  auto g = mtp_factorization(1541, 5, {}, /*direct_fallback=*/true);
  CHECK(g.complete());
  CHECK(g.fallback_used);
  CHECK(g.primes == std::map<Int, unsigned long>{{23, 1}, {67, 1}});
  // with the default bound, base 12 eventually splits it
  auto full = full_factorization_via_mtp(1541);
  CHECK(full.factors == std::map<Int, unsigned long>{{23, 1}, {67, 1}});
}
