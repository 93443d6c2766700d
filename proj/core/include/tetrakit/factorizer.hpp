#pragma once

#include <optional>
#include <vector>

#include "tetrakit/tetration.hpp"

namespace tetrakit {

enum class SplitStatus { split, no_split, input_prime, input_unit };

/// Result of probing N with consecutive-tetration gcds. witness fields are
/// populated iff status == split; bases_tried counts the probed bases.
struct SplitOutcome {
  SplitStatus status = SplitStatus::no_split;
  std::optional<Int> divisor;
  std::optional<Int> witness_base;
  std::optional<unsigned long> witness_height;
  unsigned long bases_tried = 0;
};

/// Evaluates g_k = gcd(^{k+1} a - ^k a, N) for k = 0..ceil(log2 N) and
/// returns the first nontrivial split. Guaranteed to split whenever some
/// prime p | N has lev_p(a) != lev_N(a). Does not primality-test N.
SplitOutcome tetration_split(const Int& n, const Int& base,
                             const FactorConfig& cfg = {});

/// ceil(log2(N)^2): the default base-search bound.
unsigned long default_base_bound(const Int& n);

/// Runs tetration_split for a = 2, 3, ..., bound; the first split wins
/// (lowest base, then lowest height).
SplitOutcome find_split(const Int& n,
                        std::optional<unsigned long> base_bound = {},
                        const FactorConfig& cfg = {});

enum class Certificate { unconditional, conditional };

/// One node of the recursive split tree. A split node n = u * v records
/// g = gcd(u, v) and carries children u/g and n/(u*g).
struct FactorTreeNode {
  enum class Kind { unit, prime, conditional_squarefree, split };
  Int value;
  Kind kind = Kind::unit;
  Int r;  // squarefree part of value
  std::optional<Int> split_divisor;
  std::optional<Int> split_gcd;
  std::optional<Int> witness_base;
  std::optional<unsigned long> witness_height;
  int left = -1;
  int right = -1;
};

struct FactorTree {
  Int root;                          // the original N
  unsigned long stripped_twos = 0;   // factors of 2 and 3 are removed first;
  unsigned long stripped_threes = 0; // the witness-bound theorem needs gcd(N,6)=1
  Int reduced;                       // N / (2^stripped_twos * 3^stripped_threes)
  std::vector<FactorTreeNode> nodes; // nodes[0] is the reduced root when reduced > 1
};

struct SquarefreeResult {
  Int r;  // smallest r with N/r a perfect square
  Certificate certified = Certificate::unconditional;
  FactorTree tree;
};

/// Squarefree part by the recursive split tree. A no-split verdict on a
/// composite node declares it squarefree conditionally (the result is then
/// marked Certificate::conditional).
SquarefreeResult squarefree_part(const Int& n,
                                 std::optional<unsigned long> base_bound = {},
                                 const FactorConfig& cfg = {});

/// gcd(a^{l(N-1)} - 1, N): the complementary probe for the hard case where
/// gcd(p-1, q-1) is large. Requires odd N >= 3 and gcd(a, N) = 1.
Int power_probe(const Int& n, const Int& base, const Int& multiplier);

struct SplitEvent {
  Int value;
  Int divisor;
  Int cofactor;
  Int witness_base;
  unsigned long witness_height;
};

/// Factorization discovered through tetration splits only; factorize() is
/// used solely inside the lambda chains of the moduli.
struct MtpFactorization {
  std::map<Int, unsigned long> primes;
  std::vector<Int> unresolved;  // composite leaves that resisted splitting
  std::vector<SplitEvent> events;
  bool fallback_used = false;
  bool complete() const { return unresolved.empty(); }
};

MtpFactorization mtp_factorization(const Int& n,
                                   std::optional<unsigned long> base_bound = {},
                                   const FactorConfig& cfg = {},
                                   bool direct_fallback = false);

/// mtp_factorization as a FactoredInteger; throws Unresolved (carrying the
/// stuck cofactor) if any leaf resisted both splitting and primality.
FactoredInteger full_factorization_via_mtp(const Int& n,
                                           std::optional<unsigned long> base_bound = {},
                                           const FactorConfig& cfg = {});

}  // namespace tetrakit
