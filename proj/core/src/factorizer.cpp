#include "tetrakit/factorizer.hpp"

#include <cmath>
#include <deque>

namespace tetrakit {

SplitOutcome tetration_split(const Int& n, const Int& base,
                             const FactorConfig& cfg) {
  if (n < 1) throw DomainError("tetration_split: n must be >= 1");
  if (base < 2) throw DomainError("tetration_split: base must be >= 2");
  SplitOutcome out;
  out.bases_tried = 1;
  if (n == 1) {
    out.status = SplitStatus::input_unit;
    return out;
  }
  auto chain = cached_chain(n, cfg);
  const unsigned long kmax = ceil_log2(n);
  Int prev = 1;  // ^0 a
  for (unsigned long k = 0; k <= kmax; ++k) {
    Int cur = tetration_mod(base, Int(k + 1), *chain);
    Int diff = cur - prev;
    if (diff < 0) diff += n;
    Int g = gcd(diff, n);
    if (g > 1 && g < n) {
      out.status = SplitStatus::split;
      out.divisor = g;
      out.witness_base = base;
      out.witness_height = k;
      return out;
    }
    prev = cur;
  }
  out.status = SplitStatus::no_split;
  return out;
}

unsigned long default_base_bound(const Int& n) {
  if (n <= 2) return 2;
  // ceil(log2(n)^2), computed from the normalized mantissa.
  long exp2;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  double lg = std::log2(mant) + static_cast<double>(exp2);
  return static_cast<unsigned long>(std::ceil(lg * lg));
}

SplitOutcome find_split(const Int& n, std::optional<unsigned long> base_bound,
                        const FactorConfig& cfg) {
  if (n < 2) throw DomainError("find_split: n must be >= 2");
  unsigned long bound = base_bound.value_or(default_base_bound(n));
  if (bound < 2) bound = 2;
  SplitOutcome out;
  for (unsigned long a = 2; a <= bound; ++a) {
    SplitOutcome probe = tetration_split(n, Int(a), cfg);
    ++out.bases_tried;
    if (probe.status == SplitStatus::split) {
      probe.bases_tried = out.bases_tried;
      return probe;
    }
  }
  out.status = SplitStatus::no_split;
  return out;
}

namespace {

// Recursive tree build; returns the node index. r values are filled on the
// way back up through r(n) = r(u/g) * r(n/(ug)).
int squarefree_node(const Int& n, std::optional<unsigned long> base_bound,
                    const FactorConfig& cfg, FactorTree& tree,
                    Certificate& cert) {
  int idx = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({});
  tree.nodes[idx].value = n;
  if (n == 1) {
    tree.nodes[idx].kind = FactorTreeNode::Kind::unit;
    tree.nodes[idx].r = 1;
    return idx;
  }
  if (is_prime(n)) {
    tree.nodes[idx].kind = FactorTreeNode::Kind::prime;
    tree.nodes[idx].r = n;
    return idx;
  }
  SplitOutcome out = find_split(n, base_bound, cfg);
  if (out.status != SplitStatus::split) {
    // Conditional certificate: rests on the power-nonresidue witness bound.
    tree.nodes[idx].kind = FactorTreeNode::Kind::conditional_squarefree;
    tree.nodes[idx].r = n;
    cert = Certificate::conditional;
    return idx;
  }
  const Int u = *out.divisor;
  const Int v = n / u;
  const Int g = gcd(u, v);
  int left = squarefree_node(u / g, base_bound, cfg, tree, cert);
  int right = squarefree_node(n / (u * g), base_bound, cfg, tree, cert);
  FactorTreeNode& node = tree.nodes[idx];  // may have been invalidated
  node.kind = FactorTreeNode::Kind::split;
  node.split_divisor = u;
  node.split_gcd = g;
  node.witness_base = out.witness_base;
  node.witness_height = out.witness_height;
  node.left = left;
  node.right = right;
  node.r = tree.nodes[left].r * tree.nodes[right].r;
  return idx;
}

}  // namespace

SquarefreeResult squarefree_part(const Int& n,
                                 std::optional<unsigned long> base_bound,
                                 const FactorConfig& cfg) {
  if (n < 1) throw DomainError("squarefree_part: n must be >= 1");
  SquarefreeResult res;
  res.tree.root = n;
  Int reduced = n;
  while (mpz_even_p(reduced.get_mpz_t())) {
    reduced /= 2;
    ++res.tree.stripped_twos;
  }
  while (mpz_divisible_ui_p(reduced.get_mpz_t(), 3)) {
    reduced /= 3;
    ++res.tree.stripped_threes;
  }
  res.tree.reduced = reduced;
  res.r = 1;
  if (res.tree.stripped_twos % 2) res.r *= 2;
  if (res.tree.stripped_threes % 2) res.r *= 3;
  if (reduced > 1) {
    squarefree_node(reduced, base_bound, cfg, res.tree, res.certified);
    res.r *= res.tree.nodes[0].r;
  }
  return res;
}

Int power_probe(const Int& n, const Int& base, const Int& multiplier) {
  if (n < 3 || mpz_even_p(n.get_mpz_t()))
    throw DomainError("power_probe: n must be odd and >= 3");
  if (multiplier < 1) throw DomainError("power_probe: multiplier must be >= 1");
  if (gcd(base, n) != 1)
    throw NotCoprime("power_probe: base shares a factor with n");
  Int x = mod_pow(base, multiplier * (n - 1), n);
  Int diff = x - 1;
  if (diff < 0) diff += n;
  return gcd(diff, n);
}

MtpFactorization mtp_factorization(const Int& n,
                                   std::optional<unsigned long> base_bound,
                                   const FactorConfig& cfg,
                                   bool direct_fallback) {
  if (n < 1) throw DomainError("mtp_factorization: n must be >= 1");
  MtpFactorization out;
  std::deque<Int> queue;
  if (n > 1) queue.push_back(n);
  while (!queue.empty()) {
    Int m = queue.front();
    queue.pop_front();
    if (m == 1) continue;
    if (is_prime(m)) {
      ++out.primes[m];
      continue;
    }
    SplitOutcome split = find_split(m, base_bound, cfg);
    if (split.status == SplitStatus::split) {
      out.events.push_back({m, *split.divisor, m / *split.divisor,
                            *split.witness_base, *split.witness_height});
      queue.push_back(*split.divisor);
      queue.push_back(m / *split.divisor);
      continue;
    }
    if (direct_fallback) {
      out.fallback_used = true;
      for (const auto& [p, e] : factorize(m, cfg).factors) out.primes[p] += e;
      continue;
    }
    out.unresolved.push_back(m);
  }
  return out;
}

FactoredInteger full_factorization_via_mtp(const Int& n,
                                           std::optional<unsigned long> base_bound,
                                           const FactorConfig& cfg) {
  MtpFactorization f = mtp_factorization(n, base_bound, cfg);
  if (!f.complete())
    throw Unresolved("full_factorization_via_mtp: composite " +
                         f.unresolved.front().get_str() +
                         " resisted both splitting and primality",
                     f.unresolved.front());
  FactoredInteger out;
  out.value = n;
  out.factors = std::move(f.primes);
  return out;
}

}  // namespace tetrakit
