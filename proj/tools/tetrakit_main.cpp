// tetrakit command line: every library capability behind one binary with
// newline-delimited json records (see docs/schema.md).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "tetrakit/dlp.hpp"
#include "tetrakit/factorizer.hpp"
#include "tetrakit/level.hpp"
#include "tetrakit/omega.hpp"
#include "tetrakit/tetration.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace tetrakit;

struct RunConfig {
  unsigned long trial_division_bound = 10'000;
  unsigned long rho_iteration_cap = 5'000'000;
  unsigned long enumeration_cap = 20'000'000;
  std::optional<unsigned long> base_bound_override;
  unsigned thread_count = 1;
  std::string output_format = "json";
};

FactorConfig factor_cfg(const RunConfig& rc) {
  return {rc.trial_division_bound, rc.rho_iteration_cap};
}

OmegaConfig omega_cfg(const RunConfig& rc) {
  return {rc.enumeration_cap, rc.thread_count};
}

std::string dec(const Int& v) { return v.get_str(); }

std::string rational(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Exact decimal expansion truncated to nine places; avoids floating point
// so records stay byte-identical across runs.
std::string decimal9(const mpq_class& q) {
  Int num = q.get_num(), den = q.get_den();
  Int whole = num / den, rem = num % den;
  std::string out = whole.get_str() + ".";
  for (int i = 0; i < 9; ++i) {
    rem *= 10;
    out += Int(rem / den).get_str();
    rem %= den;
  }
  return out;
}

json record(const std::string& command) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  return j;
}

void render_text(const json& j, std::string prefix, std::ostream& os) {
  for (const auto& [key, value] : j.items()) {
    std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object())
      render_text(value, name, os);
    else
      os << " " << name << "=" << value.dump();
  }
}

void emit(const json& j, const RunConfig& rc) {
  if (rc.output_format == "text") {
    std::ostringstream os;
    render_text(j, "", os);
    std::cout << os.str().substr(1) << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

Int parse_int(const std::string& s, const char* what) {
  try {
    return Int(s);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError(std::string(what) + ": not a decimal integer: " + s);
  }
}

// --factors takes p1^e1,p2^e2,...; exponent defaults to 1.
FactoredInteger parse_factors(const std::string& spec) {
  std::map<Int, unsigned long> map;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string item = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? spec.size() : comma + 1;
    if (item.empty()) continue;
    std::size_t caret = item.find('^');
    Int p = parse_int(item.substr(0, caret), "--factors");
    unsigned long e = 1;
    if (caret != std::string::npos) e = std::stoul(item.substr(caret + 1));
    map[p] += e;
  }
  return FactoredInteger::from_factors(std::move(map));
}

void apply_factors(const std::string& spec, const Int& modulus,
                   const RunConfig& rc) {
  FactoredInteger f = parse_factors(spec);
  if (f.value != modulus)
    throw DomainError("--factors product " + f.value.get_str() +
                      " does not match the modulus " + modulus.get_str());
  warm_chain_cache(f, factor_cfg(rc));
}

json tree_to_json(const FactorTree& tree, int idx) {
  const FactorTreeNode& node = tree.nodes[idx];
  json j;
  j["value"] = dec(node.value);
  switch (node.kind) {
    case FactorTreeNode::Kind::unit: j["kind"] = "unit"; break;
    case FactorTreeNode::Kind::prime: j["kind"] = "prime"; break;
    case FactorTreeNode::Kind::conditional_squarefree:
      j["kind"] = "conditional-squarefree";
      break;
    case FactorTreeNode::Kind::split: j["kind"] = "split"; break;
  }
  j["r"] = dec(node.r);
  if (node.kind == FactorTreeNode::Kind::split) {
    j["divisor"] = dec(*node.split_divisor);
    j["gcd"] = dec(*node.split_gcd);
    j["witness_base"] = dec(*node.witness_base);
    j["witness_height"] = *node.witness_height;
    j["children"] = json::array(
        {tree_to_json(tree, node.left), tree_to_json(tree, node.right)});
  }
  return j;
}

int run(int argc, char** argv) {
  RunConfig rc;
  if (const char* env = std::getenv("TETRAKIT_THREADS")) {
    unsigned long v = std::strtoul(env, nullptr, 10);
    if (v >= 1) rc.thread_count = static_cast<unsigned>(v);
  }

  CLI::App app{"modular tetration toolkit"};
  app.set_config("--config")->description("flat key=value config file");
  app.add_option("--trial-division-bound", rc.trial_division_bound,
                 "trial division bound of the factorization engine")
      ->capture_default_str();
  app.add_option("--rho-iteration-cap", rc.rho_iteration_cap,
                 "total rho iterations per factorization")
      ->capture_default_str();
  app.add_option("--enumeration-cap", rc.enumeration_cap,
                 "largest L(lcm(u,v)) the omega census will enumerate")
      ->capture_default_str();
  unsigned long base_bound = 0;
  app.add_option("--base-bound", base_bound,
                 "override for the split base-search bound (default ceil(log2(N)^2))");
  app.add_option("--threads", rc.thread_count,
                 "worker threads for enumeration (env TETRAKIT_THREADS)")
      ->capture_default_str();
  app.add_option("--format", rc.output_format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.require_subcommand(1);

  std::string base_s, height_s, modulus_s, factors_s, u_s, v_s;

  auto* tet = app.add_subcommand("tetrate", "compute ^k a mod N");
  tet->add_option("-a,--base", base_s, "base a")->required();
  tet->add_option("-k,--height", height_s, "height k")->required();
  tet->add_option("-n,--modulus", modulus_s, "modulus N")->required();
  tet->add_option("--factors", factors_s, "known factorization of N (p1^e1,p2^e2,...)");
  std::string naive_mode;
  tet->add_option("--naive", naive_mode, "use a naive oracle instead of the chain algorithm")
      ->check(CLI::IsMember({"exact-tower", "squaring-chain"}));

  auto* lev = app.add_subcommand("level", "level of a modulo n");
  lev->add_option("-a,--base", base_s, "base a")->required();
  lev->add_option("-n,--modulus", modulus_s, "modulus n")->required();
  lev->add_option("--factors", factors_s, "known factorization of n");

  auto* ord = app.add_subcommand("orders", "iterated multiplicative orders of a modulo n");
  ord->add_option("-a,--base", base_s, "base a")->required();
  ord->add_option("-n,--modulus", modulus_s, "modulus n")->required();

  auto* fac = app.add_subcommand("factor", "factor N via tetration splits");
  fac->add_option("N", modulus_s, "number to factor")->required();
  fac->add_option("--factors", factors_s, "known factorization of N (stretch runs)");
  bool oracle_only_top = true;
  fac->add_flag("--oracle-only-top,!--no-oracle-only-top", oracle_only_top,
                "restrict factorization work to the lambda chains (default on); "
                "off finishes stuck composites with the direct engine");
  std::string probe_base_s, probe_mult_s = "1";
  fac->add_option("--probe-base", probe_base_s,
                  "run the power probe gcd(a^{l(N-1)}-1, N) instead of the split search");
  fac->add_option("--probe-multiplier", probe_mult_s, "multiplier l for the power probe")
      ->capture_default_str();

  auto* sqf = app.add_subcommand("squarefree", "squarefree part via the split tree");
  sqf->add_option("N", modulus_s, "number to decompose")->required();

  auto* omg = app.add_subcommand("omega", "level-agreement density omega(u, v)");
  std::string omega_mode = "brute";
  omg->add_option("--mode", omega_mode, "brute enumerates; bound evaluates the divisor sum")
      ->check(CLI::IsMember({"brute", "bound"}))
      ->capture_default_str();
  omg->add_option("-u", u_s, "first modulus (prime p for bound mode)")->required();
  omg->add_option("-v", v_s, "second modulus (prime q for bound mode)")->required();

  auto* rep = app.add_subcommand("report", "bases whose tetration split fails");
  rep->add_option("-n,--modulus", modulus_s, "composite modulus")->required();
  unsigned long base_max = 50;
  rep->add_option("--base-max", base_max, "largest base to try")->capture_default_str();
  rep->add_option("--factors", factors_s, "known factorization of the modulus");

  auto* dlp = app.add_subcommand("tetrate-dlp", "tetration through the order oracle only");
  dlp->add_option("-a,--base", base_s, "base a")->required();
  dlp->add_option("-k,--height", height_s, "height k")->required();
  dlp->add_option("-n,--modulus", modulus_s, "modulus N")->required();
  bool with_trace = false;
  dlp->add_flag("--trace", with_trace, "include every order-oracle query in the record");
  std::string dlp_cap_s = Int(Int(1) << 48).get_str();
  dlp->add_option("--dlp-cap", dlp_cap_s, "modulus cap of the BSGS oracle")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the usage diagnostic
    return code == 0 ? 0 : 1;
  }
  if (base_bound) rc.base_bound_override = base_bound;
  if (rc.thread_count < 1) rc.thread_count = 1;
  const FactorConfig fc = factor_cfg(rc);

  if (tet->parsed()) {
    TetrationQuery q{parse_int(base_s, "base"), parse_int(height_s, "height"),
                     parse_int(modulus_s, "modulus")};
    if (!factors_s.empty()) apply_factors(factors_s, q.modulus, rc);
    json j = record("tetrate");
    j["base"] = dec(q.base);
    j["height"] = dec(q.height);
    j["modulus"] = dec(q.modulus);
    if (naive_mode.empty()) {
      j["mode"] = "chain";
      j["result"] = dec(tetration_mod(q, fc));
    } else {
      j["mode"] = naive_mode;
      OracleMode m = naive_mode == "exact-tower" ? OracleMode::exact_tower
                                                 : OracleMode::squaring_chain;
      j["result"] = dec(naive_tetration_mod(q, m));
    }
    emit(j, rc);
    return 0;
  }

  if (lev->parsed()) {
    Int a = parse_int(base_s, "base"), n = parse_int(modulus_s, "modulus");
    if (!factors_s.empty()) apply_factors(factors_s, n, rc);
    json j = record("level");
    j["base"] = dec(a);
    j["modulus"] = dec(n);
    j["level"] = level_direct(a, n, fc);
    bool applicable = n == 1 || a == 1 ||
                      gcd(a, cached_chain(n, fc)->big_l()) == 1;
    j["formula_applicable"] = applicable;
    j["formula_level"] =
        applicable ? json(level_via_orders(a, n, fc)) : json(nullptr);
    json comp = json::object();
    for (const auto& [pp, l] : level_decompose(a, n, fc)) comp[dec(pp)] = l;
    j["components"] = comp;
    emit(j, rc);
    return 0;
  }

  if (ord->parsed()) {
    Int a = parse_int(base_s, "base"), n = parse_int(modulus_s, "modulus");
    LevelProfile prof = level_profile(a, n, fc);
    json j = record("orders");
    j["base"] = dec(a);
    j["modulus"] = dec(n);
    j["level"] = prof.level;
    json chain = json::array();
    for (const auto& o : prof.order_chain) chain.push_back(dec(o));
    j["order_chain"] = chain;
    j["order_lcm"] = dec(prof.order_lcm);
    emit(j, rc);
    return 0;
  }

  if (fac->parsed()) {
    Int n = parse_int(modulus_s, "N");
    if (!factors_s.empty()) apply_factors(factors_s, n, rc);
    if (!probe_base_s.empty()) {
      Int a = parse_int(probe_base_s, "--probe-base");
      Int l = parse_int(probe_mult_s, "--probe-multiplier");
      json j = record("factor");
      j["event"] = "power-probe";
      j["modulus"] = dec(n);
      j["base"] = dec(a);
      j["multiplier"] = dec(l);
      j["gcd"] = dec(power_probe(n, a, l));
      emit(j, rc);
      return 0;
    }
    MtpFactorization f =
        mtp_factorization(n, rc.base_bound_override, fc, !oracle_only_top);
    for (const auto& ev : f.events) {
      json j = record("factor");
      j["event"] = "split";
      j["value"] = dec(ev.value);
      j["divisor"] = dec(ev.divisor);
      j["cofactor"] = dec(ev.cofactor);
      j["witness_base"] = dec(ev.witness_base);
      j["witness_height"] = ev.witness_height;
      emit(j, rc);
    }
    json j = record("factor");
    j["event"] = "result";
    j["value"] = dec(n);
    j["status"] = f.complete() ? "complete" : "unresolved";
    json facs = json::array();
    for (const auto& [p, e] : f.primes)
      facs.push_back(json::array({dec(p), e}));
    j["factors"] = facs;
    json unres = json::array();
    for (const auto& c : f.unresolved) unres.push_back(dec(c));
    j["unresolved"] = unres;
    j["fallback_used"] = f.fallback_used;
    emit(j, rc);
    return f.complete() ? 0 : 2;
  }

  if (sqf->parsed()) {
    Int n = parse_int(modulus_s, "N");
    SquarefreeResult res = squarefree_part(n, rc.base_bound_override, fc);
    json j = record("squarefree");
    j["value"] = dec(n);
    j["r"] = dec(res.r);
    j["certified"] = res.certified == Certificate::unconditional
                         ? "unconditional"
                         : "conditional";
    json stripped = json::object();
    stripped["2"] = res.tree.stripped_twos;
    stripped["3"] = res.tree.stripped_threes;
    j["stripped"] = stripped;
    j["reduced"] = dec(res.tree.reduced);
    j["tree"] = res.tree.nodes.empty() ? json(nullptr)
                                       : tree_to_json(res.tree, 0);
    emit(j, rc);
    return 0;
  }

  if (omg->parsed()) {
    Int u = parse_int(u_s, "u"), v = parse_int(v_s, "v");
    json j = record("omega");
    j["mode"] = omega_mode;
    if (omega_mode == "brute") {
      OmegaReport r = omega_brute(u, v, omega_cfg(rc), fc);
      j["u"] = dec(r.u);
      j["v"] = dec(r.v);
      j["k"] = dec(r.k);
      j["big_l"] = dec(r.big_l);
      j["numerator"] = dec(r.numerator);
      j["denominator"] = dec(r.denominator);
      j["omega"] = rational(r.omega);
      j["omega_decimal"] = decimal9(r.omega);
      j["equality_expected"] = r.equality_expected
                                   ? json(*r.equality_expected)
                                   : json(nullptr);
    } else {
      Int p = std::min(u, v), q = std::max(u, v);
      OmegaBound b = omega_bound(p, q, omega_cfg(rc), fc);
      j["p"] = dec(p);
      j["q"] = dec(q);
      j["bound"] = rational(b.value);
      j["bound_decimal"] = decimal9(b.value);
      j["exact"] = b.exact;
      j["equality_expected"] =
          !mpz_divisible_p(cached_chain(q, fc)->big_l().get_mpz_t(),
                           p.get_mpz_t());
    }
    emit(j, rc);
    return 0;
  }

  if (rep->parsed()) {
    Int n = parse_int(modulus_s, "modulus");
    FactoredInteger f =
        factors_s.empty() ? factorize(n, fc) : parse_factors(factors_s);
    if (f.value != n)
      throw DomainError("--factors product does not match the modulus");
    auto failing = base_success_report(f, base_max, fc);
    json j = record("report");
    j["modulus"] = dec(n);
    j["base_max"] = base_max;
    json bases = json::array();
    for (unsigned long a : failing) bases.push_back(a);
    j["failing_bases"] = bases;
    j["failing_count"] = failing.size();
    emit(j, rc);
    return 0;
  }

  if (dlp->parsed()) {
    TetrationQuery q{parse_int(base_s, "base"), parse_int(height_s, "height"),
                     parse_int(modulus_s, "modulus")};
    DlpConfig dc;
    dc.modulus_cap = parse_int(dlp_cap_s, "--dlp-cap");
    OrderOracleTrace trace;
    Int result = tetration_mod_via_orders(q, dc, &trace);
    json j = record("tetrate-dlp");
    j["base"] = dec(q.base);
    j["height"] = dec(q.height);
    j["modulus"] = dec(q.modulus);
    j["result"] = dec(result);
    j["order_queries"] = trace.queries.size();
    if (with_trace) {
      json t = json::array();
      for (const auto& query : trace.queries) {
        json e;
        e["base"] = dec(query.base);
        e["modulus"] = dec(query.modulus);
        e["order"] = dec(query.order);
        e["method"] = query.method == OrderMethod::brute ? "brute"
                      : query.method == OrderMethod::bsgs
                          ? "bsgs"
                          : "factored-refinement";
        t.push_back(e);
      }
      j["trace"] = t;
    }
    emit(j, rc);
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const EffortError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
