#include <benchmark/benchmark.h>

#include <tetrakit/dlp.hpp>
#include <tetrakit/factorizer.hpp>
#include <tetrakit/level.hpp>
#include <tetrakit/omega.hpp>
#include <tetrakit/tetration.hpp>

using namespace tetrakit;

namespace {

const Int kSemiprime("60507095029");

void BM_mod_pow(benchmark::State& state) {
  Int base("123456789123456789"), exp("987654321987654321");
  Int mod = kSemiprime;
  for (auto _ : state) benchmark::DoNotOptimize(mod_pow(base, exp, mod));
}
BENCHMARK(BM_mod_pow);

void BM_factorize_semiprime(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(factorize(kSemiprime));
}
BENCHMARK(BM_factorize_semiprime);

void BM_lambda_chain(benchmark::State& state) {
  for (auto _ : state) {
    clear_chain_cache();
    benchmark::DoNotOptimize(LambdaChain::compute(kSemiprime));
  }
}
BENCHMARK(BM_lambda_chain);

void BM_tetration_mod(benchmark::State& state) {
  auto chain = cached_chain(kSemiprime);
  Int k = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(tetration_mod(Int(2), k, *chain));
}
BENCHMARK(BM_tetration_mod)->Arg(6)->Arg(40);

void BM_tetration_split(benchmark::State& state) {
  cached_chain(kSemiprime);
  for (auto _ : state)
    benchmark::DoNotOptimize(tetration_split(kSemiprime, 2));
}
BENCHMARK(BM_tetration_split);

void BM_level_direct(benchmark::State& state) {
  auto chain = cached_chain(Int(1541));
  for (auto _ : state) benchmark::DoNotOptimize(level_direct(Int(2), *chain));
}
BENCHMARK(BM_level_direct);

void BM_squarefree_part(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(squarefree_part(Int(9702)));
}
BENCHMARK(BM_squarefree_part);

void BM_omega_census(benchmark::State& state) {
  OmegaConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(omega_brute(Int(23), Int(67), cfg));
  state.SetItemsProcessed(state.iterations() * 1'017'060);
}
BENCHMARK(BM_omega_census)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_order_oracle_tetration(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(tetration_mod_via_orders({Int(3), Int(20), Int(99991)}));
}
BENCHMARK(BM_order_oracle_tetration);

}  // namespace

BENCHMARK_MAIN();
