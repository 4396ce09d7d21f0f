#include <benchmark/benchmark.h>

#include "malevich/bound_search.hpp"
#include "malevich/qutrit.hpp"
#include "malevich/random.hpp"
#include "malevich/two_qubit.hpp"

using namespace malevich;

namespace {

void BM_HermitianEigen4(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix rho = random_density(rng, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigen(rho));
  }
}
BENCHMARK(BM_HermitianEigen4);

void BM_WoottersConcurrence(benchmark::State& state) {
  Rng rng(2);
  const TwoQubitDensity bell = center_block_state({0.9, 0.5, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(concurrence_wootters(bell.matrix));
  }
}
BENCHMARK(BM_WoottersConcurrence);

void BM_QutritAreaPipeline(benchmark::State& state) {
  Rng rng(3);
  const ComplexMatrix rho = random_density(rng, 3);
  for (auto _ : state) {
    const ComponentQubits c = component_qubits(rho);
    benchmark::DoNotOptimize(qutrit_area_sum(c));
  }
}
BENCHMARK(BM_QutritAreaPipeline);

void BM_NegativityEmbed(benchmark::State& state) {
  Rng rng(4);
  const TwoQubitDensity embedded = qutrit_embed_state(random_density(rng, 3), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(negativity(embedded.matrix));
  }
}
BENCHMARK(BM_NegativityEmbed);

void BM_QubitBoundSearch(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(reproduce_bound(ProblemName::qubit_area));
  }
}
BENCHMARK(BM_QubitBoundSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
