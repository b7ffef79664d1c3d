#include <benchmark/benchmark.h>

#include <vector>

#include "qve/ansatz.hpp"
#include "qve/basis.hpp"
#include "qve/fixture.hpp"
#include "qve/mapping.hpp"
#include "qve/scf.hpp"
#include "qve/zne.hpp"

using namespace qve;

namespace {

const ActiveSpaceProblem &beh2() {
  static const auto p = load_fixture(QVE_BENCH_DATA_DIR "/beh2_cas.ham");
  return p;
}

const PauliSum &beh2_tapered() {
  static const auto h = qubit_hamiltonian(beh2(), Mapper::Parity, true);
  return h;
}

void BM_H2Integrals(benchmark::State &state) {
  const auto mol = load_geometry(QVE_BENCH_DATA_DIR "/h2.geom");
  for (auto _ : state)
    benchmark::DoNotOptimize(build_integrals(mol));
}
BENCHMARK(BM_H2Integrals);

void BM_MapBeH2(benchmark::State &state) {
  const auto mapper = static_cast<Mapper>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(qubit_hamiltonian(beh2(), mapper, false));
}
BENCHMARK(BM_MapBeH2)
    ->Arg(static_cast<int>(Mapper::JordanWigner))
    ->Arg(static_cast<int>(Mapper::Parity))
    ->Arg(static_cast<int>(Mapper::BravyiKitaev));

void BM_ExactGroundState(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_ground_energy(beh2_tapered()));
}
BENCHMARK(BM_ExactGroundState);

void BM_EstimateHEA(benchmark::State &state) {
  const auto circuit = transpile(build_hea(4, 1), linear_coupling(4)).circuit;
  const std::vector<double> theta(16, 0.3);
  std::optional<NoiseModel> noise;
  if (state.range(1))
    noise = NoiseModel{0.001, 0.01, 0.0, 0.0};
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate(circuit, theta, beh2_tapered(), state.range(0), seed++, noise));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateHEA)->Args({4096, 0})->Args({4096, 1})->Unit(benchmark::kMillisecond);

void BM_EstimateUCCSD(benchmark::State &state) {
  const auto circuit = build_uccsd(1, 1, 3, Mapper::Parity, true);
  const std::vector<double> theta(8, 0.05);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate(circuit, theta, beh2_tapered(), 4096, seed++));
}
BENCHMARK(BM_EstimateUCCSD)->Unit(benchmark::kMillisecond);

void BM_TranspileUCCSD(benchmark::State &state) {
  const auto circuit = build_uccsd(1, 1, 3, Mapper::Parity, true);
  for (auto _ : state)
    benchmark::DoNotOptimize(transpile(circuit, linear_coupling(4)));
}
BENCHMARK(BM_TranspileUCCSD);

void BM_FoldAndRun(benchmark::State &state) {
  const auto folded = fold_circuit(build_hea(4, 1), static_cast<int>(state.range(0)));
  const std::vector<double> theta(16, 0.3);
  for (auto _ : state)
    benchmark::DoNotOptimize(run_circuit(folded, theta));
}
BENCHMARK(BM_FoldAndRun)->Arg(1)->Arg(5);

} // namespace

BENCHMARK_MAIN();
