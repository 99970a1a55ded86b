#include <random>

#include <benchmark/benchmark.h>

#include "intdist/distance.hpp"
#include "intdist/free_fermion.hpp"
#include "intdist/pipeline.hpp"
#include "intdist/spectra.hpp"

using namespace intdist;

namespace {

ProbabilitySpectrum random_spectrum(std::size_t n) {
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> e;
  std::vector<double> w(n);
  for (double& x : w) x = e(rng);
  return ProbabilitySpectrum::from_weights(std::move(w), ThermalOrigin{1.0});
}

void BM_Objective(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = random_spectrum(std::size_t{1} << n);
  std::vector<double> eps(n);
  for (int j = 0; j < n; ++j) eps[j] = 0.3 * (j + 1);
  for (auto _ : state) benchmark::DoNotOptimize(free_distance_objective(rho, eps, 1.0));
  state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_Objective)->DenseRange(2, 12, 2)->Complexity();

void BM_DimerThermalDistance(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dimer_thermal_distance({1, 1, -1, 2.0}, 1.0).value);
}
BENCHMARK(BM_DimerThermalDistance);

void BM_InteractionDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = random_spectrum(std::size_t{1} << n);
  for (auto _ : state) benchmark::DoNotOptimize(interaction_distance(rho, n, 1.0).value);
}
BENCHMARK(BM_InteractionDistance)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_ChainDiagonalize(benchmark::State& state) {
  const auto h = spinless_chain(ChainParams::uniform(static_cast<int>(state.range(0)), 1.0, 0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_diagonalize(h, true).energies.data());
}
BENCHMARK(BM_ChainDiagonalize)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_ChainEntanglementSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = spinless_chain(ChainParams::uniform(n, 1.0, 0.0, 1.0));
  const auto full = OccupationBasis::build(n);
  const Eigen::VectorXd psi = ground_state(h).vector;
  for (auto _ : state)
    benchmark::DoNotOptimize(reduced_density_spectrum(psi, full, chain_half_region(n)).size());
}
BENCHMARK(BM_ChainEntanglementSpectrum)->DenseRange(6, 12, 2);

}  // namespace

BENCHMARK_MAIN();
