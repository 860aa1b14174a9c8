#include <benchmark/benchmark.h>

#include "opradius/experiments.hpp"
#include "opradius/extremal_family.hpp"
#include "opradius/linalg.hpp"
#include "opradius/parallel.hpp"
#include "opradius/radii.hpp"

using namespace opradius;

namespace {

ComplexMatrix hermitian_sample(std::size_t n) {
  auto rng = stream_rng(kDefaultSeed, n);
  return random_gaussian_matrix(n, rng).hermitian_part();
}

void BM_EigHermitianJacobi(benchmark::State& state) {
  const ComplexMatrix h = hermitian_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h, true));
}
BENCHMARK(BM_EigHermitianJacobi)->Arg(8)->Arg(32)->Arg(64);

void BM_ExtremeEigenvalues(benchmark::State& state) {
  const ComplexMatrix h = hermitian_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_extreme_eigenvalues(h));
}
BENCHMARK(BM_ExtremeEigenvalues)->Arg(8)->Arg(32)->Arg(64)->Arg(148);

void BM_NumericalRadiusExtremal(benchmark::State& state) {
  const ExtremalFamily f = build_extremal_family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(f.a));
}
BENCHMARK(BM_NumericalRadiusExtremal)->Arg(12)->Arg(36)->Unit(benchmark::kMillisecond);

void BM_RhoRadius(benchmark::State& state) {
  auto rng = stream_rng(kDefaultSeed, 99);
  const ComplexMatrix a = random_gaussian_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rho_radius(a, 1.5));
}
BENCHMARK(BM_RhoRadius)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Certificates(benchmark::State& state) {
  const ExtremalFamily f = build_extremal_family(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(certificate_real_part(f));
    benchmark::DoNotOptimize(certificate_inverse_real_part(f));
  }
}
BENCHMARK(BM_Certificates)->Arg(52)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
