#include <benchmark/benchmark.h>

#include "elltop/elliptic.hpp"

using namespace elltop;

namespace {
const EllipticParams params{Cplx{0.0, 1.0}, 3, Cplx{0.21, 0.07}};
}

static void ThetaSeries(benchmark::State& state) {
  const Cplx z{0.31, 0.17};
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta(z, params.tau(), order));
  }
}
BENCHMARK(ThetaSeries)->Arg(0)->Arg(3);

static void ThetaReduced(benchmark::State& state) {
  // Large argument exercises the reduction path.
  const Cplx z{17.31, -23.17};
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta(z, params.tau(), 0));
  }
}
BENCHMARK(ThetaReduced);

static void EisensteinE1(benchmark::State& state) {
  const Cplx z{0.31, 0.17};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eisenstein_e1(z, params));
  }
}
BENCHMARK(EisensteinE1);

static void KroneckerPhi(benchmark::State& state) {
  const Cplx z{0.31, 0.17}, q{-0.21, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kronecker_phi(z, q, params));
  }
}
BENCHMARK(KroneckerPhi);

static void PhiMode(benchmark::State& state) {
  const Cplx z{0.31, 0.17};
  const Cplx u = mode_omega({1, 2}, params) + Cplx{0.11, -0.07};
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_mode(z, u, {1, 2}, params));
  }
}
BENCHMARK(PhiMode);
