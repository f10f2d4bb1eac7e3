#include <benchmark/benchmark.h>

#include "elltop/dynamics.hpp"
#include "elltop/random_states.hpp"

using namespace elltop;

namespace {
const Cplx kTauI{0.0, 1.0};
const Cplx kEta{0.21, 0.07};
}  // namespace

static void SpinRSEom(benchmark::State& state) {
  Rng rng(1);
  const EllipticParams p{kTauI, 1, kEta};
  const SpinRSState s = random_rs_state(rng, p, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rs_eom(s));
  }
}
BENCHMARK(SpinRSEom)->Arg(2)->Arg(3)->Arg(5);

static void MultiTopEom(benchmark::State& state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const EllipticParams p{kTauI, n, kEta};
  const MultiTopState s = random_multitop_state(rng, p, m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nm_eom(s));
  }
}
BENCHMARK(MultiTopEom)->Args({2, 2})->Args({2, 3})->Args({3, 2});

static void MultiTopLax(benchmark::State& state) {
  Rng rng(3);
  const EllipticParams p{kTauI, 2, kEta};
  const MultiTopState s = random_multitop_state(rng, p, 2);
  const Cplx z = default_spectral_samples(p)[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(nm_lax(s, z));
  }
}
BENCHMARK(MultiTopLax);

static void Rank1Eom(benchmark::State& state) {
  Rng rng(4);
  const EllipticParams p{kTauI, 2, kEta};
  const Rank1State s = random_rank1_state(rng, p, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank1_eom(s));
  }
}
BENCHMARK(Rank1Eom)->Arg(2)->Arg(3);

static void IntegrateSteps(benchmark::State& state) {
  Rng rng(5);
  const EllipticParams p{kTauI, 2, kEta};
  RandomStateOptions opt;
  opt.spin_scale = 0.25;
  opt.margin = 0.2;
  const ModelState ms = pack_state(random_multitop_state(rng, p, 2, opt), Family::multitop);
  DiagnosticsOptions no_diag;
  no_diag.invariants = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(ms, IntegratorConfig{1e-3, 10, 10}, no_diag));
  }
}
BENCHMARK(IntegrateSteps);
