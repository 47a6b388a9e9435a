#include <benchmark/benchmark.h>

#include <vector>

#include "cgs/classical.hpp"
#include "cgs/effective_quantum.hpp"
#include "cgs/loops.hpp"
#include "cgs/monte_carlo.hpp"
#include "cgs/rng.hpp"
#include "cgs/squid.hpp"

using namespace cgs;

static void BM_SiteMinEnergy(benchmark::State& state) {
  CounterRng rng(1, 0);
  const CouplingParams p{};
  SitePhases th{};
  for (auto& t : th) t = kTwoPi * rng.uniform();
  for (auto _ : state) {
    th[0] += 1e-3;
    benchmark::DoNotOptimize(site_min_energy(th, p));
  }
}
BENCHMARK(BM_SiteMinEnergy);

static void BM_LoopTracer(benchmark::State& state) {
  const auto g = build_lattice(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  LoopTracer tracer(g);
  CounterRng rng(2, 0);
  std::vector<Pairing> pc(g.num_sites());
  for (auto& p : pc) p = kAllPairings[rng.next_u32() % 3];
  for (auto _ : state) benchmark::DoNotOptimize(tracer.count(pc.data()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_links()));
}
BENCHMARK(BM_LoopTracer)->Arg(4)->Arg(16)->Arg(64);

static void BM_EnumerateCoverings(benchmark::State& state) {
  const auto g = build_lattice(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_loop_coverings(g, 1).total);
}
BENCHMARK(BM_EnumerateCoverings)->Arg(4)->Arg(6)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_ToricCodeMatVec(benchmark::State& state) {
  const auto g = build_lattice(2, static_cast<int>(state.range(0)));
  const PauliSum h = effective_hamiltonian_terms(g, StabilizerModelParams::uniform(g, 1.0, 1.0));
  std::vector<double> x(h.dimension(), 1.0), y(h.dimension());
  for (auto _ : state) {
    h.apply(x.data(), y.data(), 1);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.dimension()));
}
BENCHMARK(BM_ToricCodeMatVec)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_MetropolisRun(benchmark::State& state) {
  const auto g = build_lattice(4, 4);
  McOptions o;
  o.sweeps = 200;
  o.burn_in = 50;
  o.measure_every = 50;
  o.n_blocks = 2;
  for (auto _ : state) benchmark::DoNotOptimize(mc_sample(g, CouplingParams{}, o).mean_energy);
}
BENCHMARK(BM_MetropolisRun)->Unit(benchmark::kMillisecond);

static void BM_SquidExactPotential(benchmark::State& state) {
  SquidParams p;
  p.e_LJ = 0.03;
  double d = 0.0;
  for (auto _ : state) {
    d += 0.01;
    benchmark::DoNotOptimize(squid_potential_exact(d, p).energy);
  }
}
BENCHMARK(BM_SquidExactPotential);

BENCHMARK_MAIN();
