#include <benchmark/benchmark.h>

#include <memory>

#include <wmsf/generators.hpp>
#include <wmsf/percolation.hpp>

using namespace wmsf;

static void BM_BernoulliSample(benchmark::State& state) {
  const auto host = std::make_shared<const Graph>(lattice_box(100, 100));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bernoulli_sample(host, 0.5, seed++));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(host->num_edges()));
}
BENCHMARK(BM_BernoulliSample);

static void BM_ClusterReport(benchmark::State& state) {
  const auto host = std::make_shared<const Graph>(lattice_box(50, 50));
  const auto cfg = bernoulli_sample(host, static_cast<double>(state.range(0)) / 100.0, 7);
  const Potential one = Potential::constant(*host);
  for (auto _ : state) benchmark::DoNotOptimize(cluster_report(cfg, one, {}));
}
BENCHMARK(BM_ClusterReport)->Arg(45)->Arg(55);

static void BM_Fwmsf(benchmark::State& state) {
  const auto host = std::make_shared<const Graph>(lattice_box(50, 50));
  const auto cfg = bernoulli_sample(host, 0.6, 3);
  const auto labels = LabelAssignment::draw(*host, 3);
  const Potential one = Potential::constant(*host);
  for (auto _ : state) benchmark::DoNotOptimize(fwmsf(cfg, one, labels));
}
BENCHMARK(BM_Fwmsf);

static void BM_Sweep(benchmark::State& state) {
  const Graph g = lattice_box(20, 20);
  SweepParams sp;
  sp.p_grid = {0.4, 0.6};
  sp.trials = 4;
  sp.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(g, Potential::constant(g), sp));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->UseRealTime();
