#include <benchmark/benchmark.h>

#include <wmsf/ends.hpp>
#include <wmsf/forest.hpp>
#include <wmsf/generators.hpp>
#include <wmsf/percolation.hpp>

using namespace wmsf;

static void BM_MaximalSubforestLattice(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Graph g = lattice_box(side, side);
  const EdgeOrder o(g, Potential::constant(g), LabelAssignment::draw(g, 1).tiebreak());
  for (auto _ : state) benchmark::DoNotOptimize(maximal_subforest(g, o));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_MaximalSubforestLattice)->Arg(32)->Arg(64)->Arg(128);

static void BM_MaximalSubforestGP(benchmark::State& state) {
  const Graph g = gp_graph(2, 3, static_cast<int>(state.range(0)));
  const EdgeOrder o(g, Potential::from_levels(g, Rational(1, 2)), LabelAssignment::draw(g, 1).tiebreak());
  for (auto _ : state) benchmark::DoNotOptimize(maximal_subforest(g, o));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_MaximalSubforestGP)->Arg(6)->Arg(9);

static void BM_CutWitnesses(benchmark::State& state) {
  const Graph g = lattice_box(32, 32);
  const EdgeOrder o(g, Potential::constant(g), LabelAssignment::draw(g, 2).tiebreak());
  const ForestResult r = maximal_subforest(g, o);
  for (auto _ : state) benchmark::DoNotOptimize(check_cut_witnesses(g, r, o));
}
BENCHMARK(BM_CutWitnesses);

static void BM_SideProfiles(benchmark::State& state) {
  const Graph g = gp_graph(2, 3, 7);
  const Potential p = Potential::from_levels(g, Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(vertex_side_profiles(g, p, {}));
}
BENCHMARK(BM_SideProfiles);
