// Slow, independent reference implementations used only by the tests.
#ifndef WMSF_TESTS_ORACLES_HPP
#define WMSF_TESTS_ORACLES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <wmsf/graph.hpp>
#include <wmsf/rational.hpp>
#include <wmsf/weights.hpp>

namespace oracle {

using wmsf::Edge;
using wmsf::EdgeSet;
using wmsf::Graph;
using wmsf::Index;
using wmsf::Rational;
using wmsf::VertexId;
using wmsf::VertexSet;

/// Every simple cycle as a sorted edge set (rotating-start DFS).
std::vector<EdgeSet> brute_cycles(const Graph& g);

/// Edge order spelled out directly: min endpoint value, then key, then index.
struct DirectOrder {
  const Graph* g;
  std::vector<Rational> values;      // by vertex index
  std::vector<std::uint64_t> keys;   // by edge index

  Rational weight(Index e) const;
  bool less(Index a, Index b) const;
};

/// Deletes the least non-fixed edge of every simple cycle.
EdgeSet cycle_deleted(const DirectOrder& o, const EdgeSet& fixed);

/// Maximum spanning forest by Prim, one tree per component.
EdgeSet prim_max_forest(const DirectOrder& o);

/// Vertices reachable from x along simple paths whose vertices all have
/// value <= value(x), by explicit path enumeration.
VertexSet brute_visibility(const Graph& g, const std::vector<Rational>& values, VertexId x);

/// Components of (component of F) minus F, by repeated relaxation.
std::vector<VertexSet> brute_sides(const Graph& g, const VertexSet& f);

bool brute_cycle_invariant(const Graph& g, const VertexSet& y);

/// One representative of every isomorphism class of connected graphs on n
/// vertices (ids 0..n-1), n <= 7.
std::vector<Graph> connected_graphs(int n);

// Random instances ------------------------------------------------------------

Graph random_connected(std::mt19937_64& rng, int n, int extra_edges);
Graph random_graph(std::mt19937_64& rng, int n, int m);
/// Values drawn from {1..spread} so that weight ties are common.
std::vector<Rational> random_values(std::mt19937_64& rng, const Graph& g, int spread);
std::vector<std::uint64_t> random_keys(std::mt19937_64& rng, const Graph& g);

}  // namespace oracle

#endif
