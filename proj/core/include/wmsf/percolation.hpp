#ifndef WMSF_PERCOLATION_HPP
#define WMSF_PERCOLATION_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "wmsf/ends.hpp"
#include "wmsf/forest.hpp"
#include "wmsf/graph.hpp"
#include "wmsf/weights.hpp"

namespace wmsf {

/// An edge subset of a shared host graph.
struct PercolationConfig {
  std::shared_ptr<const Graph> host;
  std::vector<char> open;  // by host edge index
  double p = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> provenance;

  EdgeSet open_edges() const { return edges_from_mask(*host, open); }
  std::size_t open_count() const;
  /// All host vertices, open edges only, host meta kept.
  Graph open_subgraph() const;

  bool same_open(const PercolationConfig& o) const { return open == o.open; }
};

/// floor(p * 2^64): draws below it open an edge. p = 1 opens every edge.
std::uint64_t open_threshold(double p);

/// Edge e is open iff draw(seed, e) < threshold(p), so for one seed the
/// open sets increase with p. Throws BadProbability.
PercolationConfig bernoulli_sample(std::shared_ptr<const Graph> host, double p, std::uint64_t seed);

/// Per-edge 64-bit labels U_e; the derived tiebreak puts e before e' iff
/// U_e > U_e'.
struct LabelAssignment {
  std::vector<std::uint64_t> labels;  // by host edge index

  static LabelAssignment draw(const Graph& g, std::uint64_t seed);
  Tiebreak tiebreak() const { return Tiebreak::from_labels(labels); }
  std::size_t collisions() const { return tiebreak().collisions(); }
};

/// The maximal subforest of the open subgraph under the label tiebreak,
/// with nothing fixed. `potential` lives on the host.
ForestResult fwmsf(const PercolationConfig& cfg, const Potential& potential,
                   const LabelAssignment& labels, bool with_witnesses = false);

struct Cluster {
  VertexSet vertices;
  Rational mass;                      // relative to the heaviest member
  bool heavy = false;
  bool touches_boundary = false;
  std::size_t max_nonvanishing_sides = 0;  // over single-vertex furcations
};

struct ClusterReport {
  std::vector<Cluster> clusters;  // ordered by least vertex id
  std::size_t heavy = 0;
  std::size_t light = 0;
  std::size_t largest = 0;
};

ClusterReport cluster_report(const PercolationConfig& cfg, const Potential& potential,
                             const ProxyParams& params);

/// Throw UnknownEdge. The new configuration records the edit.
PercolationConfig insert_edge(const PercolationConfig& cfg, const Edge& e);
PercolationConfig delete_edge(const PercolationConfig& cfg, const Edge& e);

/// Checks fwmsf(sigma_* labels) == sigma(fwmsf(labels)) where
/// (sigma_* L)(sigma e) = L(e), on the open set `open` (all edges when
/// empty), which is pushed forward as well. Throws NotAutomorphism,
/// NotWeightPreserving.
bool equivariance_check(const Graph& g, const Potential& potential,
                        const std::map<VertexId, VertexId>& sigma, const LabelAssignment& labels,
                        const std::vector<char>& open = {});

struct SweepParams {
  std::vector<double> p_grid;
  int trials = 1;
  std::uint64_t seed = 0;
  ProxyParams proxy;
  unsigned workers = 1;
  std::size_t visibility_samples = 8;
};

struct RunRecord {
  double p = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;     // trial seed used for edges and labels
  std::size_t open_edges = 0;
  std::size_t clusters = 0;
  std::size_t heavy_clusters = 0;
  std::size_t largest_cluster = 0;
  double largest_fraction = 0.0;
  std::size_t max_nonvanishing_sides = 0;
  std::size_t clusters_3plus = 0;      // clusters with a vertex of >= 3 nonvanishing sides
  std::size_t kept = 0;
  std::size_t deleted = 0;
  std::size_t trees = 0;
  std::size_t trees_3plus = 0;         // forest trees with >= 3 nonvanishing directions
  std::size_t witness_violations = 0;
  std::size_t heavy_split_checked = 0;
  std::size_t heavy_split_violations = 0;
  int fmsf_equal = -1;                 // -1 when the potential is not constant
  bool monotone = true;                // open set contains that of the next smaller p
  std::size_t label_collisions = 0;
  std::size_t visibility_count = 0;
  std::size_t visibility_heavy = 0;
  double visibility_mass_min = 0.0;
  double visibility_mass_median = 0.0;
  double visibility_mass_max = 0.0;

  std::string to_json_line() const;
};

/// One record per (p, trial), ordered by grid position then trial. The
/// trial seed depends only on (seed, trial), which couples the grid.
std::vector<RunRecord> sweep(const Graph& g, const Potential& potential, const SweepParams& params);

/// One row per (p, statistic): mean over trials.
std::string summary_csv(const std::vector<RunRecord>& records);

}  // namespace wmsf

#endif
