#ifndef WMSF_FOREST_HPP
#define WMSF_FOREST_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wmsf/graph.hpp"
#include "wmsf/weights.hpp"

namespace wmsf {

struct ForestResult {
  EdgeSet kept;
  EdgeSet deleted;
  EdgeSet fixed;
  // Deleted edge -> vertex sequence of a simple cycle on which it is the
  // least edge outside `fixed`. Filled only on request.
  std::map<Edge, std::vector<VertexId>> witness;

  bool same_edges(const ForestResult& o) const {
    return kept == o.kept && deleted == o.deleted && fixed == o.fixed;
  }
};

/// Greedy cut criterion: with H unioned first, the remaining edges are
/// added from the greatest down and an edge is deleted iff its endpoints are
/// already joined. Throws FixedSetCyclic, UnknownEdge.
ForestResult maximal_subforest(const Graph& g, const EdgeOrder& o, const EdgeSet& fixed = {},
                               bool with_witnesses = false);

/// Literal reading: enumerate every simple cycle and delete, simultaneously,
/// the least non-fixed edge of each. Throws CycleLimitExceeded,
/// FixedSetCyclic.
ForestResult maximal_subforest_oracle(const Graph& g, const EdgeOrder& o, const EdgeSet& fixed = {},
                                      std::size_t cycle_limit = 2'000'000);

/// Free minimal spanning forest: keeps e iff its endpoints are not joined by
/// edges of smaller label. labels[e] is indexed by edge. Throws
/// DuplicateLabel, BadParams.
EdgeSet fmsf(const Graph& g, const std::vector<std::uint64_t>& labels);

struct WitnessReport {
  // Deleted edges whose endpoints lie in one kept tree: the tree path
  // together with the edge must be a cycle on which the edge is the least
  // non-fixed one.
  std::size_t cycle_checked = 0;
  // Deleted edges joining two kept trees: a greater non-fixed edge must
  // leave the same tree.
  std::size_t cut_checked = 0;
  std::vector<Edge> violations;
  std::vector<std::string> messages;

  bool clean() const { return violations.empty(); }
};

WitnessReport check_cut_witnesses(const Graph& g, const ForestResult& r, const EdgeOrder& o);

/// M|Y, verified against a fresh computation on the induced subgraph with
/// the restricted order and H|Y. Throws NotCycleInvariant, NotConnected,
/// InvariantViolation on a mismatch.
ForestResult restrict_forest(const Graph& g, const ForestResult& r, const EdgeOrder& o,
                             const VertexSet& y);

/// True when the edge set has no cycle.
bool is_acyclic(const Graph& g, const EdgeSet& edges);

}  // namespace wmsf

#endif
