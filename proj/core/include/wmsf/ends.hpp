#ifndef WMSF_ENDS_HPP
#define WMSF_ENDS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "wmsf/forest.hpp"
#include "wmsf/graph.hpp"
#include "wmsf/rational.hpp"
#include "wmsf/weights.hpp"

namespace wmsf {

/// Decidable stand-ins for "infinite", "nonvanishing" and "heavy" on a
/// finite truncation. Only vertices flagged as truncation boundary can
/// witness that a side runs off to infinity.
struct ProxyParams {
  // A side is nonvanishing when it holds a boundary vertex of weight at
  // least delta relative to the anchor (1 for the component base).
  Rational nonvanish_delta{1};
  // When false, boundary-touching sides below delta count as finite.
  bool infinite_proxy = true;
  Rational heavy_tau{64};
  // Largest candidate set scanned by maximal_disjoint_furcations.
  std::size_t s_max = 3;

  /// Throws BadParams.
  void validate() const;
};

enum class SideClass { Finite, InfiniteProxy, NonvanishingProxy };
const char* to_string(SideClass c);

/// `anchor` is the weight the threshold is measured against.
SideClass classify_side(const Graph& g, const Potential& p, const Side& side,
                        const ProxyParams& params, const Rational& anchor = Rational(1));

struct ClassifiedSide {
  Side side;
  SideClass cls = SideClass::Finite;
};

struct Furcation {
  VertexSet f;
  std::vector<ClassifiedSide> sides;
  std::size_t infinite = 0;      // infinite-proxy or nonvanishing sides
  std::size_t nonvanishing = 0;
  int phase = 0;                 // set by maximal_disjoint_furcations

  std::size_t order(bool weighted) const { return weighted ? nonvanishing : infinite; }
};

/// Sides of F classified against anchor = max weight in F.
Furcation analyze_furcation(const Graph& g, const Potential& p, const VertexSet& f,
                            const ProxyParams& params);

struct SideProfile {
  std::size_t sides = 0;
  std::size_t infinite = 0;
  std::size_t nonvanishing = 0;
};

/// Side counts of every singleton {x} (anchor = weight of x), in vertex
/// index order. Linear after an O(n log n) sparse table.
std::vector<SideProfile> vertex_side_profiles(const Graph& g, const Potential& p,
                                              const ProxyParams& params);

/// Vertices x such that {x} has at least n qualifying sides; weighted
/// selects nonvanishing sides, otherwise infinite ones.
VertexSet find_furcation_vertices(const Graph& g, const Potential& p, std::size_t n,
                                  const ProxyParams& params, bool weighted = true);

struct FurcationFamily {
  std::vector<Furcation> blocks;  // in order of selection
  std::size_t candidates_scanned = 0;

  std::vector<VertexSet> sets() const;
};

/// Three greedy passes over connected candidates of size 1..s_max in
/// (size, ids) order: w-trifurcations, then w-bifurcations, then
/// bifurcations, each disjoint from everything chosen before.
FurcationFamily maximal_disjoint_furcations(const Graph& g, const Potential& p,
                                            const ProxyParams& params);

struct QuotientGraph {
  std::vector<VertexSet> blocks;       // aligned with qgraph vertex indices
  Graph qgraph;                        // a block is named by its least host id
  Potential qpotential;                // max over each block
  std::map<Edge, Edge> lift;           // qgraph edge -> host edge
  std::map<VertexId, EdgeSet> inner_trees;
  std::vector<Index> block_of;         // host vertex index -> qgraph index

  VertexId block_id(VertexId host) const;
};

/// Family blocks plus singletons for every other vertex. The lift of a
/// quotient edge is the joining host edge of greatest weight, ties broken by
/// canonical edge order; inner trees are BFS trees from the least id.
/// Throws OverlappingBlocks, NotConnected, UnknownId.
QuotientGraph quotient(const Graph& g, const Potential& p, const std::vector<VertexSet>& family);

/// Order on the quotient: block weights plus the tiebreak keys of the lifts.
EdgeOrder quotient_order(const Graph& g, const QuotientGraph& q, const Tiebreak& host_tiebreak);

/// Image of a host edge set in the quotient: edges inside a block vanish.
EdgeSet collapse_edges(const Graph& g, const QuotientGraph& q, const EdgeSet& host_edges);

struct CollapseResult {
  FurcationFamily family;
  QuotientGraph q;
  ForestResult quotient_forest;  // on q.qgraph
  ForestResult forest;           // lifted to g
};

/// Build the family, collapse it, run the maximal subforest on the quotient
/// with fixed set `fixed_q` and lift. Pass `family` to skip the search.
CollapseResult collapsed_maximal_subforest(const Graph& g, const Potential& p,
                                           const Tiebreak& tiebreak, const ProxyParams& params,
                                           const EdgeSet& fixed_q = {},
                                           std::optional<FurcationFamily> family = std::nullopt);

/// N^w(x): vertices reachable from x through vertices y with w(y) <= w(x).
/// Throws UnknownId.
VertexSet visibility_set(const Graph& g, const Potential& p, VertexId x);
VertexSet visibility_set(const Graph& g, const Cocycle& c, VertexId x);

struct Visibility {
  VertexSet set;
  Rational mass;                 // sum of w(y) / w(x)
  bool heavy = false;
  bool touches_boundary = false;
};

Visibility visibility_mass(const Graph& g, const Potential& p, VertexId x,
                           const ProxyParams& params);

}  // namespace wmsf

#endif
