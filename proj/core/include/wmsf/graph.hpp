#ifndef WMSF_GRAPH_HPP
#define WMSF_GRAPH_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace wmsf {

/// Opaque vertex identifier supplied by whoever builds the graph.
using VertexId = std::uint64_t;
/// Dense position of a vertex or edge inside one Graph.
using Index = std::uint32_t;

/// Undirected edge stored canonically with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  static Edge canonical(VertexId a, VertexId b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
  }
  bool has(VertexId x) const noexcept { return x == u || x == v; }
  VertexId other(VertexId x) const noexcept { return x == u ? v : u; }

  auto operator<=>(const Edge&) const = default;
};

/// Sorted, duplicate-free id collections.
using VertexSet = std::vector<VertexId>;
using EdgeSet = std::vector<Edge>;

struct GraphMeta {
  std::map<std::string, std::string> annotations;
  std::map<VertexId, std::int64_t> levels;
  // Vertices that exist only because a generator stopped expanding there.
  std::set<VertexId> boundary;
};

/// Immutable simple undirected graph. Vertices are kept sorted by id and
/// edges in canonical (u, v) order, so indices follow id order.
class Graph {
 public:
  Graph() = default;

  /// Validates and canonicalizes. Duplicate edges collapse to one.
  /// Throws SelfLoop, DanglingEndpoint or DuplicateVertexId.
  static Graph build(std::vector<VertexId> vertices, std::vector<Edge> edges,
                     GraphMeta meta = {});

  std::size_t num_vertices() const noexcept { return ids_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<VertexId>& vertices() const noexcept { return ids_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const GraphMeta& meta() const noexcept { return meta_; }

  VertexId id(Index v) const { return ids_[v]; }
  const Edge& edge(Index e) const { return edges_[e]; }
  Index edge_source(Index e) const { return ends_[e][0]; }
  Index edge_target(Index e) const { return ends_[e][1]; }

  std::optional<Index> find(VertexId id) const;
  /// Throws UnknownId.
  Index index_of(VertexId id) const;
  bool contains(VertexId id) const { return find(id).has_value(); }

  std::optional<Index> find_edge(VertexId a, VertexId b) const;
  std::optional<Index> find_edge(const Edge& e) const { return find_edge(e.u, e.v); }
  /// Throws UnknownEdge.
  Index edge_index(const Edge& e) const;

  std::size_t degree(Index v) const { return offsets_[v + 1] - offsets_[v]; }
  /// Neighbour indices in increasing id order.
  std::span<const Index> neighbors(Index v) const {
    return {adj_.data() + offsets_[v], degree(v)};
  }
  /// Edge indices aligned with neighbors(v).
  std::span<const Index> incident_edges(Index v) const {
    return {adj_edge_.data() + offsets_[v], degree(v)};
  }

  bool is_boundary(Index v) const { return boundary_[v] != 0; }
  std::optional<std::int64_t> level(Index v) const { return levels_[v]; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.edges_ == b.edges_ &&
           a.meta_.annotations == b.meta_.annotations &&
           a.meta_.levels == b.meta_.levels && a.meta_.boundary == b.meta_.boundary;
  }

 private:
  std::vector<VertexId> ids_;
  std::vector<Edge> edges_;
  std::vector<std::array<Index, 2>> ends_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> adj_;
  std::vector<Index> adj_edge_;
  std::vector<char> boundary_;
  std::vector<std::optional<std::int64_t>> levels_;
  GraphMeta meta_;
};

/// Connected-component labelling by index; labels are numbered in order of
/// each component's least vertex id.
struct ComponentLabels {
  std::vector<Index> label;
  Index count = 0;
};
ComponentLabels component_labels(const Graph& g);

/// Maximal connected vertex sets, ordered by least vertex id.
std::vector<VertexSet> components(const Graph& g);

/// Membership mask over vertex indices. Throws UnknownId.
std::vector<char> vertex_mask(const Graph& g, const VertexSet& set);
/// Membership mask over edge indices. Throws UnknownEdge.
std::vector<char> edge_mask(const Graph& g, const EdgeSet& set);

/// True when the induced subgraph on `set` is connected (and nonempty).
bool is_connected_set(const Graph& g, const VertexSet& set);

struct Side {
  VertexSet vertices;
  // Side vertices adjacent to F.
  VertexSet inner_boundary;
};

/// Components of (component of F) \ F, ordered by least vertex id.
/// Throws NotConnected, SpansComponents, UnknownId, BadParams (empty F).
std::vector<Side> sides(const Graph& g, const VertexSet& f);

EdgeSet edge_boundary(const Graph& g, const VertexSet& a);
VertexSet inner_boundary(const Graph& g, const VertexSet& a);
VertexSet outer_boundary(const Graph& g, const VertexSet& a);

struct SimpleCycle {
  // Starts at the least id and continues toward the smaller of its two
  // cycle neighbours.
  std::vector<VertexId> vertices;
  EdgeSet edges;  // sorted
};

/// Enumerates every simple cycle (length >= 3) exactly once. Exponential;
/// throws CycleLimitExceeded once more than `limit` cycles are found.
std::vector<SimpleCycle> simple_cycles(const Graph& g, std::size_t limit);

/// Literal check: every simple cycle with an edge inside Y lies inside Y.
bool is_cycle_invariant(const Graph& g, const VertexSet& y, std::size_t cycle_limit);

/// Maximal 2-connected pieces; bridges appear as two-vertex blocks.
struct Block {
  VertexSet vertices;
  std::vector<Index> edges;
};
std::vector<Block> biconnected_blocks(const Graph& g);
VertexSet articulation_points(const Graph& g);

/// Polynomial equivalent of is_cycle_invariant: any two edges of a
/// 2-connected block share a simple cycle, so Y is cycle-invariant iff each
/// non-bridge block with an edge inside Y lies inside Y.
bool is_cycle_invariant_by_blocks(const Graph& g, const VertexSet& y);

/// Restriction keeping ids and the meta annotations of surviving vertices.
Graph induced_subgraph(const Graph& g, const VertexSet& a);
/// All vertices, only the given edges. Throws UnknownEdge.
Graph spanned_subgraph(const Graph& g, const EdgeSet& e);

/// Convenience conversions between index and id collections.
VertexSet to_vertex_set(const Graph& g, std::span<const Index> indices);
EdgeSet to_edge_set(const Graph& g, std::span<const Index> indices);
EdgeSet edges_from_mask(const Graph& g, const std::vector<char>& mask);

}  // namespace wmsf

#endif
