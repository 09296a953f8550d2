#include <doctest.h>

#include <random>

#include <wmsf/error.hpp>
#include <wmsf/generators.hpp>
#include <wmsf/graph.hpp>

#include "oracles.hpp"

using namespace wmsf;

namespace {

Graph make(std::vector<VertexId> ids, std::vector<Edge> edges) {
  return Graph::build(std::move(ids), std::move(edges));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("build validates and canonicalizes") {
  const Graph p = make({3, 1, 2}, {{2, 1}, {2, 3}, {1, 2}});
  CHECK(p.vertices() == VertexSet{1, 2, 3});
  CHECK(p.edges() == EdgeSet{{1, 2}, {2, 3}});
  CHECK(p.degree(p.index_of(2)) == 2);

  CHECK(code_of([] { make({1}, {{1, 1}}); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { make({1, 2}, {{1, 3}}); }) == ErrorCode::DanglingEndpoint);
  CHECK(code_of([] { make({1, 1}, {}); }) == ErrorCode::DuplicateVertexId);
  CHECK(code_of([&] { p.index_of(9); }) == ErrorCode::UnknownId);
  CHECK(code_of([&] { p.edge_index({1, 3}); }) == ErrorCode::UnknownEdge);
}

TEST_CASE("components") {
  CHECK(components(make({1, 2, 3}, {{1, 2}, {2, 3}})) == std::vector<VertexSet>{{1, 2, 3}});
  CHECK(components(make({1, 2}, {})) == std::vector<VertexSet>{{1}, {2}});
  const Graph two = make({0, 1, 2, 3, 4, 5}, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const auto c = components(two);
  REQUIRE(c.size() == 2);
  CHECK(c[0].size() == 3);
  CHECK(c[1].size() == 3);
}

TEST_CASE("components form a partition with no crossing edges") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const Graph g = oracle::random_graph(rng, 12, 8);
    const auto comps = components(g);
    std::vector<int> owner(g.num_vertices(), -1);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      CHECK(is_connected_set(g, comps[i]));
      for (VertexId v : comps[i]) {
        CHECK(owner[g.index_of(v)] == -1);
        owner[g.index_of(v)] = static_cast<int>(i);
      }
    }
    for (const auto& e : g.edges()) CHECK(owner[g.index_of(e.u)] == owner[g.index_of(e.v)]);
    for (int o : owner) CHECK(o >= 0);
  }
}

TEST_CASE("sides") {
  const Graph star = make({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}});
  const auto s = sides(star, {0});
  REQUIRE(s.size() == 3);
  CHECK(s[0].vertices == VertexSet{1});
  CHECK(s[2].vertices == VertexSet{3});

  const Graph path = make({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  const auto ps = sides(path, {3});
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].vertices == VertexSet{1, 2});
  CHECK(ps[0].inner_boundary == VertexSet{2});
  CHECK(ps[1].vertices == VertexSet{4, 5});

  const Graph tri = cycle_graph(3);
  const auto ts = sides(tri, {0});
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].vertices == VertexSet{1, 2});

  CHECK(code_of([&] { sides(path, {1, 3}); }) == ErrorCode::NotConnected);
  CHECK(code_of([&] { sides(path, {}); }) == ErrorCode::BadParams);
}

TEST_CASE("sides agree with label propagation and partition the component") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Graph g = oracle::random_connected(rng, 10, static_cast<int>(rng() % 6));
    VertexSet f = {static_cast<VertexId>(rng() % 10)};
    // Grow F by a random neighbour to get connected sets of size two.
    if (t % 2 == 0) {
      const auto nb = g.neighbors(g.index_of(f[0]));
      f.push_back(g.id(nb[rng() % nb.size()]));
      std::sort(f.begin(), f.end());
    }
    const auto got = sides(g, f);
    std::vector<VertexSet> plain;
    std::size_t covered = f.size();
    for (const auto& s : got) {
      plain.push_back(s.vertices);
      covered += s.vertices.size();
    }
    CHECK(plain == oracle::brute_sides(g, f));
    CHECK(covered == g.num_vertices());
  }
}

TEST_CASE("boundaries") {
  const Graph path = make({1, 2, 3}, {{1, 2}, {2, 3}});
  CHECK(edge_boundary(path, {1}) == EdgeSet{{1, 2}});
  CHECK(inner_boundary(path, {1, 2}) == VertexSet{2});
  CHECK(outer_boundary(path, {1}) == VertexSet{2});
  CHECK(edge_boundary(path, {1, 2, 3}).empty());
  CHECK(edge_boundary(cycle_graph(4), {0, 1}).size() == 2);
}

TEST_CASE("edge boundary equals that of the complement") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const Graph g = oracle::random_connected(rng, 9, 5);
    VertexSet a, rest;
    for (VertexId v : g.vertices()) (rng() % 2 ? a : rest).push_back(v);
    CHECK(edge_boundary(g, a) == edge_boundary(g, rest));
  }
}

TEST_CASE("simple cycles") {
  CHECK(simple_cycles(cycle_graph(3), 100).size() == 1);
  CHECK(simple_cycles(regular_tree(3, 3), 100).empty());
  std::vector<Edge> k4;
  for (VertexId a = 0; a < 4; ++a) {
    for (VertexId b = a + 1; b < 4; ++b) k4.push_back({a, b});
  }
  const auto cycles = simple_cycles(make({0, 1, 2, 3}, k4), 100);
  CHECK(cycles.size() == 7);
  CHECK(cycles.front().vertices.front() == 0);
  CHECK(code_of([&] { simple_cycles(make({0, 1, 2, 3}, k4), 3); }) == ErrorCode::CycleLimitExceeded);
}

TEST_CASE("simple cycles match rotating-start DFS on small graphs") {
  for (int n = 3; n <= 6; ++n) {
    for (const auto& g : oracle::connected_graphs(n)) {
      std::vector<EdgeSet> got;
      for (auto& c : simple_cycles(g, 1'000'000)) got.push_back(c.edges);
      std::sort(got.begin(), got.end());
      CHECK(got == oracle::brute_cycles(g));
    }
  }
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const Graph g = oracle::random_graph(rng, 8, 8 + static_cast<int>(rng() % 8));
    std::vector<EdgeSet> got;
    for (auto& c : simple_cycles(g, 1'000'000)) got.push_back(c.edges);
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::brute_cycles(g));
  }
}

TEST_CASE("cycle invariance") {
  const Graph tri = cycle_graph(3);
  CHECK(is_cycle_invariant(tri, {0, 1, 2}, 100));
  CHECK_FALSE(is_cycle_invariant(tri, {0, 1}, 100));
  CHECK(is_cycle_invariant(tri, {0}, 100));

  // Two triangles joined at vertex 2: a side plus the cut vertex.
  const Graph bow = make({0, 1, 2, 3, 4}, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  for (const auto& s : sides(bow, {2})) {
    VertexSet y = s.vertices;
    y.push_back(2);
    std::sort(y.begin(), y.end());
    CHECK(is_cycle_invariant(bow, y, 100));
  }
}

TEST_CASE("block-based cycle invariance matches the literal check") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const Graph g = oracle::random_graph(rng, 8, 5 + static_cast<int>(rng() % 7));
    VertexSet y;
    for (VertexId v : g.vertices()) {
      if (rng() % 3) y.push_back(v);
    }
    const bool literal = oracle::brute_cycle_invariant(g, y);
    CHECK(is_cycle_invariant(g, y, 1'000'000) == literal);
    CHECK(is_cycle_invariant_by_blocks(g, y) == literal);
  }
}

TEST_CASE("articulation points and blocks") {
  const Graph bow = make({0, 1, 2, 3, 4, 5}, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}, {4, 5}});
  CHECK(articulation_points(bow) == VertexSet{2, 4});
  const auto blocks = biconnected_blocks(bow);
  CHECK(blocks.size() == 3);
  std::size_t edges = 0;
  for (const auto& b : blocks) edges += b.edges.size();
  CHECK(edges == bow.num_edges());
}

TEST_CASE("induced and spanned subgraphs") {
  const Graph path = make({1, 2, 3}, {{1, 2}, {2, 3}});
  const Graph sub = induced_subgraph(path, {1, 2});
  CHECK(sub.vertices() == VertexSet{1, 2});
  CHECK(sub.edges() == EdgeSet{{1, 2}});
  CHECK(induced_subgraph(path, {}).num_vertices() == 0);
  const Graph bare = spanned_subgraph(path, {});
  CHECK(bare.num_vertices() == 3);
  CHECK(bare.num_edges() == 0);
  CHECK(code_of([&] { spanned_subgraph(path, {{1, 3}}); }) == ErrorCode::UnknownEdge);
}
