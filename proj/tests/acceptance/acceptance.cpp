// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference answers come from the slow oracles in tests/support.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <wmsf/ends.hpp>
#include <wmsf/error.hpp>
#include <wmsf/forest.hpp>
#include <wmsf/generators.hpp>
#include <wmsf/json_io.hpp>
#include <wmsf/percolation.hpp>
#include <wmsf/weights.hpp>

#include "oracles.hpp"

using namespace wmsf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Produced {
  Graph g;
  EdgeOrder o;
  ForestResult r;
};

// Every forest from criteria 1-3, re-checked in criterion 4.
std::vector<Produced> produced;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

oracle::DirectOrder direct(const Graph& g, const Potential& p, const Tiebreak& t) {
  return {&g, p.values(), t.keys()};
}

EdgeSet kept_from_deleted(const Graph& g, const EdgeSet& deleted) {
  EdgeSet out;
  for (const auto& e : g.edges()) {
    if (!std::binary_search(deleted.begin(), deleted.end(), e)) out.push_back(e);
  }
  return out;
}

bool acyclic_by_hand(const Graph& g, const EdgeSet& edges) {
  std::vector<Index> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const auto& e : edges) {
    const Index a = find(g.index_of(e.u)), b = find(g.index_of(e.v));
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(101);
  std::size_t graphs = 0, failures = 0;
  auto check = [&](const Graph& g) {
    const Potential p = Potential::from_values(g, oracle::random_values(rng, g, 4));
    const Tiebreak t = Tiebreak::from_keys(oracle::random_keys(rng, g));
    const EdgeOrder o(g, p, t);
    const ForestResult greedy = maximal_subforest(g, o);
    const ForestResult literal = maximal_subforest_oracle(g, o);
    const EdgeSet brute = oracle::cycle_deleted(direct(g, p, t), {});
    if (!greedy.same_edges(literal) || greedy.deleted != brute) ++failures;
    ++graphs;
    produced.push_back({g, o, greedy});
  };
  for (int n = 1; n <= 7; ++n) {
    for (const Graph& g : oracle::connected_graphs(n)) {
      for (int a = 0; a < 3; ++a) check(g);
    }
  }
  const std::size_t exhaustive = graphs;
  for (int i = 0; i < 500; ++i) {
    const int n = 4 + static_cast<int>(rng() % 9);
    const int cap = std::min(n * (n - 1) / 2, n + 10);
    const int m = static_cast<int>(rng() % (cap + 1));
    check(random_gnm(n, m, rng()));
  }
  return {failures == 0, fmt("%zu exhaustive + %zu random G(n,m), %zu mismatches", exhaustive,
                             graphs - exhaustive, failures)};
}

Outcome spanning_tree_identity() {
  std::mt19937_64 rng(102);
  std::size_t failures = 0;
  for (int i = 0; i < 500; ++i) {
    const Graph g = oracle::random_connected(rng, 2 + static_cast<int>(rng() % 13), static_cast<int>(rng() % 10));
    const Potential p = Potential::from_values(g, oracle::random_values(rng, g, 4));
    const Tiebreak t = Tiebreak::from_keys(oracle::random_keys(rng, g));
    const EdgeOrder o(g, p, t);
    const ForestResult r = maximal_subforest(g, o);
    if (r.kept != oracle::prim_max_forest(direct(g, p, t))) ++failures;
    produced.push_back({g, o, r});
  }
  return {failures == 0, fmt("500 connected graphs, %zu mismatches", failures)};
}

Outcome fmsf_specialization() {
  std::mt19937_64 rng(103);
  std::size_t failures = 0;
  for (int i = 0; i < 200; ++i) {
    const auto host = std::make_shared<const Graph>(
        i % 2 ? lattice_box(3 + static_cast<int>(rng() % 4), 3 + static_cast<int>(rng() % 4))
              : oracle::random_graph(rng, 8 + static_cast<int>(rng() % 10), 10 + static_cast<int>(rng() % 20)));
    const double p = 0.3 + 0.7 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto cfg = bernoulli_sample(host, p, rng());
    const auto labels = LabelAssignment::draw(*host, rng());
    const ForestResult r = fwmsf(cfg, Potential::constant(*host), labels);
    const Graph sub = cfg.open_subgraph();
    std::vector<std::uint64_t> sub_labels;
    std::vector<std::uint64_t> reversed;
    for (const auto& e : sub.edges()) {
      sub_labels.push_back(labels.labels[host->edge_index(e)]);
      reversed.push_back(~sub_labels.back());
    }
    // Minimum label forest = maximum forest under reversed keys.
    const oracle::DirectOrder prim{&sub, std::vector<Rational>(sub.num_vertices(), Rational(1)), reversed};
    if (r.kept != fmsf(sub, sub_labels) || r.kept != oracle::prim_max_forest(prim)) ++failures;
    produced.push_back(
        {sub, EdgeOrder(sub, Potential::constant(sub), labels.tiebreak().restricted(*host, sub)), r});
  }
  return {failures == 0, fmt("200 configurations, %zu mismatches", failures)};
}

Outcome cut_witnesses() {
  std::size_t violations = 0, cycle_checked = 0, cut_checked = 0;
  for (const auto& pr : produced) {
    const WitnessReport w = check_cut_witnesses(pr.g, pr.r, pr.o);
    violations += w.violations.size();
    cycle_checked += w.cycle_checked;
    cut_checked += w.cut_checked;
  }
  const Graph fp = free_product({{"gp", {{"k", 2}, {"up", 1}, {"down", 2}}, {}},
                                 {"lattice_box", {{"w", 3}, {"h", 3}}, {}}},
                                2);
  SweepParams sp;
  sp.p_grid = {0.6};
  sp.trials = 20;
  sp.seed = 104;
  sp.workers = 4;
  const auto recs = sweep(fp, Potential::from_levels(fp, Rational(1, 2)), sp);
  std::size_t sweep_violations = 0, heavy_split = 0, with3 = 0;
  for (const auto& rec : recs) {
    sweep_violations += rec.witness_violations;
    heavy_split += rec.heavy_split_violations;
    with3 += rec.clusters_3plus > 0;
  }
  std::printf("  info: GP(2)*Z2 sweep, p=0.6: %zu/20 trials with a cluster of >= 3 nonvanishing sides\n", with3);
  return {violations == 0 && sweep_violations == 0 && heavy_split == 0,
          fmt("%zu forests (%zu cycle, %zu cut witnesses) + 20-trial sweep on %zu vertices, "
              "%zu + %zu violations, %zu heavy-split violations",
              produced.size(), cycle_checked, cut_checked, fp.num_vertices(), violations, sweep_violations,
              heavy_split)};
}

Outcome restriction() {
  std::mt19937_64 rng(105);
  std::size_t sampled = 0, failures = 0, attempts = 0;
  while (sampled < 200 && attempts < 100000) {
    ++attempts;
    const Graph g = oracle::random_connected(rng, 12, static_cast<int>(rng() % 8));
    const auto blocks = biconnected_blocks(g);
    std::set<VertexId> pick;
    for (const auto& b : blocks) {
      if (rng() % 2) pick.insert(b.vertices.begin(), b.vertices.end());
    }
    const VertexSet y(pick.begin(), pick.end());
    if (y.size() < 2 || y.size() == g.num_vertices()) continue;
    const Graph sub = induced_subgraph(g, y);
    if (components(sub).size() != 1 || !oracle::brute_cycle_invariant(g, y)) continue;
    ++sampled;
    const EdgeOrder o(g, Potential::from_values(g, oracle::random_values(rng, g, 3)),
                      Tiebreak::from_keys(oracle::random_keys(rng, g)));
    const ForestResult whole = maximal_subforest(g, o);
    EdgeSet then_restrict;
    for (const auto& e : whole.kept) {
      if (std::binary_search(y.begin(), y.end(), e.u) && std::binary_search(y.begin(), y.end(), e.v)) {
        then_restrict.push_back(e);
      }
    }
    const ForestResult first = maximal_subforest(sub, o.restricted(g, sub));
    bool ok = first.kept == then_restrict;
    try {
      ok = ok && restrict_forest(g, whole, o, y).kept == then_restrict;
    } catch (const Error&) {
      ok = false;
    }
    failures += !ok;
  }
  return {sampled == 200 && failures == 0, fmt("%zu cycle-invariant sets, %zu mismatches", sampled, failures)};
}

Outcome cocycle_exactness() {
  std::size_t bad = 0;
  auto level_cocycle = [](const Graph& g) {
    std::vector<Rational> forward;
    for (Index e = 0; e < g.num_edges(); ++e) {
      const std::int64_t du = *g.level(g.edge_source(e)), dv = *g.level(g.edge_target(e));
      forward.push_back(pow(Rational(1, 2), du - dv));
    }
    return Cocycle::exact(g, std::move(forward));
  };

  const Graph gp = gp_graph(2, 3, 5);
  const Cocycle c = level_cocycle(gp);
  const CocycleReport rep = validate_cocycle(gp, c);
  if (!rep.valid || rep.worst_log_defect != 0.0 || rep.cycles_checked == 0) ++bad;
  std::size_t parent_child = 0;
  for (const auto& e : gp.edges()) {
    const auto lu = *gp.level(gp.index_of(e.u)), lv = *gp.level(gp.index_of(e.v));
    if (lv - lu == 1 || lu - lv == 1) {
      const VertexId parent = lu < lv ? e.u : e.v, child = lu < lv ? e.v : e.u;
      ++parent_child;
      if (c.ratio(gp, child, parent) != Rational(1, 2)) ++bad;
    }
  }
  // Integrating the cocycle from the top ancestor recovers 2^-level up to scale.
  const Potential from_c = potential_from_cocycle(gp, c, VertexId{0});
  for (Index v = 0; v < gp.num_vertices(); ++v) bad += from_c.value(v) != pow(Rational(1, 2), *gp.level(v) + 3);

  const FreeProduct fp = free_product_detailed({{"gp", {{"k", 2}, {"up", 1}, {"down", 1}}, {}},
                                                {"lattice_box", {{"w", 3}, {"h", 3}}, {}}},
                                               3);
  const Graph& g = fp.graph;
  const Cocycle fc = level_cocycle(g);
  if (!validate_cocycle(g, fc).valid) ++bad;
  const std::set<Rational> allowed = {Rational(1, 4), Rational(1, 2), Rational(2), Rational(4)};
  std::size_t gp_dir = 0, z2 = 0;
  for (const auto& copy : fp.copies) {
    const Graph piece = induced_subgraph(g, copy.vertices);
    for (const auto& e : piece.edges()) {
      for (const auto& [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        const Rational r = fc.ratio(g, x, y);
        if (copy.factor == 0) {
          ++gp_dir;
          bad += !allowed.count(r);
        } else {
          ++z2;
          bad += r != 1;
        }
      }
    }
  }
  return {bad == 0 && parent_child > 0 && gp_dir > 0 && z2 > 0,
          fmt("%zu fundamental cycles, %zu parent-child edges, %zu GP and %zu Z2 directed edges, %zu defects",
              rep.cycles_checked, parent_child, gp_dir, z2, bad)};
}

Outcome equivariance() {
  std::mt19937_64 rng(107);
  std::size_t equal = 0, total = 0;
  const Graph c6 = cycle_graph(6);
  for (int i = 0; i < 25; ++i) {
    const VertexId shift = 1 + rng() % 5;
    std::map<VertexId, VertexId> rot;
    for (VertexId v = 0; v < 6; ++v) rot[v] = (v + shift) % 6;
    ++total;
    equal += equivariance_check(c6, Potential::constant(c6), rot, LabelAssignment::draw(c6, rng()));
  }
  const Windmill wm = windmill(3, 2);
  const auto sigma = windmill_rotation(3, 2);
  std::map<VertexId, VertexId> sigma2;
  for (const auto& [a, b] : sigma) sigma2[a] = sigma.at(b);
  const auto host = std::make_shared<const Graph>(wm.graph);
  for (int i = 0; i < 25; ++i) {
    const auto& s = i % 2 ? sigma2 : sigma;
    const auto open = bernoulli_sample(host, 0.5 + 0.5 * static_cast<double>(rng() % 100) / 100.0, rng()).open;
    ++total;
    equal += equivariance_check(wm.graph, Potential::constant(wm.graph), s, LabelAssignment::draw(wm.graph, rng()),
                                open);
  }
  return {equal == 50 && total == 50, fmt("%zu/%zu exact equalities", equal, total)};
}

Outcome crossing_monotonicity() {
  const auto start = std::chrono::steady_clock::now();
  const auto host = std::make_shared<const Graph>(lattice_box(50, 50));
  const Potential one = Potential::constant(*host);
  const double n = static_cast<double>(host->num_vertices());
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double lo = cluster_report(bernoulli_sample(host, 0.45, seed), one, {}).largest / n;
    const double hi = cluster_report(bernoulli_sample(host, 0.55, seed), one, {}).largest / n;
    wins += hi > lo;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {wins >= 95 && secs < 60.0, fmt("%d/100 paired seeds, %.1f s", wins, secs)};
}

Outcome visibility() {
  std::mt19937_64 rng(109);
  std::size_t failures = 0, queries = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const int m = static_cast<int>(rng() % (std::min(n * (n - 1) / 2, 2 * n) + 1));
    const Graph g = oracle::random_graph(rng, n, m);
    const auto values = oracle::random_values(rng, g, 3);
    const Potential p = Potential::from_values(g, values);
    const Cocycle c = cocycle_from_potential(g, p);
    for (VertexId x : g.vertices()) {
      const VertexSet brute = oracle::brute_visibility(g, values, x);
      ++queries;
      failures += visibility_set(g, p, x) != brute || visibility_set(g, c, x) != brute;
    }
  }
  std::size_t mass_bad = 0;
  for (int d = 1; d <= 8; ++d) {
    const Graph t = gp_graph(2, 1, d);
    const Potential p = Potential::from_levels(t, Rational(1, 2));
    const VertexId root = std::stoull(t.meta().annotations.at("root"));
    const Index r = t.index_of(root);
    Rational by_hand(0);
    for (VertexId y : visibility_set(t, p, root)) by_hand += p.relative(t.index_of(y), r);
    mass_bad += visibility_mass(t, p, root, {}).mass != d + 1 || by_hand != d + 1;
  }
  return {failures == 0 && mass_bad == 0,
          fmt("%zu queries on 200 graphs, %zu mismatches; GP mass d+1 for d=1..8, %zu mismatches", queries,
              failures, mass_bad)};
}

Outcome collapse_pipeline() {
  std::mt19937_64 rng(110);
  std::size_t failures = 0, cases = 0, nontrivial = 0;
  auto check = [&](const Graph& g, const Potential& p, const Tiebreak& tb) {
    ++cases;
    const CollapseResult r = collapsed_maximal_subforest(g, p, tb, {});
    nontrivial += !r.family.blocks.empty();
    const QuotientGraph& q = r.q;
    const EdgeOrder qo = quotient_order(g, q, tb);
    bool ok = collapse_edges(g, q, r.forest.kept) == r.quotient_forest.kept;
    ok = ok && r.quotient_forest.kept == maximal_subforest_oracle(q.qgraph, qo).kept;
    const oracle::DirectOrder qd{&q.qgraph, q.qpotential.values(), qo.tiebreak().keys()};
    ok = ok && r.quotient_forest.kept == kept_from_deleted(q.qgraph, oracle::cycle_deleted(qd, {}));
    EdgeSet lifted;
    for (const auto& e : r.quotient_forest.kept) lifted.push_back(q.lift.at(e));
    for (const auto& [root, tree] : q.inner_trees) lifted.insert(lifted.end(), tree.begin(), tree.end());
    std::sort(lifted.begin(), lifted.end());
    ok = ok && lifted == r.forest.kept && acyclic_by_hand(g, r.forest.kept);
    failures += !ok;
  };
  for (int i = 0; i < 100; ++i) {
    const Graph base = oracle::random_connected(rng, 12, static_cast<int>(rng() % 8));
    GraphMeta meta;
    for (VertexId v : base.vertices()) {
      if (base.degree(base.index_of(v)) <= 2) meta.boundary.insert(v);
    }
    const Graph g = Graph::build(base.vertices(), base.edges(), meta);
    check(g, Potential::from_values(g, oracle::random_values(rng, g, 3)),
          Tiebreak::from_keys(oracle::random_keys(rng, g)));
  }
  const Windmill wm = windmill(3, 3);
  check(wm.graph, Potential::constant(wm.graph), Tiebreak::from_ranks(wm.graph, wm.ranks));
  return {failures == 0, fmt("%zu instances (%zu with a nonempty family), %zu mismatches", cases, nontrivial,
                             failures)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_in(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" WMSF_CLI_PATH "' " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome determinism() {
  const fs::path work = fs::temp_directory_path() / fmt("wmsf_acceptance_%d", static_cast<int>(::getpid()));
  fs::remove_all(work);
  fs::copy(WMSF_FIXTURE_DIR, work, fs::copy_options::recursive);
  std::ifstream cmds(work / "commands.txt");
  std::size_t commands = 0, failures = 0, compared = 0;
  std::vector<fs::path> manifests;
  for (std::string line; std::getline(cmds, line);) {
    if (line.empty() || line[0] == '#') continue;
    ++commands;
    failures += run_in(work, line) != 0;
  }
  for (const auto& entry : fs::directory_iterator(work)) {
    if (entry.path().string().ends_with(".manifest.json")) manifests.push_back(entry.path());
  }
  std::sort(manifests.begin(), manifests.end());
  for (const auto& m : manifests) {
    const Json outputs = read_json_file(m.string()).at("outputs");
    std::map<std::string, std::string> before;
    for (const auto& [name, hash] : outputs.items()) {
      before[name] = slurp(work / name);
      fs::remove(work / name);
    }
    failures += run_in(work, "rerun '" + m.filename().string() + "'") != 0;
    for (const auto& [name, bytes] : before) {
      ++compared;
      failures += !fs::exists(work / name) || slurp(work / name) != bytes;
    }
    failures += run_in(work, "rerun --verify '" + m.filename().string() + "'") != 0;
  }
  fs::remove_all(work);
  return {failures == 0 && commands > 0 && manifests.size() == commands,
          fmt("%zu fixture commands, %zu manifests, %zu files compared, %zu failures", commands, manifests.size(),
              compared, failures)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"spanning-tree identity", spanning_tree_identity},
      {"fmsf specialization", fmsf_specialization},
      {"cut witnesses", cut_witnesses},
      {"restriction", restriction},
      {"cocycle exactness", cocycle_exactness},
      {"equivariance", equivariance},
      {"Z2 crossing monotonicity", crossing_monotonicity},
      {"visibility oracle", visibility},
      {"collapse pipeline", collapse_pipeline},
      {"determinism", determinism},
  };
  int failed = 0;
  int i = 0;
  for (const auto& c : criteria) {
    ++i;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
