#include "wmsf/percolation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include <json.hpp>

#include "wmsf/error.hpp"
#include "wmsf/rng.hpp"
#include "wmsf/union_find.hpp"

namespace wmsf {

std::size_t PercolationConfig::open_count() const {
  return static_cast<std::size_t>(std::count(open.begin(), open.end(), 1));
}

Graph PercolationConfig::open_subgraph() const {
  return Graph::build(host->vertices(), open_edges(), host->meta());
}

std::uint64_t open_threshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::BadProbability, "p must lie in [0, 1]");
  if (p >= 1.0) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::ldexp(p, 64));
}

PercolationConfig bernoulli_sample(std::shared_ptr<const Graph> host, double p, std::uint64_t seed) {
  const std::uint64_t threshold = open_threshold(p);
  PercolationConfig cfg;
  cfg.open.resize(host->num_edges());
  for (Index e = 0; e < host->num_edges(); ++e) {
    cfg.open[e] = p >= 1.0 || rng::draw(seed, rng::kEdgeOpen, e) < threshold;
  }
  cfg.host = std::move(host);
  cfg.p = p;
  cfg.seed = seed;
  return cfg;
}

LabelAssignment LabelAssignment::draw(const Graph& g, std::uint64_t seed) {
  LabelAssignment out;
  out.labels.resize(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) out.labels[e] = rng::draw(seed, rng::kLabel, e);
  return out;
}

namespace {

struct ForestRun {
  Graph sub;
  Potential potential;
  EdgeOrder order;
  ForestResult result;
};

ForestRun run_fwmsf(const PercolationConfig& cfg, const Potential& potential,
                    const LabelAssignment& labels, bool with_witnesses) {
  if (labels.labels.size() != cfg.host->num_edges()) {
    fail(ErrorCode::BadParams, "labels must cover every host edge");
  }
  ForestRun run;
  run.sub = cfg.open_subgraph();
  run.potential = potential.restricted(*cfg.host, run.sub);
  run.order = EdgeOrder(run.sub, run.potential, labels.tiebreak().restricted(*cfg.host, run.sub));
  run.result = maximal_subforest(run.sub, run.order, {}, with_witnesses);
  return run;
}

bool is_unit(const Potential& p) {
  return std::all_of(p.values().begin(), p.values().end(), [](const Rational& r) { return r == 1; });
}

}  // namespace

ForestResult fwmsf(const PercolationConfig& cfg, const Potential& potential,
                   const LabelAssignment& labels, bool with_witnesses) {
  return run_fwmsf(cfg, potential, labels, with_witnesses).result;
}

ClusterReport cluster_report(const PercolationConfig& cfg, const Potential& potential,
                             const ProxyParams& params) {
  params.validate();
  const Graph sub = cfg.open_subgraph();
  const Potential p = potential.restricted(*cfg.host, sub);
  const auto labels = component_labels(sub);
  const auto profiles = vertex_side_profiles(sub, p, params);

  ClusterReport report;
  report.clusters.resize(labels.count);
  std::vector<Rational> top(labels.count, Rational(0));
  for (Index v = 0; v < sub.num_vertices(); ++v) {
    auto& c = report.clusters[labels.label[v]];
    c.vertices.push_back(sub.id(v));
    c.max_nonvanishing_sides = std::max(c.max_nonvanishing_sides, profiles[v].nonvanishing);
    top[labels.label[v]] = std::max(top[labels.label[v]], p.value(v));
  }
  std::vector<char> heavy_boundary(labels.count, 0);
  for (Index v = 0; v < sub.num_vertices(); ++v) {
    const Index c = labels.label[v];
    const Rational rel = p.value(v) / top[c];
    report.clusters[c].mass += rel;
    if (sub.is_boundary(v)) {
      report.clusters[c].touches_boundary = true;
      if (rel >= params.nonvanish_delta) heavy_boundary[c] = 1;
    }
  }
  for (Index c = 0; c < labels.count; ++c) {
    auto& cl = report.clusters[c];
    cl.heavy = cl.mass >= params.heavy_tau || heavy_boundary[c];
    (cl.heavy ? report.heavy : report.light) += 1;
    report.largest = std::max(report.largest, cl.vertices.size());
  }
  return report;
}

namespace {

PercolationConfig edit(const PercolationConfig& cfg, const Edge& e, bool open, const char* what) {
  const Index i = cfg.host->edge_index(Edge::canonical(e.u, e.v));
  PercolationConfig out = cfg;
  out.open[i] = open ? 1 : 0;
  out.provenance.push_back(std::string(what) + " (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ")");
  return out;
}

}  // namespace

PercolationConfig insert_edge(const PercolationConfig& cfg, const Edge& e) {
  return edit(cfg, e, true, "insert");
}

PercolationConfig delete_edge(const PercolationConfig& cfg, const Edge& e) {
  return edit(cfg, e, false, "delete");
}

bool equivariance_check(const Graph& g, const Potential& potential,
                        const std::map<VertexId, VertexId>& sigma, const LabelAssignment& labels,
                        const std::vector<char>& open) {
  const Index n = static_cast<Index>(g.num_vertices());
  std::vector<Index> image(n);
  std::vector<char> hit(n, 0);
  for (Index v = 0; v < n; ++v) {
    auto it = sigma.find(g.id(v));
    if (it == sigma.end()) fail(ErrorCode::NotAutomorphism, "sigma misses vertex " + std::to_string(g.id(v)));
    const auto w = g.find(it->second);
    if (!w || hit[*w]) fail(ErrorCode::NotAutomorphism, "sigma is not a bijection");
    hit[*w] = 1;
    image[v] = *w;
  }
  std::vector<Index> edge_image(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto f = g.find_edge(g.id(image[g.edge_source(e)]), g.id(image[g.edge_target(e)]));
    if (!f) fail(ErrorCode::NotAutomorphism, "sigma does not preserve adjacency");
    edge_image[e] = *f;
  }
  // w(sigma x) / w(x) must be constant on each component.
  std::vector<std::optional<Rational>> factor(n);
  for (Index v = 0; v < n; ++v) {
    const Rational r = potential.value(image[v]) / potential.value(v);
    auto& f = factor[potential.component(v)];
    if (!f) f = r;
    else if (*f != r) fail(ErrorCode::NotWeightPreserving, "sigma does not preserve the weights");
  }

  auto host = std::make_shared<const Graph>(g);
  PercolationConfig cfg;
  cfg.host = host;
  cfg.open = open.empty() ? std::vector<char>(g.num_edges(), 1) : open;
  if (cfg.open.size() != g.num_edges()) fail(ErrorCode::BadParams, "open mask does not match graph");
  PercolationConfig pushed = cfg;
  LabelAssignment pulled;
  pulled.labels.resize(g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e) {
    pushed.open[edge_image[e]] = cfg.open[e];
    pulled.labels[edge_image[e]] = labels.labels.at(e);
  }
  const auto base = fwmsf(cfg, potential, labels);
  const auto moved = fwmsf(pushed, potential, pulled);
  EdgeSet expected;
  for (const auto& e : base.kept) {
    expected.push_back(Edge::canonical(sigma.at(e.u), sigma.at(e.v)));
  }
  std::sort(expected.begin(), expected.end());
  return expected == moved.kept;
}

std::string RunRecord::to_json_line() const {
  nlohmann::json j;
  j["p"] = p;
  j["trial"] = trial;
  j["seed"] = seed;
  j["open_edges"] = open_edges;
  j["monotone"] = monotone;
  j["clusters"] = {{"count", clusters},
                   {"heavy", heavy_clusters},
                   {"largest", largest_cluster},
                   {"largest_fraction", largest_fraction},
                   {"max_nonvanishing_sides", max_nonvanishing_sides},
                   {"with_3plus_nonvanishing", clusters_3plus}};
  j["forest"] = {{"kept", kept},
                 {"deleted", deleted},
                 {"trees", trees},
                 {"trees_3plus_directions", trees_3plus},
                 {"witness_violations", witness_violations},
                 {"heavy_split_checked", heavy_split_checked},
                 {"heavy_split_violations", heavy_split_violations},
                 {"label_collisions", label_collisions}};
  j["forest"]["fmsf_equal"] = fmsf_equal < 0 ? nlohmann::json(nullptr) : nlohmann::json(fmsf_equal == 1);
  j["visibility"] = {{"samples", visibility_count},
                     {"heavy", visibility_heavy},
                     {"mass_min", visibility_mass_min},
                     {"mass_median", visibility_mass_median},
                     {"mass_max", visibility_mass_max}};
  return j.dump();
}

namespace {

struct TrialOutput {
  RunRecord record;
  std::vector<char> open;
};

TrialOutput run_trial(const std::shared_ptr<const Graph>& host, const Potential& potential,
                      const SweepParams& params, double p, int trial) {
  TrialOutput out;
  RunRecord& rec = out.record;
  rec.p = p;
  rec.trial = trial;
  rec.seed = rng::draw(params.seed, rng::kTrial, static_cast<std::uint64_t>(trial));

  const auto cfg = bernoulli_sample(host, p, rec.seed);
  const auto labels = LabelAssignment::draw(*host, rec.seed);
  rec.open_edges = cfg.open_count();
  rec.label_collisions = labels.collisions();

  const auto report = cluster_report(cfg, potential, params.proxy);
  rec.clusters = report.clusters.size();
  rec.heavy_clusters = report.heavy;
  rec.largest_cluster = report.largest;
  rec.largest_fraction =
      host->num_vertices() ? static_cast<double>(report.largest) / host->num_vertices() : 0.0;
  for (const auto& c : report.clusters) {
    rec.max_nonvanishing_sides = std::max(rec.max_nonvanishing_sides, c.max_nonvanishing_sides);
    rec.clusters_3plus += c.max_nonvanishing_sides >= 3;
  }

  const auto run = run_fwmsf(cfg, potential, labels, false);
  const auto& forest = run.result;
  rec.kept = forest.kept.size();
  rec.deleted = forest.deleted.size();
  rec.witness_violations = check_cut_witnesses(run.sub, forest, run.order).violations.size();

  const Graph tree_graph = Graph::build(run.sub.vertices(), forest.kept, run.sub.meta());
  const Potential tree_potential = potential.restricted(*host, tree_graph);
  const auto trees = component_labels(tree_graph);
  const auto directions = vertex_side_profiles(tree_graph, tree_potential, params.proxy);
  rec.trees = trees.count;
  std::vector<char> tree_3plus(trees.count, 0);
  for (Index v = 0; v < tree_graph.num_vertices(); ++v) {
    if (directions[v].nonvanishing >= 3) tree_3plus[trees.label[v]] = 1;
  }
  rec.trees_3plus = static_cast<std::size_t>(std::count(tree_3plus.begin(), tree_3plus.end(), 1));

  // Trees of a split heavy cluster must reach at least the weight of their
  // least deleted boundary edge.
  const auto clusters = component_labels(run.sub);
  std::vector<char> heavy_cluster(clusters.count, 0);
  for (Index c = 0; c < report.clusters.size(); ++c) {
    if (report.clusters[c].heavy) heavy_cluster[c] = 1;
  }
  std::vector<Rational> tree_top(trees.count, Rational(0));
  for (Index v = 0; v < tree_graph.num_vertices(); ++v) {
    tree_top[trees.label[v]] = std::max(tree_top[trees.label[v]], run.potential.value(v));
  }
  const Index none = static_cast<Index>(-1);
  std::vector<Index> least_deleted(trees.count, none);
  for (const auto& edge : forest.deleted) {
    const Index e = run.sub.edge_index(edge);
    const Index a = trees.label[run.sub.edge_source(e)];
    const Index b = trees.label[run.sub.edge_target(e)];
    if (a == b) continue;
    for (Index t : {a, b}) {
      if (least_deleted[t] == none || run.order.less(e, least_deleted[t])) least_deleted[t] = e;
    }
  }
  for (Index t = 0; t < trees.count; ++t) {
    if (least_deleted[t] == none) continue;
    // Trees never straddle clusters, so any member names the cluster.
    Index member = 0;
    while (trees.label[member] != t) ++member;
    if (!heavy_cluster[clusters.label[member]]) continue;
    ++rec.heavy_split_checked;
    if (tree_top[t] < run.order.weight(least_deleted[t])) ++rec.heavy_split_violations;
  }

  if (is_unit(potential)) {
    const auto sub_labels = [&] {
      std::vector<std::uint64_t> l(run.sub.num_edges());
      for (Index e = 0; e < run.sub.num_edges(); ++e) {
        l[e] = labels.labels[host->edge_index(run.sub.edge(e))];
      }
      return l;
    }();
    if (rec.label_collisions == 0) {
      rec.fmsf_equal = fmsf(run.sub, sub_labels) == forest.kept ? 1 : 0;
    }
  }

  std::vector<double> masses;
  for (std::size_t i = 0; i < params.visibility_samples && run.sub.num_vertices() > 0; ++i) {
    const Index v = static_cast<Index>(rng::draw(rec.seed, rng::kBasepoint, i) % run.sub.num_vertices());
    const auto vis = visibility_mass(run.sub, run.potential, run.sub.id(v), params.proxy);
    masses.push_back(to_double(vis.mass));
    rec.visibility_heavy += vis.heavy;
  }
  rec.visibility_count = masses.size();
  if (!masses.empty()) {
    std::sort(masses.begin(), masses.end());
    rec.visibility_mass_min = masses.front();
    rec.visibility_mass_median = masses[masses.size() / 2];
    rec.visibility_mass_max = masses.back();
  }
  out.open = cfg.open;
  return out;
}

}  // namespace

std::vector<RunRecord> sweep(const Graph& g, const Potential& potential, const SweepParams& params) {
  if (params.trials < 1) fail(ErrorCode::BadParams, "trials must be at least 1");
  if (params.p_grid.empty()) fail(ErrorCode::BadParams, "empty p grid");
  for (double p : params.p_grid) open_threshold(p);
  params.proxy.validate();
  if (potential.size() != g.num_vertices()) fail(ErrorCode::BadParams, "potential does not match graph");

  auto host = std::make_shared<const Graph>(g);
  const std::size_t grid = params.p_grid.size();
  const std::size_t tasks = grid * static_cast<std::size_t>(params.trials);
  std::vector<TrialOutput> outputs(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed) {
      const std::size_t t = next++;
      if (t >= tasks) break;
      try {
        outputs[t] = run_trial(host, potential, params, params.p_grid[t / params.trials],
                               static_cast<int>(t % params.trials));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(params.workers, static_cast<unsigned>(tasks)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  // Coupling check against the next smaller p of the grid.
  for (std::size_t i = 0; i < grid; ++i) {
    std::optional<std::size_t> below;
    for (std::size_t j = 0; j < grid; ++j) {
      if (params.p_grid[j] < params.p_grid[i] &&
          (!below || params.p_grid[j] > params.p_grid[*below])) {
        below = j;
      }
    }
    if (!below) continue;
    for (int trial = 0; trial < params.trials; ++trial) {
      auto& hi = outputs[i * params.trials + trial];
      const auto& lo = outputs[*below * params.trials + trial];
      for (std::size_t e = 0; e < hi.open.size(); ++e) {
        if (lo.open[e] && !hi.open[e]) {
          hi.record.monotone = false;
          break;
        }
      }
    }
  }
  std::vector<RunRecord> records;
  records.reserve(tasks);
  for (auto& o : outputs) records.push_back(std::move(o.record));
  return records;
}

std::string summary_csv(const std::vector<RunRecord>& records) {
  struct Stat {
    const char* name;
    double (*get)(const RunRecord&);
  };
  static const Stat stats[] = {
      {"open_edges", [](const RunRecord& r) { return static_cast<double>(r.open_edges); }},
      {"clusters", [](const RunRecord& r) { return static_cast<double>(r.clusters); }},
      {"heavy_clusters", [](const RunRecord& r) { return static_cast<double>(r.heavy_clusters); }},
      {"largest_fraction", [](const RunRecord& r) { return r.largest_fraction; }},
      {"max_nonvanishing_sides", [](const RunRecord& r) { return static_cast<double>(r.max_nonvanishing_sides); }},
      {"clusters_3plus", [](const RunRecord& r) { return static_cast<double>(r.clusters_3plus); }},
      {"trees_3plus", [](const RunRecord& r) { return static_cast<double>(r.trees_3plus); }},
      {"single_heavy_cluster", [](const RunRecord& r) { return r.heavy_clusters == 1 ? 1.0 : 0.0; }},
      {"witness_violations", [](const RunRecord& r) { return static_cast<double>(r.witness_violations); }},
      {"visibility_mass_median", [](const RunRecord& r) { return r.visibility_mass_median; }},
  };
  std::string out = "p,statistic,mean,min,max,trials\n";
  std::vector<double> ps;
  for (const auto& r : records) {
    if (std::find(ps.begin(), ps.end(), r.p) == ps.end()) ps.push_back(r.p);
  }
  char buf[256];
  for (double p : ps) {
    for (const auto& s : stats) {
      double sum = 0.0, lo = 0.0, hi = 0.0;
      std::size_t n = 0;
      for (const auto& r : records) {
        if (r.p != p) continue;
        const double x = s.get(r);
        lo = n ? std::min(lo, x) : x;
        hi = n ? std::max(hi, x) : x;
        sum += x;
        ++n;
      }
      std::snprintf(buf, sizeof buf, "%.6g,%s,%.6f,%.6f,%.6f,%zu\n", p, s.name, sum / n, lo, hi, n);
      out += buf;
    }
  }
  return out;
}

}  // namespace wmsf
