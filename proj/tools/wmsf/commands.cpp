#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <wmsf/ends.hpp>
#include <wmsf/error.hpp>
#include <wmsf/forest.hpp>
#include <wmsf/generators.hpp>
#include <wmsf/json_io.hpp>
#include <wmsf/percolation.hpp>

#include "manifest.hpp"

namespace wmsf::cli {

namespace {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kInternal = 3;

void emit_error(std::string_view code, const std::string& message) {
  const Json j = {{"error", {{"code", std::string(code)}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
}

Graph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

Potential load_potential(const Graph& g, const std::string& path) {
  if (path.empty()) return Potential::constant(g);
  return potential_from_json(g, read_json_file(path));
}

std::string sibling(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix;
}

struct OrderFlags {
  std::string order_file;
  std::optional<std::uint64_t> label_seed;

  void attach(CLI::App* app) {
    auto* o = app->add_option("--order", order_file, "edge ranks JSON {\"ranks\":[[u,v,r],..]}");
    auto* s = app->add_option("--label-seed", label_seed, "draw i.i.d. 64-bit edge labels from this seed");
    o->excludes(s);
  }

  Tiebreak tiebreak(const Graph& g) const {
    if (!order_file.empty()) return Tiebreak::from_ranks(g, ranks_from_json(read_json_file(order_file)));
    if (label_seed) return LabelAssignment::draw(g, *label_seed).tiebreak();
    return Tiebreak::canonical(g);
  }
};

struct ProxyFlags {
  std::string delta = "1";
  std::string tau = "64";
  std::size_t s_max = 3;
  bool no_infinite_proxy = false;

  void attach(CLI::App* app) {
    app->add_option("--delta", delta, "nonvanishing threshold relative to the anchor")->capture_default_str();
    app->add_option("--tau", tau, "heavy mass threshold")->capture_default_str();
    app->add_option("--s-max", s_max, "largest candidate furcation set")->capture_default_str();
    app->add_flag("--no-infinite-proxy", no_infinite_proxy, "count boundary sides below delta as finite");
  }

  ProxyParams params() const {
    ProxyParams p;
    p.nonvanish_delta = parse_rational(delta);
    p.heavy_tau = parse_rational(tau);
    p.s_max = s_max;
    p.infinite_proxy = !no_infinite_proxy;
    p.validate();
    return p;
  }

  static Json to_json(const ProxyParams& p) {
    return {{"nonvanish_delta", format_rational(p.nonvanish_delta)},
            {"heavy_tau", format_rational(p.heavy_tau)},
            {"s_max", p.s_max},
            {"infinite_proxy", p.infinite_proxy}};
  }
};

FamilySpec parse_factor(const std::string& text) {
  FamilySpec spec;
  const auto colon = text.find(':');
  spec.family = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) fail(ErrorCode::BadParams, "factor parameter '" + item + "' needs key=value");
    try {
      spec.params[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    } catch (const std::logic_error&) {
      fail(ErrorCode::BadParams, "factor parameter '" + item + "' is not an integer");
    }
  }
  return spec;
}

Json witness_to_json(const WitnessReport& w) {
  Json v = Json::array();
  for (std::size_t i = 0; i < w.violations.size(); ++i) {
    v.push_back({{"edge", {w.violations[i].u, w.violations[i].v}},
                 {"message", i < w.messages.size() ? w.messages[i] : ""}});
  }
  return {{"cycle_checked", w.cycle_checked}, {"cut_checked", w.cut_checked}, {"violations", std::move(v)}};
}

struct Context {
  std::vector<std::string> args;
};

// --- gen -------------------------------------------------------------------

struct GenCmd {
  std::string family;
  std::vector<std::string> factors;
  std::string out;
  std::string order_out;
  std::map<std::string, std::int64_t> values;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* app) {
    app->set_help_flag("--help", "print this help message and exit");
    app->add_option("--family", family, "gp, lattice_box, regular_tree, cycle, random_gnm, windmill, free_product")
        ->required();
    const std::vector<std::pair<std::string, std::string>> names = {
        {"k", "--k"},   {"up", "--up"},         {"down", "--down"},     {"w", "--w"},
        {"h", "--h"},   {"d", "--d"},           {"radius", "--radius"}, {"n", "--n"},
        {"m", "--m"},   {"seed", "--seed"},     {"blades", "--blades"}, {"max_word", "--max-word"}};
    for (const auto& [key, flag] : names) opts[key] = app->add_option(flag, values[key]);
    app->add_option("--factor", factors, "free_product factor, e.g. gp:k=2,up=1,down=1 (repeatable)");
    app->add_option("-o,--out", out, "graph JSON")->required();
    app->add_option("--order-out", order_out, "windmill edge ranks JSON");
  }

  int exec(const Context& ctx) {
    FamilySpec spec;
    spec.family = family;
    for (const auto& [key, opt] : opts) {
      if (opt->count() > 0) spec.params[key] = values[key];
    }
    for (const auto& f : factors) spec.factors.push_back(parse_factor(f));
    if (!order_out.empty() && family != "windmill") {
      fail(ErrorCode::BadParams, "--order-out is only defined for windmill");
    }
    const Graph g = generate(spec);
    write_atomic(out, dump_json(graph_to_json(g)));
    Manifest m{"gen", ctx.args, {}, {out}, std::nullopt};
    if (spec.params.count("seed")) m.seed = static_cast<std::uint64_t>(spec.params["seed"]);
    if (!order_out.empty()) {
      const Windmill wm = windmill(static_cast<int>(spec.params.at("blades")),
                                   static_cast<int>(spec.params.at("radius")));
      write_atomic(order_out, dump_json(ranks_to_json(wm.ranks)));
      m.outputs.push_back(order_out);
    }
    write_manifest(m);
    return kOk;
  }
};

// --- forest ----------------------------------------------------------------

struct ForestCmd {
  std::string graph, weights, fixed, out;
  OrderFlags order;
  bool oracle = false;
  bool check = false;

  void attach(CLI::App* app) {
    app->add_option("--graph", graph, "graph JSON")->required();
    app->add_option("--weights", weights, "weights JSON (default: constant)");
    order.attach(app);
    app->add_option("--fixed", fixed, "fixed acyclic edge set H");
    app->add_flag("--oracle", oracle, "use cycle enumeration instead of the greedy engine");
    app->add_flag("--check-witnesses", check, "add a cut-witness report");
    app->add_option("-o,--out", out, "forest JSON")->required();
  }

  int exec(const Context& ctx) {
    const Graph g = load_graph(graph);
    const Potential p = load_potential(g, weights);
    const EdgeOrder o(g, p, order.tiebreak(g));
    const EdgeSet h = fixed.empty() ? EdgeSet{} : edges_from_json(read_json_file(fixed));
    const ForestResult r = oracle ? maximal_subforest_oracle(g, o, h) : maximal_subforest(g, o, h);
    if (!is_acyclic(g, r.kept)) fail(ErrorCode::InvariantViolation, "kept edge set has a cycle");
    Json j = forest_to_json(r);
    bool clean = true;
    if (check) {
      const WitnessReport w = check_cut_witnesses(g, r, o);
      clean = w.clean();
      j["witness_report"] = witness_to_json(w);
    }
    write_atomic(out, dump_json(j));
    Manifest m{"forest", ctx.args, {graph}, {out}, order.label_seed};
    if (!weights.empty()) m.inputs.push_back(weights);
    if (!order.order_file.empty()) m.inputs.push_back(order.order_file);
    if (!fixed.empty()) m.inputs.push_back(fixed);
    write_manifest(m);
    if (!clean) {
      emit_error(to_string(ErrorCode::InvariantViolation), "cut-witness check reported violations");
      return kInternal;
    }
    return kOk;
  }
};

// --- collapse --------------------------------------------------------------

struct CollapseCmd {
  std::string graph, weights, fixed_q, out, family_out;
  OrderFlags order;
  ProxyFlags proxy;

  void attach(CLI::App* app) {
    app->add_option("--graph", graph, "graph JSON")->required();
    app->add_option("--weights", weights, "weights JSON (default: constant)");
    order.attach(app);
    proxy.attach(app);
    app->add_option("--fixed-q", fixed_q, "fixed edge set on the quotient graph");
    app->add_option("-o,--out", out, "lifted forest JSON")->required();
    app->add_option("--family-out", family_out, "family JSON (default: <out>.family.json)");
  }

  int exec(const Context& ctx) {
    const Graph g = load_graph(graph);
    const Potential p = load_potential(g, weights);
    const ProxyParams params = proxy.params();
    const EdgeSet hq = fixed_q.empty() ? EdgeSet{} : edges_from_json(read_json_file(fixed_q));
    const CollapseResult r = collapsed_maximal_subforest(g, p, order.tiebreak(g), params, hq);
    if (!is_acyclic(g, r.forest.kept)) fail(ErrorCode::InvariantViolation, "lifted forest has a cycle");
    if (family_out.empty()) family_out = sibling(out, ".family.json");

    Json fam = family_to_json(r.family);
    fam["proxy"] = ProxyFlags::to_json(params);
    Json blocks = Json::array();
    for (const auto& b : r.q.blocks) {
      if (b.size() > 1) blocks.push_back(b);
    }
    fam["quotient"] = {{"vertices", r.q.qgraph.num_vertices()},
                       {"edges", r.q.qgraph.num_edges()},
                       {"nontrivial_blocks", std::move(blocks)},
                       {"forest", forest_to_json(r.quotient_forest)}};
    write_atomic(out, dump_json(forest_to_json(r.forest)));
    write_atomic(family_out, dump_json(fam));
    Manifest m{"collapse", ctx.args, {graph}, {out, family_out}, order.label_seed};
    if (!weights.empty()) m.inputs.push_back(weights);
    if (!order.order_file.empty()) m.inputs.push_back(order.order_file);
    if (!fixed_q.empty()) m.inputs.push_back(fixed_q);
    write_manifest(m);
    return kOk;
  }
};

// --- analyze ---------------------------------------------------------------

struct AnalyzeCmd {
  std::string graph, weights, out;
  ProxyFlags proxy;
  std::size_t samples = 16;

  void attach(CLI::App* app) {
    app->add_option("--graph", graph, "graph JSON")->required();
    app->add_option("--weights", weights, "weights JSON (default: constant)");
    proxy.attach(app);
    app->add_option("--visibility-samples", samples, "vertices sampled for visibility (0 = all)")
        ->capture_default_str();
    app->add_option("-o,--out", out, "report JSON")->required();
  }

  int exec(const Context& ctx) {
    const Graph g = load_graph(graph);
    const Potential p = load_potential(g, weights);
    const ProxyParams params = proxy.params();
    const auto comps = components(g);

    const std::vector<std::pair<std::string, std::pair<std::size_t, bool>>> kinds = {
        {"w_trifurcations", {3, true}},
        {"w_bifurcations", {2, true}},
        {"trifurcations", {3, false}},
        {"bifurcations", {2, false}}};
    Json furc = Json::object();
    for (const auto& [name, spec] : kinds) {
      const VertexSet found = find_furcation_vertices(g, p, spec.first, params, spec.second);
      Json per = Json::array();
      for (const auto& c : comps) {
        std::size_t n = 0;
        for (VertexId v : c) n += std::binary_search(found.begin(), found.end(), v) ? 1 : 0;
        per.push_back(n);
      }
      furc[name] = {{"total", found.size()}, {"per_component", std::move(per)}};
    }

    const FurcationFamily family = maximal_disjoint_furcations(g, p, params);
    const QuotientGraph q = quotient(g, p, family.sets());
    std::size_t largest = 1;
    std::size_t nontrivial = 0;
    for (const auto& b : q.blocks) {
      largest = std::max(largest, b.size());
      nontrivial += b.size() > 1 ? 1 : 0;
    }

    std::vector<Index> picks;
    const std::size_t n = g.num_vertices();
    if (samples == 0 || samples >= n) {
      for (Index v = 0; v < n; ++v) picks.push_back(v);
    } else {
      for (std::size_t i = 0; i < samples; ++i) picks.push_back(static_cast<Index>(i * n / samples));
    }
    std::vector<Rational> masses;
    std::size_t heavy = 0, touching = 0;
    for (Index v : picks) {
      const Visibility vis = visibility_mass(g, p, g.id(v), params);
      masses.push_back(vis.mass);
      heavy += vis.heavy ? 1 : 0;
      touching += vis.touches_boundary ? 1 : 0;
    }
    std::sort(masses.begin(), masses.end());
    Json visibility = {{"samples", picks.size()}, {"heavy", heavy}, {"touching_boundary", touching}};
    if (!masses.empty()) {
      visibility["mass_min"] = format_rational(masses.front());
      visibility["mass_median"] = format_rational(masses[(masses.size() - 1) / 2]);
      visibility["mass_max"] = format_rational(masses.back());
    }

    const Json report = {
        {"graph", {{"vertices", g.num_vertices()}, {"edges", g.num_edges()}, {"components", comps.size()}}},
        {"proxy", ProxyFlags::to_json(params)},
        {"furcation_vertices", std::move(furc)},
        {"family", family_to_json(family)},
        {"quotient",
         {{"vertices", q.qgraph.num_vertices()},
          {"edges", q.qgraph.num_edges()},
          {"nontrivial_blocks", nontrivial},
          {"largest_block", largest}}},
        {"visibility", std::move(visibility)}};
    write_atomic(out, dump_json(report));
    Manifest m{"analyze", ctx.args, {graph}, {out}, std::nullopt};
    if (!weights.empty()) m.inputs.push_back(weights);
    write_manifest(m);
    return kOk;
  }
};

// --- percolate -------------------------------------------------------------

unsigned env_workers() {
  if (const char* env = std::getenv("WMSF_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return static_cast<unsigned>(w);
    } catch (const std::logic_error&) {
    }
    fail(ErrorCode::BadParams, "WMSF_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct PercolateCmd {
  std::string graph, weights, out, summary;
  std::vector<double> grid;
  int trials = 1;
  std::uint64_t seed = 0;
  std::size_t samples = 8;
  ProxyFlags proxy;

  void attach(CLI::App* app) {
    app->add_option("--graph", graph, "graph JSON")->required();
    app->add_option("--weights", weights, "weights JSON (default: constant)");
    app->add_option("--p-grid", grid, "comma-separated edge probabilities")->required()->delimiter(',');
    app->add_option("--trials", trials, "trials per p")->capture_default_str();
    app->add_option("--seed", seed, "master seed")->capture_default_str();
    app->add_option("--visibility-samples", samples, "vertices sampled per trial")->capture_default_str();
    proxy.attach(app);
    app->add_option("-o,--out", out, "records JSON lines")->required();
    app->add_option("--summary", summary, "summary CSV (default: <out>.summary.csv)");
  }

  int exec(const Context& ctx) {
    const Graph g = load_graph(graph);
    const Potential p = load_potential(g, weights);
    if (trials < 1) fail(ErrorCode::BadParams, "--trials must be positive");
    SweepParams sp;
    sp.p_grid = grid;
    sp.trials = trials;
    sp.seed = seed;
    sp.proxy = proxy.params();
    sp.workers = env_workers();
    sp.visibility_samples = samples;
    const std::vector<RunRecord> records = sweep(g, p, sp);

    std::string lines;
    bool clean = true;
    for (const auto& r : records) {
      lines += r.to_json_line();
      lines += '\n';
      if (!r.monotone || r.witness_violations > 0 || r.heavy_split_violations > 0 || r.fmsf_equal == 0) {
        clean = false;
      }
    }
    if (summary.empty()) summary = sibling(out, ".summary.csv");
    write_atomic(out, lines);
    write_atomic(summary, summary_csv(records));
    Manifest m{"percolate", ctx.args, {graph}, {out, summary}, seed};
    if (!weights.empty()) m.inputs.push_back(weights);
    write_manifest(m);
    if (!clean) {
      emit_error(to_string(ErrorCode::InvariantViolation), "a sweep self-check failed; see the records");
      return kInternal;
    }
    return kOk;
  }
};

// --- rerun -----------------------------------------------------------------

struct RerunCmd {
  std::string manifest;
  bool verify = false;

  void attach(CLI::App* app) {
    app->add_option("manifest", manifest, "manifest JSON written by an earlier run")->required();
    app->add_flag("--verify", verify, "fail unless every output hashes as recorded");
  }

  int exec() {
    const Json m = read_json_file(manifest);
    if (!m.contains("args") || !m["args"].is_array()) fail(ErrorCode::ParseError, "manifest has no args");
    const auto args = m["args"].get<std::vector<std::string>>();
    if (args.empty() || args.front() == "rerun") fail(ErrorCode::ParseError, "manifest args are not replayable");
    const int code = run(args);
    if (code != kOk || !verify) return code;
    std::vector<std::string> mismatched;
    const Json recorded = m.value("outputs", Json::object());
    for (const auto& [path, hash] : recorded.items()) {
      if (hash_file(path) != hash.get<std::string>()) mismatched.push_back(path);
    }
    if (!mismatched.empty()) {
      std::string msg = "outputs differ from the manifest:";
      for (const auto& p : mismatched) msg += " " + p;
      emit_error(to_string(ErrorCode::InvariantViolation), msg);
      return kInternal;
    }
    return kOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Weighted maximal spanning forests on finite graph truncations", "wmsf"};
  app.set_version_flag("--version", WMSF_VERSION);
  app.require_subcommand(1);

  GenCmd gen;
  ForestCmd forest;
  CollapseCmd collapse;
  AnalyzeCmd analyze;
  PercolateCmd percolate;
  RerunCmd rerun;
  auto* gen_app = app.add_subcommand("gen", "generate a graph family");
  auto* forest_app = app.add_subcommand("forest", "maximal subforest of a weighted graph");
  auto* collapse_app = app.add_subcommand("collapse", "maximal subforest through a furcation quotient");
  auto* analyze_app = app.add_subcommand("analyze", "furcation, quotient and visibility report");
  auto* percolate_app = app.add_subcommand("percolate", "Bernoulli percolation sweep");
  auto* rerun_app = app.add_subcommand("rerun", "replay a command from its manifest");
  gen.attach(gen_app);
  forest.attach(forest_app);
  collapse.attach(collapse_app);
  analyze.attach(analyze_app);
  percolate.attach(percolate_app);
  rerun.attach(rerun_app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit_error(to_string(ErrorCode::BadParams), e.what());
    return kInvalid;
  }

  const Context ctx{args};
  try {
    if (*gen_app) return gen.exec(ctx);
    if (*forest_app) return forest.exec(ctx);
    if (*collapse_app) return collapse.exec(ctx);
    if (*analyze_app) return analyze.exec(ctx);
    if (*percolate_app) return percolate.exec(ctx);
    return rerun.exec();
  } catch (const Error& e) {
    emit_error(to_string(e.code()), e.what());
    return e.is_validation_error() ? kInvalid : kInternal;
  } catch (const Json::exception& e) {
    emit_error(to_string(ErrorCode::ParseError), e.what());
    return kInvalid;
  } catch (const std::exception& e) {
    emit_error("Internal", e.what());
    return kInternal;
  }
}

}  // namespace wmsf::cli
