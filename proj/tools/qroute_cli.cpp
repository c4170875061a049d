// Copyright 2026 The qroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qroute: validate graphs, run the algorithms, sweep them, enumerate
// lower-bound relations.
//
// Exit codes: 0 success, 1 invariant violation, 2 usage error, 3 budget refusal.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qroute/bfs.hpp"
#include "qroute/cluster.hpp"
#include "qroute/electric.hpp"
#include "qroute/errors.hpp"
#include "qroute/find_edge.hpp"
#include "qroute/generators.hpp"
#include "qroute/graph_io.hpp"
#include "qroute/lowerbound.hpp"
#include "qroute/mst.hpp"
#include "qroute/reference.hpp"
#include "qroute/report.hpp"
#include "qroute/sim.hpp"
#include "qroute/walk.hpp"

namespace fs = std::filesystem;
using namespace qroute;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + it + "'");
    out[it.substr(0, eq)] = it.substr(eq + 1);
  }
  return out;
}

std::uint64_t to_u64(const std::string& what, const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(what + ": not a non-negative integer: '" + s + "'");
}

std::vector<NodeId> parse_node_list(const std::string& what, const std::string& s) {
  std::vector<NodeId> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(static_cast<NodeId>(to_u64(what, item)));
  return out;
}

std::uint64_t param(const std::map<std::string, std::string>& p, const std::string& key, std::uint64_t fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : to_u64(key, it->second);
}

PortedGraph generate(const std::string& name, const std::map<std::string, std::string>& p) {
  auto need = [&](const std::string& key) {
    if (!p.count(key)) throw UsageError("generator " + name + " needs " + key + "=...");
    return to_u64(key, p.at(key));
  };
  if (name == "random") {
    const auto n = need("n");
    return gen_random_connected(n, param(p, "m", 2 * n), param(p, "weighted", 0) != 0, param(p, "seed", 0));
  }
  if (name == "star") return gen_star(need("n"));
  if (name == "path") return gen_path(need("n"));
  if (name == "cycle") return gen_cycle(need("n"));
  if (name == "complete") return gen_complete(need("n"));
  if (name == "grid") return gen_grid(need("rows"), need("cols"));
  if (name == "two_cliques") {
    const auto n = need("n");
    if (p.count("a")) {
      return gen_two_cliques_crossed(n, Bridge{static_cast<NodeId>(need("a")), static_cast<NodeId>(need("b")),
                                               static_cast<NodeId>(need("c")), static_cast<NodeId>(need("d"))});
    }
    return gen_two_cliques_crossed(n);
  }
  if (name == "bfs_hard") return gen_bfs_hard_instance(need("n"), need("d"), param(p, "seed", 0)).graph;
  throw UsageError("unknown generator '" + name + "' (random, star, path, cycle, complete, grid, two_cliques, bfs_hard)");
}

// Graph source options shared by most subcommands.
struct GraphSource {
  std::string file;
  std::vector<std::string> gen;

  void add(CLI::App* app) {
    app->add_option("--graph", file, "graph file: 'n m weighted' then 'u v [w]' per edge");
    app->add_option("--gen", gen, "generator name followed by key=value parameters")->expected(1, -1);
  }
  PortedGraph load(RunConfig& cfg) const {
    if (file.empty() == gen.empty()) throw UsageError("give exactly one of --graph or --gen");
    if (!file.empty()) {
      cfg.graph_file = file;
      return read_graph_file(file);
    }
    cfg.generator = gen.front();
    cfg.generator_params = parse_kv({gen.begin() + 1, gen.end()});
    return generate(cfg.generator, cfg.generator_params);
  }
};

// Algorithm options shared by run and sweep.
struct AlgoOptions {
  std::uint64_t seed = 0;
  double delta = 0.01;
  std::string fidelity = "auto";
  std::vector<std::string> constants;

  void add(CLI::App* app) {
    app->add_option("--seed", seed, "master seed");
    app->add_option("--delta", delta, "failure probability budget");
    app->add_option("--fidelity", fidelity, "exact, cost or auto (exact up to 64 nodes)")
        ->check(CLI::IsMember({"exact", "cost", "auto"}));
    app->add_option("--set", constants, "constant override name=value (repeatable)");
  }
  void apply(RunConfig& cfg, std::size_t n) const {
    cfg.seed = seed;
    cfg.delta = delta;
    cfg.fidelity = fidelity == "auto" ? (n <= 64 ? "exact" : "cost") : fidelity;
    for (const auto& [k, v] : parse_kv(constants))
      if (!set_constant(cfg.constants, k, v)) throw UsageError("unknown constant '" + k + "'");
  }
};

Fidelity fidelity_of(const RunConfig& cfg) {
  return cfg.fidelity == "exact" ? Fidelity::kExact : Fidelity::kCostModel;
}

MstOptions mst_options(const RunConfig& cfg) {
  MstOptions o;
  o.delta = cfg.delta;
  o.fidelity = fidelity_of(cfg);
  o.seed = cfg.seed;
  o.constants = cfg.constants;
  return o;
}

struct RunResult {
  Json output;
  std::vector<std::string> violations;
  const MessageLedger* ledger = nullptr;
  std::uint64_t rounds = 0;
};

// Keeps whichever run object the algorithm produced alive for the ledger pointer.
struct RunHolder {
  MstRun mst;
  LeaderRun le;
  BroadcastRun bc;
  BfsRun bfs;
  CoverRun cover;
  MessageLedger ledger;
};

std::size_t ceil_log2(std::size_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

RunResult run_algorithm(const std::string& algo, const PortedGraph& g, RunConfig& cfg, RunHolder& h) {
  RunResult r;
  const auto n = g.node_count();
  if (algo == "mst") {
    h.mst = mst(g, mst_options(cfg));
    r.output = mst_output_json(h.mst.output);
    r.output["stats"] = {{"phases", h.mst.stats.phases},
                         {"subphases", h.mst.stats.subphases},
                         {"merges", h.mst.stats.merges},
                         {"aborted_merges", h.mst.stats.aborted_merges},
                         {"walks", h.mst.stats.walks}};
    r.violations = check_mst_output(g, h.mst.output);
    if (h.mst.output.edges != reference::kruskal(g)) r.violations.push_back("edge set differs from Kruskal");
    r.ledger = &h.mst.ledger;
    r.rounds = h.mst.rounds;
  } else if (algo == "le") {
    h.le = leader_election(g, mst_options(cfg));
    r.output = {{"leaders", h.le.leaders}, {"elected", h.le.elected}};
    if (h.le.leaders.size() != reference::component_count(g))
      r.violations.push_back("leader count differs from the number of components");
    r.ledger = &h.le.ledger;
    r.rounds = h.le.rounds;
  } else if (algo == "broadcast") {
    const auto source = static_cast<NodeId>(param(cfg.params, "source", 0));
    h.bc = broadcast_via_st(g, source, 1, mst_options(cfg));
    Json got = Json::array();
    for (const auto& x : h.bc.received) got.push_back(x ? Json(*x) : Json(nullptr));
    r.output = {{"source", source}, {"received", got}, {"tree_messages", h.bc.tree_messages}};
    for (NodeId v = 0; v < n; ++v)
      if (!h.bc.received[v]) r.violations.push_back("node " + std::to_string(v) + " did not receive the item");
    if (h.bc.tree_messages + 1 != n) r.violations.push_back("tree broadcast did not use n - 1 messages");
    r.ledger = &h.bc.ledger;
    r.rounds = h.bc.rounds;
  } else if (algo == "bfs") {
    BfsOptions o;
    o.delta = cfg.delta;
    o.seed = cfg.seed;
    o.constants = cfg.constants;
    h.bfs = bfs(g, static_cast<NodeId>(param(cfg.params, "root", 0)), o);
    r.output = bfs_output_json(h.bfs.output);
    r.output["stats"] = {{"phases", h.bfs.stats.phases},
                         {"last_join_phase", h.bfs.stats.last_join_phase},
                         {"termination_checks", h.bfs.stats.termination_checks},
                         {"max_searches", h.bfs.stats.max_searches},
                         {"cover_trees", h.bfs.stats.cover_trees},
                         {"cover_messages", h.bfs.stats.cover_messages}};
    r.violations = check_bfs_output(g, h.bfs.output);
    r.ledger = &h.bfs.ledger;
    r.rounds = h.bfs.rounds;
  } else if (algo == "cover") {
    CoverOptions o;
    o.kappa = static_cast<std::uint32_t>(param(cfg.params, "kappa", std::max<std::size_t>(1, ceil_log2(n))));
    o.W = static_cast<std::uint32_t>(param(cfg.params, "W", 1));
    o.delta = cfg.delta;
    o.seed = cfg.seed;
    o.constants = cfg.constants;
    h.cover = sparse_cover(g, o);
    r.output = cover_output_json(h.cover.cover);
    const auto a = audit_cover(g, h.cover.cover, cfg.constants);
    r.output["audit"] = {{"max_depth", a.max_depth},
                         {"depth_bound", a.depth_bound},
                         {"max_membership", a.max_membership},
                         {"membership_bound", a.membership_bound},
                         {"uncovered", a.uncovered}};
    if (!a.depth_ok) r.violations.push_back("a tree is deeper than the depth bound");
    if (!a.sparsity_ok) r.violations.push_back("a node is in more trees than the sparsity bound");
    if (!a.neighbourhood_ok) r.violations.push_back("some neighbourhood lies in no tree");
    for (const auto& s : a.structure) r.violations.push_back(s);
    r.ledger = &h.cover.ledger;
    r.rounds = h.cover.rounds;
  } else if (algo == "findany" || algo == "findmin") {
    // every node its own cluster, so each reports an incident edge
    SimContext ctx(g, cfg.constants);
    ctx.set_phase(algo);
    Rng rng(cfg.seed);
    const auto cl = Clustering::singletons(g, draw_node_ids(n, rng));
    FindOptions fo;
    fo.fidelity = fidelity_of(cfg);
    fo.delta = cfg.delta / static_cast<double>(std::max<std::size_t>(n, 1));
    const auto found = algo == "findany" ? find_any(ctx, cl, n, fo, rng) : find_min(ctx, cl, n, fo, rng);
    const EdgeRanks ranks(g);
    Json rows = Json::array();
    for (std::uint32_t c = 0; c < cl.clusters.size(); ++c) {
      const NodeId v = cl.clusters[c].root;
      const auto& f = found[c];
      rows.push_back({{"node", v}, {"port", f ? Json(f->port) : Json(nullptr)}, {"edge", f ? Json(f->edge) : Json(nullptr)}});
      const auto& incident = ranks.at(v);
      if (incident.empty() != !f.has_value()) {
        r.violations.push_back("node " + std::to_string(v) + ": found edge disagrees with having neighbours");
      } else if (f && algo == "findmin" && ranks.of(f->edge) != incident.front().first) {
        r.violations.push_back("node " + std::to_string(v) + ": edge is not the lightest incident edge");
      }
    }
    r.output = {{"clusters", rows}};
    h.ledger = ctx.ledger();
    r.ledger = &h.ledger;
    r.rounds = ctx.now();
  } else if (algo == "walk-detect") {
    const auto root = static_cast<NodeId>(param(cfg.params, "root", 0));
    if (root >= n) throw UsageError("root out of range");
    ElectricNetwork net(n, root);
    for (const auto& e : g.edges()) net.add_edge(e.u, e.v, e.weight, e.pu, e.pv);
    const auto marked = cfg.params.count("marked") ? parse_node_list("marked", cfg.params.at("marked"))
                                                   : std::vector<NodeId>{};
    for (NodeId v : marked) {
      if (v >= n) throw UsageError("marked node out of range");
      net.mark(v);
    }
    const bool any = !net.marked_in_component().empty();
    const double R = cfg.params.count("R") ? std::stod(cfg.params.at("R"))
                                           : (any ? std::max(1.0, effective_resistance(net)) : 1.0);
    const double W = total_weight(net);
    Rng rng(cfg.seed);
    DetectOptions dopt;
    dopt.constants = cfg.constants;
    const auto d = detect_marked(net, R, W, cfg.delta, fidelity_of(cfg), rng, dopt);
    r.output = {{"verdict", to_string(d.verdict)}, {"R", R},         {"W", W},
                {"repetitions", d.repetitions},    {"walk_length", d.walk_length},
                {"ones", d.ones},                  {"steps", d.steps}};
    if (d.p_one) r.output["p_one"] = *d.p_one;
    const Verdict truth = any ? Verdict::kNonempty : Verdict::kEmpty;
    if (d.verdict != truth) r.violations.push_back(std::string("verdict ") + to_string(d.verdict) + " but marked set is " + (any ? "nonempty" : "empty"));
    r.rounds = d.steps;
  } else {
    throw UsageError("unknown algorithm '" + algo + "'");
  }
  return r;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

int cmd_validate(const GraphSource& src) {
  RunConfig cfg;
  cfg.subcommand = "validate";
  std::vector<std::string> problems;
  PortedGraph g;
  try {
    g = src.load(cfg);
    problems = validate(g);
  } catch (const InvalidInput& e) {
    problems.push_back(e.what());
  }
  Json j;
  j["violations"] = problems;
  if (problems.empty()) j["graph_hash"] = graph_hash(g);
  std::cout << j.dump(2) << '\n';
  return problems.empty() ? kOk : kViolation;
}

int cmd_effres(const GraphSource& src, NodeId root, const std::string& marked) {
  RunConfig cfg;
  const PortedGraph g = src.load(cfg);
  if (root >= g.node_count()) throw UsageError("root out of range");
  ElectricNetwork net(g.node_count(), root);
  for (const auto& e : g.edges()) net.add_edge(e.u, e.v, e.weight, e.pu, e.pv);
  for (NodeId v : parse_node_list("marked", marked)) {
    if (v >= g.node_count()) throw UsageError("marked node out of range");
    net.mark(v);
  }
  std::cout.precision(17);
  std::cout << effective_resistance(net) << '\n';
  return kOk;
}

int cmd_run(const std::string& algo, const GraphSource& src, const AlgoOptions& ao,
            const std::vector<std::string>& params, const std::string& out_dir, std::uint64_t rounds_cap) {
  RunConfig cfg;
  cfg.subcommand = "run";
  cfg.algorithm = algo;
  cfg.out_dir = out_dir;
  cfg.rounds_cap = rounds_cap;
  cfg.params = parse_kv(params);
  const PortedGraph g = src.load(cfg);
  ao.apply(cfg, g.node_count());
  RunHolder holder;
  const RunResult r = run_algorithm(algo, g, cfg, holder);

  const Json manifest = manifest_json(cfg, g);
  Json output = {{"manifest", manifest}, {"result", r.output}, {"violations", r.violations}};
  Json ledger = {{"manifest", manifest}};
  if (r.ledger) {
    LedgerMeta meta{algo + "-" + std::to_string(cfg.seed), cfg.seed, g.node_count(), g.edge_count(), algo, r.rounds};
    ledger["ledger"] = ledger_to_json(*r.ledger, meta);
  }
  if (out_dir.empty()) {
    std::cout << Json{{"output", output}, {"ledger", ledger}}.dump(2) << '\n';
  } else {
    fs::create_directories(out_dir);
    write_json_file((fs::path(out_dir) / "output.json").string(), output);
    write_json_file((fs::path(out_dir) / "ledger.json").string(), ledger);
    write_json_file((fs::path(out_dir) / "manifest.json").string(), manifest);
  }
  for (const auto& v : r.violations) std::cerr << "violation: " << v << '\n';
  if (rounds_cap > 0 && r.rounds > rounds_cap) {
    std::cerr << "budget: run took " << r.rounds << " rounds, cap is " << rounds_cap << '\n';
    return kBudget;
  }
  return r.violations.empty() ? kOk : kViolation;
}

// Edge count for one grid entry: an integer, "dense", "half" or "<k>n".
std::size_t resolve_m(const std::string& spec, std::size_t n) {
  const std::size_t full = n * (n - 1) / 2;
  std::size_t m = 0;
  if (spec == "dense") {
    m = full;
  } else if (spec == "half") {
    m = full / 2;
  } else if (!spec.empty() && spec.back() == 'n') {
    m = to_u64("m", spec.substr(0, spec.size() - 1)) * n;
  } else {
    m = to_u64("m", spec);
  }
  return std::clamp(m, n - 1, full);
}

int cmd_sweep(const std::string& algo, const AlgoOptions& ao, const std::vector<std::size_t>& ns,
              const std::vector<std::string>& ms, std::size_t reps, std::size_t jobs, const std::string& out_dir) {
  static const std::vector<std::string> known{"mst", "le", "broadcast", "bfs", "cover"};
  if (std::find(known.begin(), known.end(), algo) == known.end()) throw UsageError("sweep: unknown algorithm " + algo);
  struct Job {
    std::size_t id, n, m;
    std::uint64_t seed;
  };
  std::vector<Job> grid;
  for (std::size_t n : ns)
    for (const auto& mspec : ms)
      for (std::size_t r = 0; r < reps; ++r) {
        if (n < 2) throw UsageError("sweep: n must be at least 2");
        grid.push_back({grid.size(), n, resolve_m(mspec, n), derive_seed(ao.seed, grid.size())});
      }
  if (grid.empty()) throw UsageError("empty grid");

  struct Row {
    Job job;
    std::string fidelity;
    Counts counts;
    std::uint64_t rounds = 0;
    bool correct = false;
  };
  auto work = [&](const Job& jb) {
    RunConfig cfg;
    cfg.subcommand = "sweep";
    cfg.algorithm = algo;
    AlgoOptions local = ao;
    local.seed = jb.seed;
    local.apply(cfg, jb.n);
    cfg.constants.transcript_capacity = 1;  // totals only
    const PortedGraph g = gen_random_connected(jb.n, jb.m, algo == "mst", jb.seed);
    RunHolder h;
    const RunResult r = run_algorithm(algo, g, cfg, h);
    return Row{jb, cfg.fidelity, r.ledger->totals(), r.rounds, r.violations.empty()};
  };
  std::vector<Row> rows;
  jobs = std::max<std::size_t>(1, jobs);
  for (std::size_t start = 0; start < grid.size(); start += jobs) {
    std::vector<std::future<Row>> running;
    for (std::size_t i = start; i < std::min(grid.size(), start + jobs); ++i)
      running.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, work, grid[i]));
    for (auto& f : running) rows.push_back(f.get());
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.job.id < b.job.id; });

  std::ostringstream csv;
  csv << "# schema qroute-sweep/1\n";
  csv << "run_id,algorithm,n,m,seed,fidelity,messages,classical,walk,grover,rounds,correct\n";
  std::vector<double> xs, ys;
  std::size_t correct = 0;
  for (const auto& r : rows) {
    csv << r.job.id << ',' << algo << ',' << r.job.n << ',' << r.job.m << ',' << r.job.seed << ',' << r.fidelity << ','
        << r.counts.total() << ',' << r.counts[Category::kClassical] << ',' << r.counts[Category::kWalk] << ','
        << r.counts[Category::kGrover] << ',' << r.rounds << ',' << (r.correct ? 1 : 0) << '\n';
    const bool by_n = algo == "mst" || algo == "le" || algo == "broadcast";
    xs.push_back(by_n ? static_cast<double>(r.job.n)
                      : std::sqrt(static_cast<double>(r.job.m) * static_cast<double>(r.job.n)));
    ys.push_back(static_cast<double>(r.counts.total()));
    correct += r.correct;
  }
  Json summary;
  summary["schema"] = "qroute-sweep-summary/1";
  summary["algorithm"] = algo;
  summary["runs"] = rows.size();
  summary["correct"] = correct;
  summary["x"] = (algo == "bfs" || algo == "cover") ? "sqrt(m n)" : "n";
  try {
    const auto fit = fit_loglog(xs, ys);
    summary["slope"] = fit.slope;
    summary["intercept"] = fit.intercept;
    summary["slope_stderr"] = fit.slope_stderr;
    summary["ci95"] = {fit.ci_low, fit.ci_high};
  } catch (const InvalidInput& e) {
    summary["slope"] = nullptr;
    summary["fit_error"] = e.what();
  }
  if (out_dir.empty()) {
    std::cout << csv.str();
    std::cerr << summary.dump(2) << '\n';
  } else {
    fs::create_directories(out_dir);
    std::ofstream(fs::path(out_dir) / "sweep.csv") << csv.str();
    write_json_file((fs::path(out_dir) / "summary.json").string(), summary);
  }
  return correct == rows.size() ? kOk : kViolation;
}

int cmd_lb(const std::string& family, std::size_t n, std::size_t d, const std::string& compare,
           std::uint64_t budget, const std::string& out) {
  RunConfig cfg;
  cfg.subcommand = "lb";
  cfg.algorithm = family;
  cfg.params = {{"n", std::to_string(n)}, {"d", std::to_string(d)}, {"compare", compare},
                {"budget", std::to_string(budget)}};
  const EntryCompare cmp = compare == "answer" ? EntryCompare::kAnswer : EntryCompare::kNeighbour;
  RelationParams r;
  if (family == "bfs") {
    r = bfs_relation_params(n, d, cmp, budget);
  } else {
    r = connectivity_relation_params(n, cmp, budget);
  }
  emit(Json{{"manifest", {{"config", config_json(cfg)}}}, {"result", Json::parse(relation_json(r))}}, out);
  return r.separation_ok && r.symmetric ? kOk : kViolation;
}

int cmd_gen(const std::vector<std::string>& spec, const std::string& out) {
  if (spec.empty()) throw UsageError("gen: give a generator name");
  const PortedGraph g = generate(spec.front(), parse_kv({spec.begin() + 1, spec.end()}));
  if (out.empty()) {
    write_graph(std::cout, g);
  } else {
    write_graph_file(out, g);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qroute: quantum routing model simulator"};
  app.require_subcommand(1);

  GraphSource vsrc;
  auto* validate_cmd = app.add_subcommand("validate", "check a graph's port arrays");
  vsrc.add(validate_cmd);

  GraphSource esrc;
  NodeId eroot = 0;
  std::string emarked;
  auto* effres_cmd = app.add_subcommand("effres", "effective resistance from a root to a marked set");
  esrc.add(effres_cmd);
  effres_cmd->add_option("--root", eroot, "root node")->required();
  effres_cmd->add_option("--marked", emarked, "comma-separated marked nodes")->required();

  GraphSource rsrc;
  AlgoOptions rao;
  std::string ralgo, rout;
  std::vector<std::string> rparams;
  std::uint64_t rounds_cap = 0;
  auto* run_cmd = app.add_subcommand("run", "run one algorithm and write output, ledger and manifest");
  run_cmd->add_option("algorithm", ralgo, "mst, le, broadcast, bfs, cover, findany, findmin, walk-detect")
      ->required()
      ->check(CLI::IsMember({"mst", "le", "broadcast", "bfs", "cover", "findany", "findmin", "walk-detect"}));
  rsrc.add(run_cmd);
  rao.add(run_cmd);
  run_cmd->add_option("--param", rparams, "algorithm parameter key=value: root, source, kappa, W, marked, R");
  run_cmd->add_option("--out", rout, "output directory (stdout when absent)");
  run_cmd->add_option("--rounds-cap", rounds_cap, "refuse results that took more rounds (0: no cap)");

  AlgoOptions sao;
  std::string salgo, sout;
  std::vector<std::size_t> sns;
  std::vector<std::string> sms;
  std::size_t reps = 1, jobs = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a grid of random graphs and fit the message slope");
  sweep_cmd->add_option("algorithm", salgo, "mst, le, broadcast, bfs, cover")->required();
  sao.add(sweep_cmd);
  sweep_cmd->add_option("--n", sns, "node counts")->delimiter(',');
  sweep_cmd->add_option("--m", sms, "edge counts: integer, dense, half or <k>n")->delimiter(',');
  sweep_cmd->add_option("--reps", reps, "runs per grid point");
  sweep_cmd->add_option("--jobs", jobs, "parallel workers");
  sweep_cmd->add_option("--out", sout, "directory for sweep.csv and summary.json");

  std::string lfamily, lcompare = "default", lout;
  std::size_t ln = 0, ld = 1;
  std::uint64_t lbudget = kEnumerationBudget;
  auto* lb_cmd = app.add_subcommand("lb", "enumerate a lower-bound relation");
  lb_cmd->add_option("family", lfamily, "bfs or connectivity")->required()->check(CLI::IsMember({"bfs", "connectivity"}));
  lb_cmd->add_option("--n", ln, "instance size")->required();
  lb_cmd->add_option("--d", ld, "bfs family degree parameter");
  lb_cmd->add_option("--compare", lcompare, "neighbour or answer")->check(CLI::IsMember({"default", "neighbour", "answer"}));
  lb_cmd->add_option("--budget", lbudget, "enumeration work budget");
  lb_cmd->add_option("--out", lout, "output file (stdout when absent)");

  std::vector<std::string> gspec;
  std::string gout;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated graph");
  gen_cmd->add_option("spec", gspec, "generator name followed by key=value parameters")->required();
  gen_cmd->add_option("--out", gout, "output file (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(vsrc);
    if (*effres_cmd) return cmd_effres(esrc, eroot, emarked);
    if (*run_cmd) return cmd_run(ralgo, rsrc, rao, rparams, rout, rounds_cap);
    if (*sweep_cmd) return cmd_sweep(salgo, sao, sns, sms, reps, jobs, sout);
    if (*lb_cmd) {
      if (lcompare == "default") lcompare = lfamily == "bfs" ? "neighbour" : "answer";
      return cmd_lb(lfamily, ln, ld, lcompare, lbudget, lout);
    }
    if (*gen_cmd) return cmd_gen(gspec, gout);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "violation: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}
