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

#include "qroute/bfs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

#include "qroute/errors.hpp"
#include "qroute/grover.hpp"
#include "qroute/reference.hpp"
#include "qroute/sim.hpp"

namespace qroute {
namespace {

std::uint32_t ceil_log2(std::size_t n) { return n <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(n - 1)); }

double log2_at_least_1(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(n))); }

// Rounds after which every node's search in a subphase is over, plus one for the join notice.
std::uint64_t search_subphase_length(const PortedGraph& g, double alpha, const Constants& k) {
  std::uint64_t len = 0;
  std::vector<char> seen(g.max_degree() + 1, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto deg = g.degree(v);
    if (deg == 0 || seen[deg]) continue;
    seen[deg] = 1;
    len = std::max(len, grover_round_bound(deg, 1.0 / static_cast<double>(deg), alpha, 2, k));
  }
  return len + 1;
}

void insert_sorted(std::vector<std::uint32_t>& v, std::uint32_t x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

// Smallest tree in `cand` that u belonged to before the current layer, or kNoTree.
constexpr std::uint32_t kNoTree = 0xffffffffu;
std::uint32_t first_common(const std::vector<TreeMembership>& mu, const std::vector<std::uint32_t>& cand,
                           std::uint32_t layer) {
  auto a = mu.begin();
  auto b = cand.begin();
  while (a != mu.end() && b != cand.end()) {
    if (a->tree < *b) {
      ++a;
    } else if (*b < a->tree) {
      ++b;
    } else {
      if (a->depth < layer) return *b;
      ++a;
      ++b;
    }
  }
  return kNoTree;
}

// Hop distances from v up to `limit`; the visited nodes are returned in BFS order.
std::vector<NodeId> ball(const PortedGraph& g, NodeId v, std::uint32_t limit, std::vector<std::uint32_t>& dist) {
  std::vector<NodeId> order{v};
  dist[v] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId x = order[i];
    if (dist[x] == limit) continue;
    for (const Port& p : g.ports(x)) {
      if (dist[p.to] != reference::kUnreached) continue;
      dist[p.to] = dist[x] + 1;
      order.push_back(p.to);
    }
  }
  return order;
}

}  // namespace

const TreeMembership* TreeFamily::find(NodeId v, std::uint32_t tree) const {
  const auto& m = membership[v];
  auto it = std::lower_bound(m.begin(), m.end(), tree,
                             [](const TreeMembership& a, std::uint32_t t) { return a.tree < t; });
  return it != m.end() && it->tree == tree ? &*it : nullptr;
}

std::vector<std::string> check_tree_family(const PortedGraph& g, const TreeFamily& f) {
  std::vector<std::string> bad;
  const auto n = g.node_count();
  if (f.membership.size() != n) return {"membership array does not match the graph size"};
  auto where = [](NodeId v, std::uint32_t t) {
    return "node " + std::to_string(v) + " in tree " + std::to_string(t);
  };
  for (NodeId v = 0; v < n; ++v) {
    const auto& ms = f.membership[v];
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto& m = ms[i];
      if (m.tree >= f.trees.size()) {
        bad.push_back(where(v, m.tree) + ": no such tree");
        continue;
      }
      if (i > 0 && ms[i - 1].tree >= m.tree) bad.push_back(where(v, m.tree) + ": memberships not sorted");
      if (m.parent == kNoPort) {
        if (f.trees[m.tree].root != v || m.depth != 0) bad.push_back(where(v, m.tree) + ": parentless non-root");
      } else {
        if (m.parent >= g.degree(v)) {
          bad.push_back(where(v, m.tree) + ": parent port out of range");
          continue;
        }
        const Port& up = g.port(v, m.parent);
        const TreeMembership* pm = f.find(up.to, m.tree);
        if (!pm) {
          bad.push_back(where(v, m.tree) + ": parent is not a member");
        } else {
          if (pm->depth + 1 != m.depth) bad.push_back(where(v, m.tree) + ": depth is not parent depth + 1");
          if (std::find(pm->children.begin(), pm->children.end(), up.back) == pm->children.end())
            bad.push_back(where(v, m.tree) + ": parent does not list it as a child");
        }
      }
      for (PortIndex p : m.children) {
        if (p >= g.degree(v)) {
          bad.push_back(where(v, m.tree) + ": child port out of range");
          continue;
        }
        const Port& down = g.port(v, p);
        const TreeMembership* cm = f.find(down.to, m.tree);
        if (!cm || cm->parent != down.back) bad.push_back(where(v, m.tree) + ": child does not point back");
      }
    }
  }
  for (std::size_t t = 0; t < f.trees.size(); ++t) {
    const auto& tr = f.trees[t];
    const TreeMembership* rm = tr.root < n ? f.find(tr.root, static_cast<std::uint32_t>(t)) : nullptr;
    if (!rm || rm->parent != kNoPort) bad.push_back("tree " + std::to_string(t) + ": root is not a parentless member");
  }
  return bad;
}

std::uint32_t max_sources_within(const PortedGraph& g, const std::vector<NodeId>& sources, std::uint32_t d) {
  const auto n = g.node_count();
  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint32_t> dist(n, reference::kUnreached);
  for (NodeId s : sources) {
    const auto seen = ball(g, s, d, dist);
    for (NodeId v : seen) {
      ++count[v];
      dist[v] = reference::kUnreached;
    }
  }
  return n == 0 ? 0 : *std::max_element(count.begin(), count.end());
}

TreeFamily low_depth_bfs_in(SimContext& ctx, const std::vector<NodeId>& sources, const LowDepthOptions& opts,
                            Rng& rng, LowDepthStats* stats_out) {
  const PortedGraph& g = ctx.graph();
  const auto n = g.node_count();
  if (opts.congestion == 0) throw InvalidInput("low_depth_bfs: congestion bound k must be positive");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw InvalidInput("low_depth_bfs: alpha must lie in (0,1)");
  std::vector<char> is_source(n, 0);
  for (NodeId s : sources) {
    if (s >= n) throw InvalidInput("low_depth_bfs: source out of range");
    if (is_source[s]++) throw InvalidInput("low_depth_bfs: duplicate source " + std::to_string(s));
  }

  LowDepthStats stats;
  if (opts.audit) {
    stats.max_sources_near = max_sources_within(g, sources, opts.depth);
    stats.congestion_ok = stats.max_sources_near <= opts.congestion;
  }

  TreeFamily f;
  f.membership.resize(n);
  std::vector<std::pair<NodeId, std::uint32_t>> fresh;  // (node, tree) joined in the last layer
  for (std::uint32_t i = 0; i < sources.size(); ++i) {
    f.trees.push_back({sources[i], 0, {sources[i]}, 0});
    f.membership[sources[i]].push_back({i, kNoPort, 0, {}});
    fresh.emplace_back(sources[i], i);
  }

  // trees a node has a neighbour in but has not joined; only these can be marked
  std::vector<std::vector<std::uint32_t>> cand(n);
  const std::uint64_t len = search_subphase_length(g, opts.alpha, ctx.constants());
  struct Join {
    NodeId v;
    PortIndex port;
    std::uint32_t tree;
  };
  std::vector<PortIndex> marked;

  for (std::uint32_t layer = 1; layer <= opts.depth; ++layer) {
    for (auto [u, t] : fresh)
      for (const Port& p : g.ports(u))
        if (!f.find(p.to, t)) insert_sorted(cand[p.to], t);
    fresh.clear();

    for (std::uint32_t s = 0; s < opts.congestion; ++s) {
      const std::uint64_t t0 = ctx.now();
      std::vector<Join> joins;
      for (NodeId v = 0; v < n; ++v) {
        const auto deg = g.degree(v);
        if (deg == 0) continue;
        marked.clear();
        if (!cand[v].empty()) {
          for (PortIndex p = 0; p < deg; ++p)
            if (first_common(f.membership[g.neighbor(v, p)], cand[v], layer) != kNoTree) marked.push_back(p);
        }
        GroverTask task;
        task.owner = v;
        task.epsilon = 1.0 / static_cast<double>(deg);
        task.alpha = opts.alpha;
        task.marked_ports = marked;
        const GroverResult res = distributed_grover(g, task, rng, ctx.constants());
        charge_grover(ctx, task, res, t0);
        ++stats.searches;
        if (res.found) {
          const NodeId u = g.neighbor(v, *res.found);
          joins.push_back({v, *res.found, first_common(f.membership[u], cand[v], layer)});
        }
      }
      for (const Join& j : joins) {
        const Port& up = g.port(j.v, j.port);
        auto& mu = f.membership[up.to];
        auto it = std::lower_bound(mu.begin(), mu.end(), j.tree,
                                   [](const TreeMembership& a, std::uint32_t t) { return a.tree < t; });
        it->children.push_back(up.back);
        const std::uint32_t depth = it->depth + 1;
        auto& mv = f.membership[j.v];
        mv.insert(std::lower_bound(mv.begin(), mv.end(), j.tree,
                                   [](const TreeMembership& a, std::uint32_t t) { return a.tree < t; }),
                  TreeMembership{j.tree, j.port, depth, {}});
        auto& tr = f.trees[j.tree];
        tr.members.push_back(j.v);
        tr.depth = std::max(tr.depth, depth);
        auto& cv = cand[j.v];
        cv.erase(std::lower_bound(cv.begin(), cv.end(), j.tree));
        fresh.emplace_back(j.v, j.tree);
        ctx.send(j.v, j.port, t0 + len - 1);  // tell the parent
        ++stats.joins;
      }
      ctx.set_now(t0 + len);
    }
  }
  for (auto& ms : f.membership)
    for (auto& m : ms) std::sort(m.children.begin(), m.children.end());
  if (stats_out) *stats_out = stats;
  return f;
}

LowDepthRun low_depth_bfs(const PortedGraph& g, const std::vector<NodeId>& sources, const LowDepthOptions& opts,
                          std::uint64_t seed, const Constants& constants) {
  SimContext ctx(g, constants);
  ctx.set_phase("low-depth-bfs");
  Rng rng(seed);
  LowDepthRun run;
  run.forest = low_depth_bfs_in(ctx, sources, opts, rng, &run.stats);
  run.ledger = ctx.ledger();
  run.transcript = ctx.transcript();
  run.rounds = ctx.now();
  return run;
}

double search_alpha(std::size_t n, double delta, const Constants& k) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return std::min(std::pow(nn, -k.grover_alpha_exponent), delta / nn);
}

CoverOutput sparse_cover_in(SimContext& ctx, const CoverOptions& opts, Rng& rng) {
  const PortedGraph& g = ctx.graph();
  const auto n = g.node_count();
  if (opts.kappa == 0 || opts.W == 0) throw InvalidInput("sparse_cover: kappa and W must be positive");
  if (!(opts.delta > 0.0 && opts.delta < 1.0)) throw InvalidInput("sparse_cover: delta must lie in (0,1)");
  const double kappa = opts.kappa;
  const double nn = static_cast<double>(n);
  const double alpha = search_alpha(n, opts.delta / kappa, ctx.constants());
  const auto k = static_cast<std::uint32_t>(
      std::ceil(ctx.constants().cover_congestion_coeff * std::pow(nn, 1.0 / kappa) * log2_at_least_1(n)));

  CoverOutput out;
  out.kappa = opts.kappa;
  out.W = opts.W;
  out.covered_in.assign(n, 0);
  out.family.membership.resize(n);

  for (std::uint32_t i = 1; i <= opts.kappa; ++i) {
    CoverPhase ph;
    ph.sample_rate = std::pow(nn, (static_cast<double>(i) - kappa) / kappa);
    ph.depth = 2 * (opts.kappa - i + 1) * opts.W;
    ph.cover_radius = 2 * (opts.kappa - i) * opts.W;
    ph.congestion = k;
    std::vector<NodeId> roots;
    for (NodeId v = 0; v < n; ++v)
      if (out.covered_in[v] == 0 && (i == opts.kappa || rng.bernoulli(ph.sample_rate))) roots.push_back(v);
    ph.sampled = static_cast<std::uint32_t>(roots.size());

    ctx.set_phase("cover/explore");
    LowDepthOptions lo;
    lo.depth = ph.depth;
    lo.congestion = k;
    lo.alpha = alpha;
    lo.audit = opts.audit;
    const TreeFamily found = low_depth_bfs_in(ctx, roots, lo, rng, &ph.explore);

    const auto offset = static_cast<std::uint32_t>(out.family.trees.size());
    for (auto tr : found.trees) {
      tr.phase = i;
      out.family.trees.push_back(std::move(tr));
    }
    for (NodeId v = 0; v < n; ++v) {
      for (auto m : found.membership[v]) {
        m.tree += offset;
        if (out.covered_in[v] == 0 && m.depth <= ph.cover_radius) {
          out.covered_in[v] = i;
          ++ph.newly_covered;
        }
        out.family.membership[v].push_back(std::move(m));
      }
    }
    out.phases.push_back(ph);
  }
  return out;
}

CoverRun sparse_cover(const PortedGraph& g, const CoverOptions& opts) {
  SimContext ctx(g, opts.constants);
  Rng rng(opts.seed);
  CoverRun run;
  run.cover = sparse_cover_in(ctx, opts, rng);
  run.ledger = ctx.ledger();
  run.transcript = ctx.transcript();
  run.rounds = ctx.now();
  return run;
}

CoverAudit audit_cover(const PortedGraph& g, const CoverOutput& cover, const Constants& k) {
  CoverAudit a;
  const auto n = g.node_count();
  a.structure = check_tree_family(g, cover.family);
  for (const auto& t : cover.family.trees) a.max_depth = std::max(a.max_depth, t.depth);
  a.depth_bound = kCoverDepthCoeff * cover.W * cover.kappa;
  a.depth_ok = a.max_depth <= a.depth_bound;

  for (const auto& ms : cover.family.membership)
    a.max_membership = std::max(a.max_membership, static_cast<std::uint32_t>(ms.size()));
  a.membership_bound = k.cover_congestion_coeff * cover.kappa *
                       std::pow(static_cast<double>(n), 1.0 / std::max<std::uint32_t>(cover.kappa, 1)) *
                       log2_at_least_1(n);
  a.sparsity_ok = a.max_membership <= a.membership_bound;

  if (a.structure.empty()) {
    std::vector<std::uint32_t> dist(n, reference::kUnreached);
    for (NodeId v = 0; v < n; ++v) {
      const auto nb = ball(g, v, cover.W, dist);
      bool inside = false;
      for (const auto& m : cover.family.membership[v]) {
        inside = std::all_of(nb.begin(), nb.end(), [&](NodeId u) { return cover.family.find(u, m.tree) != nullptr; });
        if (inside) break;
      }
      if (!inside) a.uncovered.push_back(v);
      for (NodeId u : nb) dist[u] = reference::kUnreached;
    }
    a.neighbourhood_ok = a.uncovered.empty();
  }
  return a;
}

std::vector<std::string> check_bfs_output(const PortedGraph& g, const BfsOutput& out) {
  const auto n = g.node_count();
  if (out.layer.size() != n || out.parent.size() != n || out.children.size() != n)
    return {"output arrays do not match the graph size"};
  if (out.root >= n) return {"root out of range"};
  std::vector<std::string> bad;
  if (out.layer[out.root] != 0 || out.parent[out.root] != kNoPort) bad.push_back("root is not a parentless layer 0");
  for (NodeId v = 0; v < n; ++v) {
    const auto node = "node " + std::to_string(v);
    if (v != out.root) {
      if (out.parent[v] >= g.degree(v)) {
        bad.push_back(node + ": no valid parent port");
      } else {
        const Port& up = g.port(v, out.parent[v]);
        if (out.layer[up.to] + 1 != out.layer[v]) bad.push_back(node + ": layer is not parent layer + 1");
        const auto& ch = out.children[up.to];
        if (std::find(ch.begin(), ch.end(), up.back) == ch.end())
          bad.push_back(node + ": parent does not list it as a child");
      }
    }
    for (PortIndex p : out.children[v]) {
      if (p >= g.degree(v) || out.parent[g.neighbor(v, p)] != g.port(v, p).back)
        bad.push_back(node + ": child does not point back");
    }
  }
  const auto dist = reference::bfs_distances(g, out.root);
  for (NodeId v = 0; v < n; ++v) {
    if (dist[v] != out.layer[v]) {
      bad.push_back("node " + std::to_string(v) + ": layer " + std::to_string(out.layer[v]) + " but distance " +
                    std::to_string(dist[v]));
    }
  }
  return bad;
}

BfsRun bfs(const PortedGraph& g, NodeId root, const BfsOptions& opts) {
  const auto n = g.node_count();
  if (root >= n) throw InvalidInput("bfs: root out of range");
  if (!(opts.delta > 0.0 && opts.delta < 1.0)) throw InvalidInput("bfs: delta must lie in (0,1)");
  SimContext ctx(g, opts.constants);
  const Constants& k = ctx.constants();
  Rng master(opts.seed);
  Rng cover_rng = master.split();
  Rng search_rng = master.split();
  BfsRun run;
  BfsStats& stats = run.stats;

  // (Θ(log n), 1) cover, built first
  ctx.set_phase("bfs/cover");
  CoverOptions co;
  co.kappa = std::max<std::uint32_t>(1, ceil_log2(n));
  co.W = 1;
  co.delta = opts.delta / 2;
  co.audit = false;
  run.cover = sparse_cover_in(ctx, co, cover_rng);
  const TreeFamily& cover = run.cover.family;
  stats.cover_trees = cover.trees.size();
  stats.cover_messages = ctx.ledger().total();

  const double alpha = search_alpha(n, opts.delta / 2, k);
  const auto L = log2_at_least_1(n);
  const auto ping_len = static_cast<std::uint64_t>(std::ceil(k.ping_coeff * L * L * L));
  const std::uint64_t search_len = search_subphase_length(g, alpha, k);

  BfsOutput& out = run.output;
  out.root = root;
  out.layer.assign(n, reference::kUnreached);
  out.parent.assign(n, kNoPort);
  out.children.assign(n, {});
  stats.searches.assign(n, 0);
  std::vector<char> in_tree(n, 0);
  std::vector<NodeId> members{root};
  out.layer[root] = 0;
  in_tree[root] = 1;
  std::vector<NodeId> frontier{root};
  bool joined_last = true;
  std::uint32_t height = 0;
  const std::uint32_t phase_cap = 2 * static_cast<std::uint32_t>(n) + 4;

  std::vector<char> informed(n, 0);
  std::vector<PortIndex> marked;
  for (std::uint32_t phase = 1;; ++phase) {
    if (phase >= 2 && std::has_single_bit(phase)) {
      // did anyone join in the previous phase? convergecast, then broadcast the answer
      ctx.set_phase("bfs/check");
      ++stats.termination_checks;
      const std::uint64_t t0 = ctx.now();
      for (NodeId v : members) {
        if (v == root) continue;
        const Port& up = g.port(v, out.parent[v]);
        ctx.send(v, out.parent[v], t0 + height - out.layer[v]);
        ctx.send(up.to, up.back, t0 + height + out.layer[v] - 1);
      }
      ctx.set_now(t0 + 2 * static_cast<std::uint64_t>(height));
      if (!joined_last) break;
    }
    if (phase > phase_cap) throw ProtocolError("bfs: no termination after " + std::to_string(phase_cap) + " phases");
    ++stats.phases;

    // ping: frontier nodes ping up every cover tree they are in; pinged trees broadcast
    ctx.set_phase("bfs/ping");
    std::uint64_t t0 = ctx.now();
    std::unordered_set<std::uint64_t> pinged_path;
    std::vector<std::uint32_t> pinged;
    std::unordered_set<std::uint32_t> pinged_set;
    for (NodeId f : frontier) {
      for (const auto& m : cover.membership[f]) {
        if (pinged_set.insert(m.tree).second) pinged.push_back(m.tree);
        NodeId x = f;
        const TreeMembership* mx = &m;
        for (std::uint64_t step = 0; mx->parent != kNoPort; ++step) {
          if (!pinged_path.insert((std::uint64_t{m.tree} << 32) | x).second) break;
          ctx.send(x, mx->parent, t0 + step);
          x = g.neighbor(x, mx->parent);
          mx = cover.find(x, m.tree);
        }
      }
    }
    std::vector<NodeId> searchers;
    for (std::uint32_t t : pinged) {
      const auto& tr = cover.trees[t];
      for (NodeId v : tr.members) {
        const TreeMembership* mv = cover.find(v, t);
        if (mv->parent != kNoPort) {
          const Port& up = g.port(v, mv->parent);
          ctx.send(up.to, up.back, t0 + tr.depth + mv->depth - 1);
        }
        if (!informed[v] && !in_tree[v]) {
          informed[v] = 1;
          searchers.push_back(v);
        }
      }
    }
    ctx.set_now(t0 + ping_len);

    // search: informed non-members look for a neighbour already in the tree
    ctx.set_phase("bfs/grover");
    t0 = ctx.now();
    std::vector<std::pair<NodeId, PortIndex>> joins;
    for (NodeId v : searchers) {
      informed[v] = 0;
      const auto deg = g.degree(v);
      if (deg == 0) continue;
      marked.clear();
      for (PortIndex p = 0; p < deg; ++p)
        if (in_tree[g.neighbor(v, p)]) marked.push_back(p);
      GroverTask task;
      task.owner = v;
      task.epsilon = 1.0 / static_cast<double>(deg);
      task.alpha = alpha;
      task.marked_ports = marked;
      const GroverResult res = distributed_grover(g, task, search_rng, k);
      charge_grover(ctx, task, res, t0);
      ++stats.searches[v];
      if (res.found) joins.emplace_back(v, *res.found);
    }
    frontier.clear();
    for (auto [v, p] : joins) {
      const Port& up = g.port(v, p);
      out.layer[v] = out.layer[up.to] + 1;
      out.parent[v] = p;
      out.children[up.to].push_back(up.back);
      height = std::max(height, out.layer[v]);
      in_tree[v] = 1;
      members.push_back(v);
      frontier.push_back(v);
      ctx.send(v, p, t0 + search_len - 1);
    }
    ctx.set_now(t0 + search_len);
    joined_last = !joins.empty();
    if (joined_last) stats.last_join_phase = phase;
  }

  if (members.size() < n) {
    throw Disconnected("bfs: the tree reached " + std::to_string(members.size()) + " of " + std::to_string(n) +
                       " nodes");
  }
  for (auto& ch : out.children) std::sort(ch.begin(), ch.end());
  for (auto c : stats.searches) stats.max_searches = std::max(stats.max_searches, c);
  run.ledger = ctx.ledger();
  run.transcript = ctx.transcript();
  run.rounds = ctx.now();
  return run;
}

}  // namespace qroute
