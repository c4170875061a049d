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

#include "qroute/mst.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qroute/errors.hpp"
#include "qroute/reference.hpp"
#include "qroute/sim.hpp"

namespace qroute {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::uint32_t ceil_log2(std::size_t n) { return n <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(n - 1)); }

// Re-points the tree holding u so that u hangs off `out`; the old root path flips.
void reroot(const PortedGraph& g, const Clustering& cl, std::vector<PortIndex>& parent, NodeId u, PortIndex out) {
  NodeId x = u;
  PortIndex next = out;
  for (;;) {
    const PortIndex old = cl.tree[x].parent;
    parent[x] = next;
    if (old == kNoPort) break;
    const Port& up = g.port(x, old);
    next = up.back;
    x = up.to;
  }
}

void send_tree_prefix(SimContext& ctx, const Clustering& cl, std::uint32_t c, std::uint32_t limit, std::uint64_t t0) {
  const PortedGraph& g = ctx.graph();
  for (NodeId v : cl.clusters[c].members) {
    const auto& t = cl.tree[v];
    if (t.parent == kNoPort || t.depth > limit) continue;
    const Port& up = g.port(v, t.parent);
    ctx.send(up.to, up.back, t0 + t.depth - 1);
  }
}

MstOutput make_output(const PortedGraph& g, const Clustering& cl) {
  MstOutput out;
  const auto n = g.node_count();
  out.parent = cl.parents();
  out.children.resize(n);
  out.fragment_id.resize(n);
  out.node_id = cl.node_id;
  for (NodeId v = 0; v < n; ++v) {
    out.children[v] = cl.tree[v].children;
    std::sort(out.children[v].begin(), out.children[v].end());
    out.fragment_id[v] = cl.clusters[cl.cluster_of[v]].id;
    if (out.parent[v] != kNoPort) out.edges.push_back(g.port(v, out.parent[v]).edge);
  }
  for (const auto& c : cl.clusters) out.roots.push_back(c.root);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace

std::vector<std::string> check_mst_output(const PortedGraph& g, const MstOutput& out) {
  std::vector<std::string> bad;
  const auto n = g.node_count();
  if (out.parent.size() != n || out.children.size() != n) return {"output arrays do not match the graph size"};
  std::size_t tree_edges = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (out.parent[v] != kNoPort) {
      ++tree_edges;
      const Port& up = g.port(v, out.parent[v]);
      const auto& ch = out.children[up.to];
      if (std::find(ch.begin(), ch.end(), up.back) == ch.end()) {
        bad.push_back("node " + std::to_string(v) + " marks a parent port its parent does not mark as child");
      }
    }
    for (PortIndex p : out.children[v]) {
      const Port& down = g.port(v, p);
      if (out.parent[down.to] != down.back) {
        bad.push_back("node " + std::to_string(v) + " marks a child port its child does not mark as parent");
      }
    }
  }
  try {
    Clustering::from_parents(g, std::vector<std::uint64_t>(n, 0), out.parent);
  } catch (const InvalidInput& e) {
    bad.push_back(std::string("not a forest: ") + e.what());
  }
  if (tree_edges + out.roots.size() != n) bad.push_back("edge count does not match the number of trees");
  return bad;
}

MstOutput mst_in(SimContext& ctx, const MstOptions& opts, MstStats* stats_out) {
  const PortedGraph& g = ctx.graph();
  const auto n = g.node_count();
  if (n == 0) throw InvalidInput("mst: empty graph");
  if (g.weighted() && !reference::unique_weights(g)) throw InvalidInput("mst: edge weights must be distinct");
  if (!(opts.delta > 0.0 && opts.delta < 1.0)) throw InvalidInput("mst: delta must lie in (0,1)");

  MstStats stats;
  Rng master(opts.seed);
  Rng id_rng = master.split();
  const auto ids = draw_node_ids(n, id_rng);
  const EdgeRanks ranks(g);
  const std::uint32_t L = std::max<std::uint32_t>(1, ceil_log2(n));
  const std::uint32_t subphases = L + 1;
  const std::uint32_t phase_cap = opts.termination_detection ? 2 * L + 4 : L + 1;

  // union bound over every FindMin/FindAny a cluster may run
  FindOptions fo;
  fo.fidelity = opts.fidelity;
  fo.cache = opts.cache;
  fo.observer = opts.observer;
  fo.delta = opts.delta / (static_cast<double>(L + 1) * (subphases + 1) * static_cast<double>(n));

  std::vector<char> frozen(n, 0);
  std::vector<PortIndex> parent(n, kNoPort);
  Clustering cl;
  bool finished = false;

  for (std::uint32_t phase = 1; phase <= phase_cap && !finished; ++phase) {
    ++stats.phases;
    const std::uint64_t n_star = std::uint64_t{1} << std::min<std::uint32_t>(phase, 62);
    for (NodeId v = 0; v < n; ++v)
      if (!frozen[v]) parent[v] = kNoPort;
    cl = Clustering::from_parents(g, ids, parent);

    for (std::uint32_t s = 0; s < subphases; ++s) {
      ++stats.subphases;
      const auto k = static_cast<std::uint32_t>(cl.clusters.size());
      std::vector<char> passive(k, 0);
      for (std::uint32_t c = 0; c < k; ++c) passive[c] = frozen[cl.clusters[c].root];

      // (1) minimum-weight outgoing edge per small fragment
      ctx.set_phase("mst/find-min");
      Rng search_rng = master.split();
      OutgoingSearch search(ctx, cl, ranks, n_star, fo, search_rng);
      search.set_passive(passive);
      const auto choice = search.find_min();
      stats.walks += search.stats().walks;
      stats.phase1_hits += search.stats().phase1_hits;

      std::vector<std::uint32_t> target(k, kNone);
      for (std::uint32_t c = 0; c < k; ++c)
        if (choice[c]) target[c] = cl.cluster_of[g.neighbor(choice[c]->node, choice[c]->port)];
      auto mutual = [&](std::uint32_t c) {
        const auto t = target[c];
        return t != kNone && target[t] == c && choice[t]->edge == choice[c]->edge;
      };

      // (2) root ids cross the chosen edges; the higher id of a mutual pair leads
      ctx.set_phase("mst/exchange");
      {
        Concurrent con(ctx);
        for (std::uint32_t c = 0; c < k; ++c) {
          if (!choice[c]) continue;
          con.branch();
          broadcast(ctx, cl, c);
          std::uint64_t t = ctx.now();
          const NodeId u = choice[c]->node;
          ctx.send(u, choice[c]->port, t++);
          if (mutual(c)) {
            for (NodeId v = u; cl.tree[v].parent != kNoPort; v = g.neighbor(v, cl.tree[v].parent)) {
              ctx.send(v, cl.tree[v].parent, t++);
            }
          }
          ctx.set_now(t);
        }
        con.join();
      }

      std::vector<std::uint32_t> leader(k, kNone);
      for (std::uint32_t c = 0; c < k; ++c) {
        if (!choice[c]) continue;
        std::uint32_t x = c;
        for (std::uint32_t step = 0; step <= k; ++step) {
          if (x == kNone || !choice[x]) break;  // ends at a silent fragment: no merge this time
          if (mutual(x)) {
            leader[c] = cl.clusters[x].id > cl.clusters[target[x]].id ? x : target[x];
            break;
          }
          x = target[x];
        }
      }

      // (3) merge each component under its leader, undoing merges that run too long
      ctx.set_phase("mst/merge");
      std::vector<PortIndex> next = cl.parents();
      bool any = false;
      for (std::uint32_t c = 0; c < k; ++c) {
        if (leader[c] == kNone || leader[c] == c) continue;
        reroot(g, cl, next, choice[c]->node, choice[c]->port);
        any = true;
      }
      if (any) {
        const Clustering merged = Clustering::from_parents(g, ids, next);
        const auto limit = static_cast<std::uint32_t>(std::ceil(opts.constants.merge_abort_coeff * n_star));
        std::vector<char> seen(merged.clusters.size(), 0);
        bool aborted = false;
        Concurrent con(ctx);
        for (std::uint32_t c = 0; c < k; ++c) {
          if (leader[c] != c) continue;
          const auto mc = merged.cluster_of[cl.clusters[c].root];
          if (seen[mc]++) continue;
          con.branch();
          if (merged.clusters[mc].height > limit) {
            ++stats.aborted_merges;
            aborted = true;
            const std::uint64_t t0 = ctx.now();
            send_tree_prefix(ctx, merged, mc, limit, t0);          // the wave until the timeout
            send_tree_prefix(ctx, merged, mc, limit, t0 + limit);  // and its reversal
            ctx.set_now(t0 + 2 * static_cast<std::uint64_t>(limit));
            for (NodeId v : merged.clusters[mc].members) next[v] = cl.tree[v].parent;
          } else {
            ++stats.merges;
            broadcast(ctx, merged, mc);  // new root id and depths
            convergecast_min(ctx, merged, mc, [](NodeId) { return std::uint64_t{0}; });  // size
            broadcast(ctx, merged, mc);  // size
          }
        }
        con.join();
        cl = aborted ? Clustering::from_parents(g, ids, next) : merged;
      }
      parent = cl.parents();
      if (opts.fragment_observer) opts.fragment_observer(cl);
    }

    if (!opts.termination_detection) continue;

    // phase end: a small fragment with no outgoing edge spans its component and stops
    ctx.set_phase("mst/check");
    const auto k = static_cast<std::uint32_t>(cl.clusters.size());
    std::vector<char> passive(k, 0);
    for (std::uint32_t c = 0; c < k; ++c) passive[c] = frozen[cl.clusters[c].root];
    Rng check_rng = master.split();
    OutgoingSearch check(ctx, cl, ranks, n_star, fo, check_rng);
    check.set_passive(passive);
    const auto found = check.find_any();
    stats.walks += check.stats().walks;
    finished = true;
    Concurrent con(ctx);
    for (std::uint32_t c = 0; c < k; ++c) {
      if (passive[c]) continue;
      if (found[c] || cl.size(c) > n_star) {
        finished = false;
        continue;
      }
      con.branch();
      broadcast(ctx, cl, c);  // terminate
      for (NodeId v : cl.clusters[c].members) frozen[v] = 1;
      if (cl.size(c) < n && !opts.allow_disconnected) {
        con.join();
        throw Disconnected("mst: a fragment of " + std::to_string(cl.size(c)) + " of " + std::to_string(n) +
                           " nodes has no outgoing edge");
      }
    }
    con.join();
  }
  if (opts.termination_detection && !finished) {
    throw ProtocolError("mst: no termination after " + std::to_string(phase_cap) + " phases");
  }
  if (stats_out) *stats_out = stats;
  return make_output(g, cl);
}

MstRun mst(const PortedGraph& g, const MstOptions& opts) {
  SimContext ctx(g, opts.constants);
  MstRun run;
  run.output = mst_in(ctx, opts, &run.stats);
  run.ledger = ctx.ledger();
  run.transcript = ctx.transcript();
  run.rounds = ctx.now();
  return run;
}

LeaderRun leader_election(const PortedGraph& g, const MstOptions& opts) {
  MstOptions o = opts;
  o.allow_disconnected = true;
  SimContext ctx(g, o.constants);
  LeaderRun run;
  run.tree = mst_in(ctx, o);
  run.elected.assign(g.node_count(), false);
  for (NodeId r : run.tree.roots) {
    run.elected[r] = true;
    run.leaders.push_back(r);
  }
  run.ledger = ctx.ledger();
  run.transcript = ctx.transcript();
  run.rounds = ctx.now();
  return run;
}

BroadcastRun broadcast_via_st(const PortedGraph& g, NodeId source, std::uint64_t item, const MstOptions& opts) {
  if (source >= g.node_count()) throw InvalidInput("broadcast: source out of range");
  SimContext ctx(g, opts.constants);
  BroadcastRun run;
  run.tree = mst_in(ctx, opts);
  ctx.set_phase("broadcast");
  const std::uint64_t before = ctx.ledger().total();
  const std::uint64_t t0 = ctx.now();
  run.received.assign(g.node_count(), std::nullopt);
  run.received[source] = item;
  // flood over tree edges; every node forwards to all tree neighbours but the sender
  std::vector<std::pair<NodeId, PortIndex>> frontier{{source, kNoPort}};
  std::uint64_t t = t0;
  while (!frontier.empty()) {
    std::vector<std::pair<NodeId, PortIndex>> next;
    for (auto [v, from] : frontier) {
      std::vector<PortIndex> out = run.tree.children[v];
      if (run.tree.parent[v] != kNoPort) out.push_back(run.tree.parent[v]);
      for (PortIndex p : out) {
        if (p == from) continue;
        const Port& slot = g.port(v, p);
        ctx.send(v, p, t);
        run.received[slot.to] = item;
        next.emplace_back(slot.to, slot.back);
      }
    }
    frontier.swap(next);
    if (!frontier.empty()) ++t;
  }
  ctx.set_now(t + 1);
  run.tree_messages = ctx.ledger().total() - before;
  run.ledger = ctx.ledger();
  run.transcript = ctx.transcript();
  run.rounds = ctx.now();
  return run;
}

}  // namespace qroute
