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

#include "qroute/cluster.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "qroute/errors.hpp"
#include "qroute/sim.hpp"

namespace qroute {

Clustering Clustering::singletons(const PortedGraph& g, std::vector<std::uint64_t> ids) {
  return from_parents(g, std::move(ids), std::vector<PortIndex>(g.node_count(), kNoPort));
}

Clustering Clustering::from_parents(const PortedGraph& g, std::vector<std::uint64_t> ids,
                                    const std::vector<PortIndex>& parent) {
  const auto n = g.node_count();
  Clustering cl;
  cl.node_id = std::move(ids);
  cl.tree.assign(n, TreeLinks{});
  cl.cluster_of.assign(n, std::numeric_limits<std::uint32_t>::max());
  for (NodeId v = 0; v < n; ++v) {
    cl.tree[v].parent = parent[v];
    if (parent[v] == kNoPort) continue;
    const Port& up = g.port(v, parent[v]);
    cl.tree[up.to].children.push_back(up.back);
  }
  for (NodeId r = 0; r < n; ++r) {
    if (parent[r] != kNoPort) continue;
    Cluster c;
    c.root = r;
    c.id = cl.node_id[r];
    const auto idx = static_cast<std::uint32_t>(cl.clusters.size());
    std::vector<NodeId> frontier{r};
    cl.tree[r].depth = 0;
    while (!frontier.empty()) {
      std::vector<NodeId> next;
      for (NodeId v : frontier) {
        if (cl.cluster_of[v] != std::numeric_limits<std::uint32_t>::max()) {
          throw InvalidInput("cluster trees overlap at node " + std::to_string(v));
        }
        cl.cluster_of[v] = idx;
        c.members.push_back(v);
        c.height = std::max(c.height, cl.tree[v].depth);
        for (PortIndex p : cl.tree[v].children) {
          NodeId u = g.neighbor(v, p);
          cl.tree[u].depth = cl.tree[v].depth + 1;
          next.push_back(u);
        }
      }
      frontier.swap(next);
    }
    cl.clusters.push_back(std::move(c));
  }
  for (NodeId v = 0; v < n; ++v) {
    if (cl.cluster_of[v] == std::numeric_limits<std::uint32_t>::max()) {
      throw InvalidInput("parent pointers form a cycle through node " + std::to_string(v));
    }
  }
  return cl;
}

bool Clustering::is_tree_port(NodeId v, PortIndex p) const {
  if (tree[v].parent == p) return true;
  const auto& ch = tree[v].children;
  return std::find(ch.begin(), ch.end(), p) != ch.end();
}

std::vector<PortIndex> Clustering::parents() const {
  std::vector<PortIndex> out(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) out[v] = tree[v].parent;
  return out;
}

std::vector<std::string> Clustering::validate(const PortedGraph& g) const {
  std::vector<std::string> out;
  const auto n = g.node_count();
  if (tree.size() != n || cluster_of.size() != n || node_id.size() != n) {
    out.push_back("per-node arrays do not match the graph size");
    return out;
  }
  std::vector<std::size_t> count(clusters.size(), 0);
  for (NodeId v = 0; v < n; ++v) {
    if (cluster_of[v] >= clusters.size()) {
      out.push_back("node " + std::to_string(v) + " has no cluster");
      continue;
    }
    ++count[cluster_of[v]];
    const auto& t = tree[v];
    if (t.parent == kNoPort) {
      if (clusters[cluster_of[v]].root != v) out.push_back("node " + std::to_string(v) + " has no parent but is not root");
      if (t.depth != 0) out.push_back("root " + std::to_string(v) + " has nonzero depth");
    } else {
      const Port& up = g.port(v, t.parent);
      const auto& pc = tree[up.to].children;
      if (std::find(pc.begin(), pc.end(), up.back) == pc.end()) {
        out.push_back("parent of node " + std::to_string(v) + " does not list it as a child");
      }
      if (cluster_of[up.to] != cluster_of[v]) out.push_back("tree edge at node " + std::to_string(v) + " leaves its cluster");
      if (tree[up.to].depth + 1 != t.depth) out.push_back("depth mismatch at node " + std::to_string(v));
    }
    for (PortIndex p : t.children) {
      const Port& down = g.port(v, p);
      if (tree[down.to].parent != down.back) {
        out.push_back("child " + std::to_string(down.to) + " of node " + std::to_string(v) + " points elsewhere");
      }
    }
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (count[c] != clusters[c].members.size()) {
      out.push_back("cluster " + std::to_string(c) + " records size " + std::to_string(clusters[c].members.size()) +
                    " but holds " + std::to_string(count[c]) + " nodes");
    }
    if (tree[clusters[c].root].parent != kNoPort) out.push_back("cluster " + std::to_string(c) + " root has a parent");
  }
  return out;
}

std::uint64_t id_space_for(std::size_t n) {
  return std::max<std::uint64_t>(8, static_cast<std::uint64_t>(n) * n * n);
}

std::vector<std::uint64_t> draw_node_ids(std::size_t n, Rng& rng) {
  const std::uint64_t space = id_space_for(n);
  std::vector<std::uint64_t> ids(n);
  std::unordered_set<std::uint64_t> used;
  for (auto& id : ids) {
    do {
      id = rng.below(space);
    } while (!used.insert(id).second);  // collisions have probability < 1/n; redraw
  }
  return ids;
}

namespace {

void require_sane(const Clustering& cl, std::uint32_t c, std::size_t n) {
  if (cl.clusters[c].height >= std::max<std::size_t>(n, 1)) {
    throw InvalidInput("cluster tree deeper than the node count: malformed tree");
  }
}

}  // namespace

ConvergecastResult convergecast_min(SimContext& ctx, const Clustering& cl, std::uint32_t c,
                                    const std::vector<std::uint64_t>& value) {
  return convergecast_min(ctx, cl, c, [&](NodeId v) { return value[v]; });
}

ConvergecastResult convergecast_min(SimContext& ctx, const Clustering& cl, std::uint32_t c,
                                    const std::function<std::uint64_t(NodeId)>& value) {
  const PortedGraph& g = ctx.graph();
  const Cluster& cluster = cl.clusters[c];
  require_sane(cl, c, g.node_count());
  const std::uint64_t t0 = ctx.now();

  // members are stored by nondecreasing depth, so reverse order visits children first
  // scratch indexed by node, reused across calls so singleton clusters stay O(1)
  thread_local std::vector<std::uint64_t> ready;
  thread_local std::vector<ConvergecastResult> best;
  if (ready.size() < g.node_count()) {
    ready.resize(g.node_count());
    best.resize(g.node_count());
  }
  auto better = [&](const ConvergecastResult& a, const ConvergecastResult& b) {
    if (a.value != b.value) return a.value < b.value;
    return cl.node_id[a.node] < cl.node_id[b.node];
  };
  for (auto it = cluster.members.rbegin(); it != cluster.members.rend(); ++it) {
    const NodeId v = *it;
    ConvergecastResult mine{value(v), v};
    std::uint64_t t = 0;
    for (PortIndex p : cl.tree[v].children) {
      const NodeId u = g.neighbor(v, p);
      if (better(best[u], mine)) mine = best[u];
      t = std::max(t, ready[u] + 1);
    }
    best[v] = mine;
    ready[v] = t;
    if (cl.tree[v].parent != kNoPort) ctx.send(v, cl.tree[v].parent, t0 + t);
  }
  ctx.set_now(t0 + ready[cluster.root]);
  return best[cluster.root];
}

void broadcast(SimContext& ctx, const Clustering& cl, std::uint32_t c) {
  const PortedGraph& g = ctx.graph();
  const Cluster& cluster = cl.clusters[c];
  require_sane(cl, c, g.node_count());
  const std::uint64_t t0 = ctx.now();
  for (NodeId v : cluster.members)
    for (PortIndex p : cl.tree[v].children) ctx.send(v, p, t0 + cl.tree[v].depth);
  ctx.set_now(t0 + cluster.height);
}

}  // namespace qroute
