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

#include "qroute/reference.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace qroute::reference {

std::vector<std::uint32_t> bfs_distances(const PortedGraph& g, NodeId root) {
  std::vector<std::uint32_t> dist(g.node_count(), kUnreached);
  std::deque<NodeId> q{root};
  dist[root] = 0;
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    for (const auto& p : g.ports(v)) {
      if (dist[p.to] == kUnreached) {
        dist[p.to] = dist[v] + 1;
        q.push_back(p.to);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> components(const PortedGraph& g) {
  std::vector<std::uint32_t> label(g.node_count(), kUnreached);
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] != kUnreached) continue;
    std::vector<NodeId> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const auto& p : g.ports(v)) {
        if (label[p.to] == kUnreached) {
          label[p.to] = next;
          stack.push_back(p.to);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(const PortedGraph& g) {
  auto l = components(g);
  return l.empty() ? 0 : *std::max_element(l.begin(), l.end()) + 1;
}

std::uint32_t diameter(const PortedGraph& g) {
  std::uint32_t best = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (auto d : bfs_distances(g, v))
      if (d != kUnreached) best = std::max(best, d);
  }
  return best;
}

std::vector<EdgeId> kruskal(const PortedGraph& g) {
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).weight < g.edge(b).weight; });
  std::vector<NodeId> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<EdgeId> out;
  for (EdgeId e : order) {
    auto a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a != b) {
      parent[a] = b;
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool unique_weights(const PortedGraph& g) {
  std::unordered_set<double> seen;
  for (const auto& e : g.edges())
    if (!seen.insert(e.weight).second) return false;
  return true;
}

}  // namespace qroute::reference
