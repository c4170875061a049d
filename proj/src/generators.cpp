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
#include "qroute/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "qroute/errors.hpp"

namespace qroute {

namespace {

std::pair<NodeId, NodeId> ordered(NodeId u, NodeId v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

}  // namespace

PortedGraph gen_random_connected(std::size_t n, std::size_t m, bool weighted, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("gen_random_connected: n must be positive");
  const std::size_t max_m = n * (n - 1) / 2;
  if (m + 1 < n || m > max_m) {
    throw InvalidInput("gen_random_connected: infeasible (n=" + std::to_string(n) +
                       ", m=" + std::to_string(m) + ")");
  }
  Rng rng(seed);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::pair<NodeId, NodeId>> chosen;
  std::set<std::pair<NodeId, NodeId>> have;
  for (std::size_t i = 1; i < n; ++i) {
    auto e = ordered(order[i], order[rng.below(i)]);
    chosen.push_back(e);
    have.insert(e);
  }
  if (m - chosen.size() > max_m / 2) {
    std::vector<std::pair<NodeId, NodeId>> rest;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (!have.count({u, v})) rest.emplace_back(u, v);
    std::shuffle(rest.begin(), rest.end(), rng);
    rest.resize(m - chosen.size());
    chosen.insert(chosen.end(), rest.begin(), rest.end());
  } else {
    while (chosen.size() < m) {
      auto u = static_cast<NodeId>(rng.below(n));
      auto v = static_cast<NodeId>(rng.below(n));
      if (u == v) continue;
      auto e = ordered(u, v);
      if (have.insert(e).second) chosen.push_back(e);
    }
  }
  std::shuffle(chosen.begin(), chosen.end(), rng);

  std::vector<double> w(m);
  std::iota(w.begin(), w.end(), 1.0);
  std::shuffle(w.begin(), w.end(), rng);

  PortedGraph g(n, weighted);
  for (std::size_t i = 0; i < m; ++i) g.add_edge(chosen[i].first, chosen[i].second, weighted ? w[i] : 1.0);
  return g;
}

PortedGraph gen_star(std::size_t n) {
  PortedGraph g(n);
  for (NodeId v = 1; v < n; ++v) g.add_edge(0, v);
  return g;
}

PortedGraph gen_path(std::size_t n) {
  PortedGraph g(n);
  for (NodeId v = 1; v < n; ++v) g.add_edge(v - 1, v);
  return g;
}

PortedGraph gen_cycle(std::size_t n) {
  if (n < 3) throw InvalidInput("gen_cycle: n must be at least 3");
  auto g = gen_path(n);
  g.add_edge(static_cast<NodeId>(n - 1), 0);
  return g;
}

PortedGraph gen_complete(std::size_t n) {
  PortedGraph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

PortedGraph gen_grid(std::size_t rows, std::size_t cols) {
  PortedGraph g(rows * cols);
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<NodeId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
    }
  }
  return g;
}

void apply_bridge(PortedGraph& g, NodeId a, NodeId b, NodeId c, NodeId d) {
  const PortIndex pab = g.port_to(a, b), pba = g.port_to(b, a);
  const PortIndex pcd = g.port_to(c, d), pdc = g.port_to(d, c);
  if (pab == kNoPort || pcd == kNoPort) throw InvalidInput("apply_bridge: missing edge to rewrite");
  const double w_ab = g.port(a, pab).weight, w_cd = g.port(c, pcd).weight;
  g.set_port(a, pab, Port{c, pcd, 0, w_ab});
  g.set_port(c, pcd, Port{a, pab, 0, w_ab});
  g.set_port(b, pba, Port{d, pdc, 0, w_cd});
  g.set_port(d, pdc, Port{b, pba, 0, w_cd});
}

PortedGraph gen_two_cliques_crossed(std::size_t n, std::optional<Bridge> bridge) {
  if (n < 2) throw InvalidInput("gen_two_cliques_crossed: n must be at least 2");
  PortedGraph g(2 * n);
  for (std::size_t half = 0; half < 2; ++half) {
    const auto base = static_cast<NodeId>(half * n);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) g.add_edge(base + u, base + v);
  }
  if (bridge) {
    const auto& br = *bridge;
    if (!(br.a < br.b && br.b < n && n <= br.c && br.c < br.d && br.d < 2 * n)) {
      throw InvalidInput("gen_two_cliques_crossed: bridge must satisfy a<b<n<=c<d<2n");
    }
    apply_bridge(g, br.a, br.b, br.c, br.d);
    g.reindex_edges();
  }
  return g;
}

std::vector<std::vector<std::pair<std::size_t, std::size_t>>> perfect_matchings(std::size_t n,
                                                                                std::size_t count) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  const std::size_t k = n - 1;
  for (std::size_t round = 0; round < count; ++round) {
    std::vector<std::pair<std::size_t, std::size_t>> mt;
    mt.emplace_back(round, k);
    for (std::size_t i = 1; i < n / 2; ++i) mt.emplace_back((round + i) % k, (round + k - i) % k);
    out.push_back(std::move(mt));
  }
  return out;
}

BfsHardInstance gen_bfs_hard_instance(std::size_t n, std::size_t d, std::uint64_t perm_seed) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("gen_bfs_hard_instance: n must be even and positive");
  if (d < 1 || d > n - 1) throw InvalidInput("gen_bfs_hard_instance: need 1 <= d <= n-1");
  BfsHardInstance inst;
  inst.graph = PortedGraph(2 * n + d + 1);
  auto& g = inst.graph;
  inst.root = 0;
  for (std::size_t i = 0; i < n; ++i) inst.level_a.push_back(static_cast<NodeId>(1 + i));
  for (std::size_t j = 0; j < d; ++j) inst.level_b.push_back(static_cast<NodeId>(1 + n + j));
  for (std::size_t i = 0; i < n; ++i) inst.level_c.push_back(static_cast<NodeId>(1 + n + d + i));

  for (auto a : inst.level_a) g.add_edge(inst.root, a);
  for (auto a : inst.level_a)
    for (auto b : inst.level_b) g.add_edge(a, b);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(inst.level_a[i], inst.level_c[i]);
  for (const auto& mt : perfect_matchings(n, d)) {
    std::vector<std::pair<NodeId, NodeId>> named;
    for (auto [x, y] : mt) {
      g.add_edge(inst.level_c[x], inst.level_c[y]);
      named.emplace_back(inst.level_c[x], inst.level_c[y]);
    }
    inst.c_matchings.push_back(std::move(named));
  }
  Rng rng(perm_seed);
  shuffle_ports(g, rng);
  return inst;
}

void shuffle_ports(PortedGraph& g, Rng& rng) {
  const auto n = g.node_count();
  std::vector<std::vector<PortIndex>> perm(n);  // perm[v][old] = new
  for (NodeId v = 0; v < n; ++v) {
    perm[v].resize(g.degree(v));
    std::iota(perm[v].begin(), perm[v].end(), 0);
    std::shuffle(perm[v].begin(), perm[v].end(), rng);
  }
  std::vector<std::vector<Port>> fresh(n);
  for (NodeId v = 0; v < n; ++v) {
    fresh[v].resize(g.degree(v));
    for (PortIndex p = 0; p < g.degree(v); ++p) {
      Port s = g.port(v, p);
      s.back = perm[s.to][s.back];
      fresh[v][perm[v][p]] = s;
    }
  }
  for (NodeId v = 0; v < n; ++v)
    for (PortIndex p = 0; p < fresh[v].size(); ++p) g.set_port(v, p, fresh[v][p]);
  g.reindex_edges();
}

}  // namespace qroute
