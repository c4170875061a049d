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
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qroute/ported_graph.hpp"
#include "qroute/rng.hpp"

namespace qroute {

/** Connected simple graph: random spanning tree, then random extra edges.
 *  Weighted output uses a random permutation of 1..m, so weights are distinct. */
PortedGraph gen_random_connected(std::size_t n, std::size_t m, bool weighted, std::uint64_t seed);

PortedGraph gen_star(std::size_t n);  // node 0 is the centre
PortedGraph gen_path(std::size_t n);
PortedGraph gen_cycle(std::size_t n);
PortedGraph gen_complete(std::size_t n);
PortedGraph gen_grid(std::size_t rows, std::size_t cols);

/** 0-based bridge: a < b < n <= c < d < 2n. */
struct Bridge {
  NodeId a, b, c, d;
};

/**
 * Two disjoint n-cliques on [0,n) and [n,2n). With a bridge, {a,b} and {c,d}
 * are replaced by {a,c} and {b,d} inside the same port slots.
 */
PortedGraph gen_two_cliques_crossed(std::size_t n, std::optional<Bridge> bridge = std::nullopt);

/** Rewrites {a,b},{c,d} into {a,c},{b,d} in place. Any order of a,b and c,d. */
void apply_bridge(PortedGraph& g, NodeId a, NodeId b, NodeId c, NodeId d);

struct BfsHardInstance {
  PortedGraph graph;
  NodeId root = 0;
  std::vector<NodeId> level_a, level_b, level_c;  // level_c[i] is matched to level_a[i]
  std::vector<std::vector<std::pair<NodeId, NodeId>>> c_matchings;
};

/** Root, level A (n), level B (d), level C (n) with d perfect matchings inside C. */
BfsHardInstance gen_bfs_hard_instance(std::size_t n, std::size_t d, std::uint64_t perm_seed);

/** The first count rounds of the circle-method 1-factorisation of K_n (n even). */
std::vector<std::vector<std::pair<std::size_t, std::size_t>>> perfect_matchings(std::size_t n,
                                                                                std::size_t count);

/** Shuffles every port array, keeping reverse ports consistent. */
void shuffle_ports(PortedGraph& g, Rng& rng);

}  // namespace qroute
