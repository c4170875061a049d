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
#include <functional>
#include <string>
#include <vector>

#include "qroute/ported_graph.hpp"
#include "qroute/rng.hpp"

namespace qroute {

class SimContext;

struct TreeLinks {
  PortIndex parent = kNoPort;  // kNoPort at a cluster root
  std::vector<PortIndex> children;
  std::uint32_t depth = 0;
};

struct Cluster {
  std::uint64_t id = 0;  // the root's random id
  NodeId root = 0;
  std::vector<NodeId> members;  // root first, then by depth
  std::uint32_t height = 0;
};

/**
 * A partition of the nodes into clusters, each spanned by a rooted tree.
 * Per-node data is indexed by node; clusters by position.
 */
class Clustering {
 public:
  std::vector<std::uint64_t> node_id;    // random ids
  std::vector<std::uint32_t> cluster_of;
  std::vector<TreeLinks> tree;
  std::vector<Cluster> clusters;

  /** Every node its own cluster. */
  static Clustering singletons(const PortedGraph& g, std::vector<std::uint64_t> ids);
  /** Clusters from parent ports (kNoPort marks roots). Throws InvalidInput on cycles. */
  static Clustering from_parents(const PortedGraph& g, std::vector<std::uint64_t> ids,
                                 const std::vector<PortIndex>& parent);

  std::size_t size(std::uint32_t c) const { return clusters[c].members.size(); }
  bool same(NodeId u, NodeId v) const { return cluster_of[u] == cluster_of[v]; }
  bool is_tree_port(NodeId v, PortIndex p) const;

  std::vector<PortIndex> parents() const;
  /** Diagnostics for broken parent/child links, roots, sizes or depths. */
  std::vector<std::string> validate(const PortedGraph& g) const;
};

/** Size of the random-id space, n^3 (at least 8). */
std::uint64_t id_space_for(std::size_t n);
/** Distinct ids drawn uniformly from [0, n^3). */
std::vector<std::uint64_t> draw_node_ids(std::size_t n, Rng& rng);

struct ConvergecastResult {
  std::uint64_t value = 0;
  NodeId node = kNoNode;  // holder of the minimum, ties to the smaller random id
};

/**
 * Minimum over a cluster's nodes, collected at the root. Each node reports
 * once all children have; costs n_i - 1 messages and height rounds, and
 * advances the context clock by the height.
 */
ConvergecastResult convergecast_min(SimContext& ctx, const Clustering& cl, std::uint32_t c,
                                    const std::vector<std::uint64_t>& value);
ConvergecastResult convergecast_min(SimContext& ctx, const Clustering& cl, std::uint32_t c,
                                    const std::function<std::uint64_t(NodeId)>& value);

/** Root-to-all push over the tree: n_i - 1 messages, height rounds. */
void broadcast(SimContext& ctx, const Clustering& cl, std::uint32_t c);

}  // namespace qroute
