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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qroute {

using NodeId = std::uint32_t;
using PortIndex = std::uint32_t;  // 0-based within a node's port array
using EdgeId = std::uint32_t;

inline constexpr PortIndex kNoPort = std::numeric_limits<PortIndex>::max();
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/** One slot of a node's port array. */
struct Port {
  NodeId to = kNoNode;    // f_v(p)
  PortIndex back = kNoPort;  // q with f_to(q) = v
  EdgeId edge = 0;
  double weight = 1.0;

  bool operator==(const Port&) const = default;
};

struct EdgeSpec {
  NodeId u;
  NodeId v;
  std::optional<double> weight;
};

struct EdgeRecord {
  NodeId u;
  NodeId v;
  PortIndex pu;  // port of u leading to v
  PortIndex pv;
  double weight;
};

/**
 * Undirected simple graph with per-node port arrays.
 *
 * Ports are numbered from 0 in the order edges were inserted. The raw
 * mutators exist for perturbation experiments and may break invariants;
 * run validate() afterwards.
 */
class PortedGraph {
 public:
  PortedGraph() = default;
  explicit PortedGraph(std::size_t n, bool weighted = false)
      : adj_(n), weighted_(weighted) {}

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool weighted() const { return weighted_; }

  std::size_t degree(NodeId v) const { return adj_[v].size(); }
  std::span<const Port> ports(NodeId v) const { return adj_[v]; }
  const Port& port(NodeId v, PortIndex p) const { return adj_[v][p]; }
  NodeId neighbor(NodeId v, PortIndex p) const { return adj_[v][p].to; }

  const std::vector<EdgeRecord>& edges() const { return edges_; }
  const EdgeRecord& edge(EdgeId e) const { return edges_[e]; }

  /** Port of u leading to v, or kNoPort. Linear in deg(u). */
  PortIndex port_to(NodeId u, NodeId v) const;

  /** Appends edge {u,v} to both port arrays. No checks beyond range. */
  EdgeId add_edge(NodeId u, NodeId v, double weight = 1.0);

  // Raw access for perturbation experiments.
  void set_port(NodeId v, PortIndex p, const Port& slot) { adj_[v][p] = slot; }
  void set_weighted(bool w) { weighted_ = w; }
  /** Rebuilds the edge table from the port arrays (first endpoint = smaller id). */
  void reindex_edges();

  std::size_t max_degree() const;

 private:
  std::vector<std::vector<Port>> adj_;
  std::vector<EdgeRecord> edges_;
  bool weighted_ = false;
};

/** Builds a graph with ports assigned in input order; throws InvalidInput. */
PortedGraph build_from_edge_list(const std::vector<EdgeSpec>& edges, std::size_t n);

/** One human-readable entry per broken invariant; empty when valid. */
std::vector<std::string> validate(const PortedGraph& g);

}  // namespace qroute
