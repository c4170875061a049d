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
#include <vector>

#include "qroute/errors.hpp"
#include "qroute/ported_graph.hpp"

namespace qroute {

class EmptyMarkedSet : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class UnreachableMarkedSet : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/** Network edge; ports refer to the base graph when known. */
struct NetEdge {
  NodeId u;
  NodeId v;
  double weight;
  PortIndex pu = kNoPort;
  PortIndex pv = kNoPort;
};

/** Identifies a walk inside a batch: owning cluster plus auxiliary payload. */
struct Token {
  std::uint64_t owner = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  bool operator==(const Token&) const = default;
};

/**
 * Rooted weighted network with a marked set.
 *
 * Node ids live in [0, node_space) so networks can share ids with a base
 * graph without copying it.
 */
struct ElectricNetwork {
  std::size_t node_space = 0;
  std::vector<NetEdge> edges;
  NodeId root = 0;
  std::vector<char> marked;  // size node_space, or empty for "nothing marked"
  Token token;

  ElectricNetwork() = default;
  ElectricNetwork(std::size_t nodes, NodeId r) : node_space(nodes), root(r), marked(nodes, 0) {}

  bool is_marked(NodeId v) const { return !marked.empty() && marked[v] != 0; }
  void mark(NodeId v) {
    if (marked.empty()) marked.assign(node_space, 0);
    marked[v] = 1;
  }
  NetEdge& add_edge(NodeId u, NodeId v, double w, PortIndex pu = kNoPort, PortIndex pv = kNoPort) {
    edges.push_back(NetEdge{u, v, w, pu, pv});
    return edges.back();
  }

  /** Root plus every edge endpoint, sorted. */
  std::vector<NodeId> vertices() const;
  /** Vertices reachable from the root through `edges`, sorted. */
  std::vector<NodeId> root_component() const;
  /** Marked vertices in the root's component, sorted. */
  std::vector<NodeId> marked_in_component() const;
  /** Drops edges outside the root's component. */
  void restrict_to_root_component();
};

/** Flow value per network edge, oriented from edges[i].u to edges[i].v. */
struct UnitFlow {
  std::vector<double> values;
};

/** Sum of f_e^2 / w_e. Throws PreconditionError naming a node that breaks conservation. */
double flow_energy(const ElectricNetwork& net, const UnitFlow& flow, double tol = 1e-9);

/** R_eff(root, M) by a grounded Laplacian solve. Returns 0 when the root is marked. */
double effective_resistance(const ElectricNetwork& net);

double total_weight(const ElectricNetwork& net);

/** Current flow realising the effective resistance (potential differences times conductance). */
UnitFlow electrical_flow(const ElectricNetwork& net);

}  // namespace qroute
