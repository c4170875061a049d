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
#include <optional>
#include <string>
#include <vector>

#include "qroute/cluster.hpp"
#include "qroute/config.hpp"
#include "qroute/find_edge.hpp"
#include "qroute/ledger.hpp"

namespace qroute {

class SimContext;

struct MstOptions {
  double delta = 0.01;
  Fidelity fidelity = Fidelity::kExact;
  std::uint64_t seed = 0;
  Constants constants{};
  // off: run ceil(log2 n) + 1 phases and stop without the final check
  bool termination_detection = true;
  // on: return one tree per component instead of raising Disconnected
  bool allow_disconnected = false;
  DetectionCache* cache = nullptr;
  NetworkObserver observer;
  // called with the fragments after every subphase
  std::function<void(const Clustering&)> fragment_observer;
};

/** Per-node tree ports, tagged parent or child, and the fragment each node ended in. */
struct MstOutput {
  std::vector<PortIndex> parent;               // kNoPort at a root
  std::vector<std::vector<PortIndex>> children;
  std::vector<std::uint64_t> fragment_id;      // the root's random id
  std::vector<std::uint64_t> node_id;
  std::vector<NodeId> roots;
  std::vector<EdgeId> edges;                   // sorted
};

struct MstStats {
  std::uint32_t phases = 0;
  std::uint32_t subphases = 0;
  std::uint32_t merges = 0;
  std::uint32_t aborted_merges = 0;
  std::uint64_t walks = 0;
  std::uint64_t phase1_hits = 0;
};

struct AlgorithmRun {
  MessageLedger ledger;
  Transcript transcript;
  std::uint64_t rounds = 0;
};

struct MstRun : AlgorithmRun {
  MstOutput output;
  MstStats stats;
};

/** Diagnostics when ports disagree across an edge or the edges do not form a forest. */
std::vector<std::string> check_mst_output(const PortedGraph& g, const MstOutput& out);

/** Runs inside an existing context (clock and ledger continue). */
MstOutput mst_in(SimContext& ctx, const MstOptions& opts, MstStats* stats = nullptr);
MstRun mst(const PortedGraph& g, const MstOptions& opts = {});

struct LeaderRun : AlgorithmRun {
  std::vector<bool> elected;  // ELECTED where true, NON-ELECTED elsewhere
  std::vector<NodeId> leaders;
  MstOutput tree;
};

/** The root of each final fragment is elected; one per component. */
LeaderRun leader_election(const PortedGraph& g, const MstOptions& opts = {});

struct BroadcastRun : AlgorithmRun {
  std::vector<std::optional<std::uint64_t>> received;
  std::uint64_t tree_messages = 0;  // n - 1 on a connected graph
  MstOutput tree;
};

/** Builds the spanning tree, then floods `item` from `source` over it. */
BroadcastRun broadcast_via_st(const PortedGraph& g, NodeId source, std::uint64_t item, const MstOptions& opts = {});

}  // namespace qroute
