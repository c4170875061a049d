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
#include <limits>
#include <optional>
#include <vector>

#include "qroute/cluster.hpp"
#include "qroute/config.hpp"
#include "qroute/electric.hpp"
#include "qroute/walk.hpp"

namespace qroute {

class SimContext;

/** Edge order used for minimum searches: by weight, then by edge id. */
class EdgeRanks {
 public:
  explicit EdgeRanks(const PortedGraph& g);
  std::uint32_t of(EdgeId e) const { return rank_[e]; }
  EdgeId edge_at(std::uint32_t r) const { return order_[r]; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(rank_.size()); }
  /** (rank, port) pairs of a node, sorted by rank. */
  const std::vector<std::pair<std::uint32_t, PortIndex>>& at(NodeId v) const { return by_node_[v]; }

 private:
  std::vector<std::uint32_t> rank_;
  std::vector<EdgeId> order_;
  std::vector<std::vector<std::pair<std::uint32_t, PortIndex>>> by_node_;
};

/** Inclusive rank window; edges outside it are ignored unless they are tree edges. */
struct RankRange {
  std::uint32_t lo = 0;
  std::uint32_t hi = std::numeric_limits<std::uint32_t>::max();
};

struct OutEdge {
  NodeId node = kNoNode;  // endpoint inside the cluster
  PortIndex port = kNoPort;
  EdgeId edge = 0;
  double weight = 1.0;
};

/** Sees every network built for an id-range walk, with its n_i, R and W. */
using NetworkObserver = std::function<void(const ElectricNetwork& net, std::size_t n_i, double R, double W)>;

struct FindOptions {
  Fidelity fidelity = Fidelity::kExact;
  double delta = 0.01;  // failure budget per cluster and call
  DetectionCache* cache = nullptr;
  NetworkObserver observer;
};

struct FindStats {
  std::uint64_t walks = 0;
  std::uint64_t phase1_hits = 0;
  std::uint64_t probes = 0;
};

/**
 * Outgoing-edge search over a fixed clustering. Clusters larger than
 * n_star stay passive and report nothing.
 */
class OutgoingSearch {
 public:
  OutgoingSearch(SimContext& ctx, const Clustering& cl, const EdgeRanks& ranks, std::uint64_t n_star,
                 FindOptions opts, Rng& rng);

  /** Any outgoing edge per cluster, restricted to the cluster's rank window. */
  std::vector<std::optional<OutEdge>> find_any(const std::vector<RankRange>& window);
  std::vector<std::optional<OutEdge>> find_any();
  /** Minimum-rank outgoing edge per cluster. */
  std::vector<std::optional<OutEdge>> find_min();

  /** Clusters flagged here stay silent regardless of size. */
  void set_passive(std::vector<char> passive) { passive_ = std::move(passive); }

  const FindStats& stats() const { return stats_; }
  /** Size of the random-id space searched in Phase 2. */
  std::uint64_t id_space() const { return id_space_; }
  /** Walk steps of a full Phase-2 binary search (existence test included). */
  std::uint32_t id_search_steps() const;

  static double walk_R(std::size_t n_i);
  static double walk_W(std::size_t n_i);

 private:
  bool active(std::uint32_t c) const;
  bool in_range(NodeId v, PortIndex p, const RankRange& r) const;
  bool good(NodeId v, const RankRange& r) const;
  std::size_t restricted_degree(NodeId v, const RankRange& r) const;
  bool has_good_in(std::uint32_t c, std::uint64_t a, std::uint64_t b, const RankRange& r) const;

  std::vector<std::optional<OutEdge>> find_any_in(const std::vector<std::uint32_t>& clusters,
                                                  const std::vector<RankRange>& window, double delta_step);
  std::vector<bool> exists_in(const std::vector<std::uint32_t>& clusters, const std::vector<RankRange>& window,
                              double delta_step);
  /** Phase 1 without probing: per listed cluster the high-degree node of least id, or kNoNode. */
  std::vector<NodeId> phase1(const std::vector<std::uint32_t>& clusters, const std::vector<RankRange>& window);
  /** Ports probed in ascending order until an outgoing one; reports it to the root. */
  std::optional<OutEdge> probe_and_report(NodeId w, const RankRange& r);
  /** One lock-step walk round over [a_c, b_c) per cluster; returns verdicts. */
  std::vector<bool> walk_round(const std::vector<std::uint32_t>& clusters, const std::vector<std::uint64_t>& a,
                               const std::vector<std::uint64_t>& b, const std::vector<RankRange>& window,
                               double delta_step);
  ElectricNetwork build_network(std::uint32_t c, std::uint64_t a, std::uint64_t b, const RankRange& r) const;

  SimContext& ctx_;
  const Clustering& cl_;
  const EdgeRanks& ranks_;
  std::uint64_t n_star_;
  FindOptions opts_;
  Rng& rng_;
  std::uint64_t id_space_;
  FindStats stats_;
  std::vector<std::vector<std::uint32_t>> out_ranks_;  // per node, outgoing only, sorted
  std::vector<std::vector<NodeId>> by_id_;             // per cluster, members sorted by random id
  std::vector<char> passive_;
};

/** Convenience wrappers building a one-shot search. */
std::vector<std::optional<OutEdge>> find_any(SimContext& ctx, const Clustering& cl, std::uint64_t n_star,
                                             const FindOptions& opts, Rng& rng);
std::vector<std::optional<OutEdge>> find_min(SimContext& ctx, const Clustering& cl, std::uint64_t n_star,
                                             const FindOptions& opts, Rng& rng);

}  // namespace qroute
