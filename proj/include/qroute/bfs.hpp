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
#include <string>
#include <vector>

#include "qroute/config.hpp"
#include "qroute/mst.hpp"
#include "qroute/ported_graph.hpp"
#include "qroute/rng.hpp"

namespace qroute {

class SimContext;

/** A node's place in one tree of a family. */
struct TreeMembership {
  std::uint32_t tree = 0;
  PortIndex parent = kNoPort;  // kNoPort at the root
  std::uint32_t depth = 0;
  std::vector<PortIndex> children;
};

struct FamilyTree {
  NodeId root = 0;
  std::uint32_t depth = 0;  // deepest member
  std::vector<NodeId> members;  // in join order, root first
  std::uint32_t phase = 0;      // cover phase that built it
};

/** Rooted trees that may overlap; memberships per node are sorted by tree. */
struct TreeFamily {
  std::vector<FamilyTree> trees;
  std::vector<std::vector<TreeMembership>> membership;

  /** Null when v is not in the tree. */
  const TreeMembership* find(NodeId v, std::uint32_t tree) const;
};

/** Diagnostics for broken parent/child links or depths. */
std::vector<std::string> check_tree_family(const PortedGraph& g, const TreeFamily& f);

struct LowDepthOptions {
  std::uint32_t depth = 1;       // d
  std::uint32_t congestion = 1;  // k, subphases per phase
  double alpha = 0.01;           // Grover failure bound per search
  // count sources within d hops of every node and compare against k
  bool audit = true;
};

struct LowDepthStats {
  std::uint64_t searches = 0;
  std::uint64_t joins = 0;
  std::uint32_t max_sources_near = 0;  // audit only
  bool congestion_ok = true;           // audit only
};

struct LowDepthRun : AlgorithmRun {
  TreeFamily forest;
  LowDepthStats stats;
};

/**
 * Depth-d BFS trees from every source, grown outside in: in each of k
 * subphases per layer, every node searches its ports for a neighbour in
 * a tree it has not joined yet and joins the first one found.
 */
TreeFamily low_depth_bfs_in(SimContext& ctx, const std::vector<NodeId>& sources, const LowDepthOptions& opts,
                            Rng& rng, LowDepthStats* stats = nullptr);
LowDepthRun low_depth_bfs(const PortedGraph& g, const std::vector<NodeId>& sources, const LowDepthOptions& opts,
                          std::uint64_t seed = 0, const Constants& constants = {});

/** Largest number of sources within `d` hops of any node. */
std::uint32_t max_sources_within(const PortedGraph& g, const std::vector<NodeId>& sources, std::uint32_t d);

struct CoverOptions {
  std::uint32_t kappa = 1;
  std::uint32_t W = 1;
  double delta = 0.01;
  std::uint64_t seed = 0;
  Constants constants{};
  bool audit = true;
};

struct CoverPhase {
  double sample_rate = 0.0;
  std::uint32_t sampled = 0;
  std::uint32_t depth = 0;         // exploration depth
  std::uint32_t cover_radius = 0;  // nodes this close to a root become covered
  std::uint32_t congestion = 0;    // k passed to the exploration
  std::uint32_t newly_covered = 0;
  LowDepthStats explore;
};

struct CoverOutput {
  TreeFamily family;
  std::uint32_t kappa = 0;
  std::uint32_t W = 0;
  std::vector<std::uint32_t> covered_in;  // phase that covered each node
  std::vector<CoverPhase> phases;
};

struct CoverRun : AlgorithmRun {
  CoverOutput cover;
};

/** Grover failure bound used by the cover and the BFS: min(n^-a, delta / n). */
double search_alpha(std::size_t n, double delta, const Constants& k);

CoverOutput sparse_cover_in(SimContext& ctx, const CoverOptions& opts, Rng& rng);
CoverRun sparse_cover(const PortedGraph& g, const CoverOptions& opts = {});

struct CoverAudit {
  std::uint32_t max_depth = 0;
  double depth_bound = 0.0;  // depth_coeff * W * kappa
  std::uint32_t max_membership = 0;
  double membership_bound = 0.0;  // membership_coeff * kappa * n^(1/kappa) * log2 n
  std::vector<NodeId> uncovered;  // nodes whose W-neighbourhood no tree contains
  std::vector<std::string> structure;  // broken links
  bool depth_ok = false;
  bool sparsity_ok = false;
  bool neighbourhood_ok = false;
  bool ok() const { return depth_ok && sparsity_ok && neighbourhood_ok && structure.empty(); }
};

inline constexpr double kCoverDepthCoeff = 2.0;

/** Checks depth, sparsity and neighbourhood containment against true hop distances. */
CoverAudit audit_cover(const PortedGraph& g, const CoverOutput& cover, const Constants& k = {});

struct BfsOptions {
  double delta = 0.01;
  std::uint64_t seed = 0;
  Constants constants{};
};

struct BfsOutput {
  NodeId root = 0;
  std::vector<std::uint32_t> layer;
  std::vector<PortIndex> parent;  // kNoPort at the root
  std::vector<std::vector<PortIndex>> children;
};

struct BfsStats {
  std::uint32_t phases = 0;
  std::uint32_t last_join_phase = 0;
  std::uint32_t termination_checks = 0;
  std::vector<std::uint32_t> searches;  // Grover searches per node
  std::uint32_t max_searches = 0;
  std::size_t cover_trees = 0;
  std::uint64_t cover_messages = 0;
};

struct BfsRun : AlgorithmRun {
  BfsOutput output;
  BfsStats stats;
  CoverOutput cover;
};

/** Diagnostics for broken links, layer steps or layers that differ from hop distances. */
std::vector<std::string> check_bfs_output(const PortedGraph& g, const BfsOutput& out);

BfsRun bfs(const PortedGraph& g, NodeId root, const BfsOptions& opts = {});

}  // namespace qroute
