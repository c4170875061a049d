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

// Plain sequential graph algorithms. The distributed code never calls
// these to make decisions; they back invariant checks and the CLI's
// "invariant-clean" verdicts.

#include <cstdint>
#include <vector>

#include "qroute/ported_graph.hpp"

namespace qroute::reference {

inline constexpr std::uint32_t kUnreached = 0xffffffffu;

/** Hop distances from root; kUnreached where unreachable. */
std::vector<std::uint32_t> bfs_distances(const PortedGraph& g, NodeId root);

/** Component label per node, labels 0..k-1 in order of smallest member. */
std::vector<std::uint32_t> components(const PortedGraph& g);
std::size_t component_count(const PortedGraph& g);

/** Largest finite eccentricity. */
std::uint32_t diameter(const PortedGraph& g);

/** Minimum spanning forest by Kruskal, ties broken by edge id. Sorted edge ids. */
std::vector<EdgeId> kruskal(const PortedGraph& g);

/** True when all edge weights are pairwise distinct. */
bool unique_weights(const PortedGraph& g);

}  // namespace qroute::reference
