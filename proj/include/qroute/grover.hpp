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
#include <vector>

#include "qroute/config.hpp"
#include "qroute/ported_graph.hpp"
#include "qroute/rng.hpp"

namespace qroute {

class SimContext;

/** Search over a node's ports for one whose checking predicate holds. */
struct GroverTask {
  NodeId owner = 0;
  std::vector<PortIndex> domain;               // empty means all ports of owner
  std::function<bool(PortIndex)> marked;       // evaluated by the checking exchange
  // when set, the marked ports themselves; `marked` is then not consulted
  std::optional<std::vector<PortIndex>> marked_ports;
  double epsilon = 1.0;
  double alpha = 0.1;
  std::uint64_t check_messages = 2;  // query out, reply back
  std::uint64_t check_rounds = 2;
};

struct GroverResult {
  std::optional<PortIndex> found;
  std::uint64_t oracle_calls = 0;  // Grover iterations count 2, verification checks 1
  std::uint64_t iterations = 0;
  std::uint64_t checks = 0;
  std::uint64_t stages_run = 0;
  std::uint64_t messages = 0;
  std::uint64_t rounds = 0;
};

/** ceil(ln(1/alpha) / ln 3). */
std::uint64_t grover_stages(double alpha);
/** Oracle calls allowed per stage: ceil(coeff / sqrt(epsilon)). */
std::uint64_t grover_stage_budget(double epsilon, const Constants& k = {});
/** Rounds after which any search over `domain_size` ports has finished. */
std::uint64_t grover_round_bound(std::size_t domain_size, double epsilon, double alpha, std::uint64_t check_rounds,
                                 const Constants& k = {});

/**
 * Unknown-count Grover search with the exponential schedule. Success of a
 * run of j iterations is drawn from sin^2((2j+1) theta), sin theta =
 * sqrt(t/|X|); that law is exact for a single token, so both fidelities
 * sample it. Every candidate is checked before it is returned.
 */
GroverResult distributed_grover(const PortedGraph& g, const GroverTask& task, Rng& rng, const Constants& k = {});

/** Charges a finished search to the context: queries from the owner, replies from the neighbour. */
void charge_grover(SimContext& ctx, const GroverTask& task, const GroverResult& res, std::uint64_t at);

}  // namespace qroute
