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

#include "qroute/ledger.hpp"
#include "qroute/ported_graph.hpp"

namespace qroute {

/**
 * Adjacency-array access to a hidden graph. Degrees are public; each
 * query (v, p) reveals the neighbour and its reverse port.
 */
class QueryOracle {
 public:
  struct Answer {
    NodeId u = kNoNode;
    PortIndex q = kNoPort;
    bool operator==(const Answer&) const = default;
  };

  explicit QueryOracle(const PortedGraph& hidden, bool trace = false);

  std::size_t node_count() const { return degrees_.size(); }
  const std::vector<std::size_t>& degrees() const { return degrees_; }

  /** Throws InvalidInput when v or p is out of range. */
  Answer query(NodeId v, PortIndex p);
  /** The same query issued `times` times; the counter grows by `times`. */
  Answer query_repeated(NodeId v, PortIndex p, std::uint64_t times);

  std::uint64_t count() const { return count_; }
  bool tracing() const { return tracing_; }
  const std::vector<std::pair<NodeId, PortIndex>>& trace() const { return trace_; }

 private:
  const PortedGraph* hidden_;
  std::vector<std::size_t> degrees_;
  std::uint64_t count_ = 0;
  bool tracing_;
  std::vector<std::pair<NodeId, PortIndex>> trace_;
};

struct ReductionResult {
  std::uint64_t queries = 0;
  std::uint64_t ledger_messages = 0;
  std::vector<std::string> issues;  // unknown ports, receiver mismatches, gaps
  bool equal() const { return issues.empty() && queries == ledger_messages; }
};

/**
 * Replays a run's transcript against an oracle on the same graph, one
 * query per message, and compares the query count with the ledger.
 */
ReductionResult reduce_protocol_to_queries(const PortedGraph& g, const Transcript& transcript,
                                           const MessageLedger& ledger);

/** How two encodings are compared at a query. */
enum class EntryCompare {
  kNeighbour,  // the array entry f_v(p) only
  kAnswer,     // the full answer (f_v(p), reverse port)
};
const char* to_string(EntryCompare c);

struct RelationParams {
  std::string family;
  std::size_t n = 0;
  std::size_t d = 0;
  EntryCompare compare = EntryCompare::kNeighbour;
  std::uint64_t m_lower = 0;
  std::uint64_t m_prime = 0;
  std::uint64_t l_max = 0;
  double bound = 0.0;  // sqrt(m_lower * m_prime / l_max)
  std::uint64_t pairs = 0;  // related pairs enumerated
  std::uint64_t min_diff = 0, max_diff = 0;  // differing queries per related pair
  bool symmetric = true;
  bool separation_ok = true;  // the two sides differ in the property decided

  // bfs family: m_lower / (n d^2)
  double theta_constant = 0.0;
  // connectivity family: the ordered-tuple count n^4 and the bound it gives with l = n^2
  std::uint64_t tuples = 0;
  std::uint64_t degenerate_tuples = 0;
  std::uint64_t l_tuple_bound = 0;
  double bound_tuples = 0.0;
};

/** Work units (pairs times table size) an enumeration may use. */
inline constexpr std::uint64_t kEnumerationBudget = 20'000'000;

/**
 * Relation on the three-level BFS instances: swap the ports of a toward
 * b in B and c = M(a), then the ports of c toward a and a C-neighbour c'.
 * Explores a base encoding and all its neighbours. Throws BudgetExceeded.
 */
RelationParams bfs_relation_params(std::size_t n, std::size_t d, EntryCompare compare = EntryCompare::kNeighbour,
                                   std::uint64_t budget = kEnumerationBudget);

/**
 * Two disjoint n-cliques against every bridged rewrite {a,b},{c,d} ->
 * {a,c},{b,d}. Counts distinct encodings; degenerate tuples are reported,
 * not related. Throws BudgetExceeded.
 */
RelationParams connectivity_relation_params(std::size_t n, EntryCompare compare = EntryCompare::kAnswer,
                                            std::uint64_t budget = kEnumerationBudget);

/** Queries whose answers differ between two encodings on the same node set. */
std::vector<std::pair<NodeId, PortIndex>> query_diff(const PortedGraph& x, const PortedGraph& y,
                                                     EntryCompare compare = EntryCompare::kAnswer);

std::string relation_json(const RelationParams& r);

}  // namespace qroute
