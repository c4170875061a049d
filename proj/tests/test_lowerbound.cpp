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

#include <catch_amalgamated.hpp>
#include <cmath>
#include <map>
#include <set>

#include "qroute/bfs.hpp"
#include "qroute/errors.hpp"
#include "qroute/generators.hpp"
#include "qroute/lowerbound.hpp"
#include "qroute/mst.hpp"
#include "qroute/sim.hpp"

using namespace qroute;

namespace {

class Flood : public NodeProgram {
 public:
  explicit Flood(bool source) : has_(source) {}
  void on_round(NodeView& v) override {
    if (!has_ && !v.inbox().empty()) has_ = true;
    if (has_) {
      for (PortIndex p = 0; p < v.degree(); ++p) v.send(p, {1});
      v.terminate();
    }
  }

 private:
  bool has_;
};

// Neighbour entries that differ between two graphs, counted by hand.
std::size_t neighbour_diff(const PortedGraph& x, const PortedGraph& y) {
  std::size_t d = 0;
  for (NodeId v = 0; v < x.node_count(); ++v)
    for (PortIndex p = 0; p < x.degree(v); ++p) d += x.neighbor(v, p) != y.neighbor(v, p);
  return d;
}

}  // namespace

TEST_CASE("adjacency-array queries") {
  const auto g = build_from_edge_list({{0, 1, {}}, {1, 2, {}}, {0, 2, {}}}, 3);
  QueryOracle o(g, true);
  CHECK(o.degrees() == std::vector<std::size_t>{2, 2, 2});
  const PortIndex p = g.port_to(0, 1);
  const auto a = o.query(0, p);
  CHECK(a.u == 1);
  CHECK(a.q == g.port_to(1, 0));
  CHECK(o.query(0, p) == a);
  CHECK(o.count() == 2);
  CHECK(o.query_repeated(2, 0, 5).u == g.neighbor(2, 0));
  CHECK(o.count() == 7);
  CHECK(o.trace().size() == 7);  // repeats are traced one by one
  CHECK_THROWS_AS(o.query(0, 2), InvalidInput);
  CHECK_THROWS_AS(o.query(3, 0), InvalidInput);
}

TEST_CASE("bridging two cliques rewrites four entries") {
  const auto x = gen_two_cliques_crossed(5);
  const auto y = gen_two_cliques_crossed(5, Bridge{0, 1, 7, 8});
  CHECK(neighbour_diff(x, y) == 4);
  CHECK(query_diff(x, y, EntryCompare::kNeighbour).size() == 4);
  // reverse ports of untouched entries do not move, so full answers also differ in 4 places
  CHECK(query_diff(x, y, EntryCompare::kAnswer).size() == 4);
}

TEST_CASE("queries replay the transcript one for one") {
  SECTION("flooding on K4") {
    const auto g = gen_complete(4);
    std::vector<std::unique_ptr<NodeProgram>> progs;
    for (NodeId v = 0; v < 4; ++v) progs.push_back(std::make_unique<Flood>(v == 0));
    const auto run = run_protocol(g, progs);
    const auto red = reduce_protocol_to_queries(g, run.transcript, run.ledger);
    CHECK(red.equal());
    CHECK(red.queries == 12);
  }
  SECTION("mst") {
    const auto g = gen_random_connected(16, 40, true, 3);
    const auto run = mst(g, {});
    const auto red = reduce_protocol_to_queries(g, run.transcript, run.ledger);
    CHECK(red.issues.empty());
    CHECK(red.queries == run.ledger.total());
  }
  SECTION("bfs") {
    const auto g = gen_random_connected(16, 40, false, 4);
    const auto run = bfs(g, 0, {});
    const auto red = reduce_protocol_to_queries(g, run.transcript, run.ledger);
    CHECK(red.equal());
  }
  SECTION("a tampered transcript is caught") {
    const auto g = gen_complete(4);
    std::vector<std::unique_ptr<NodeProgram>> progs;
    for (NodeId v = 0; v < 4; ++v) progs.push_back(std::make_unique<Flood>(v == 0));
    auto run = run_protocol(g, progs);
    auto rec = run.transcript.records().front();
    rec.receiver = (rec.receiver + 1) % 4 == rec.sender ? (rec.receiver + 2) % 4 : (rec.receiver + 1) % 4;
    Transcript t;
    t.add(rec);
    for (std::size_t i = 1; i < run.transcript.records().size(); ++i) t.add(run.transcript.records()[i]);
    CHECK_FALSE(reduce_protocol_to_queries(g, t, run.ledger).equal());
  }
}

TEST_CASE("connectivity relation on n = 5") {
  const auto r = connectivity_relation_params(5);
  CHECK(r.tuples == 625);
  CHECK(r.separation_ok);
  CHECK(r.symmetric);
  CHECK(r.l_max <= 25);
  CHECK(r.bound_tuples == Catch::Approx(5.0));
  CHECK(r.bound == Catch::Approx(std::sqrt(double(r.m_lower) * r.m_prime / double(r.l_max))));

  // by hand: bridge every ordered (a,b,c,d) with a != b, c != d, and count the distinct
  // graphs that rewrite each entry of x; (a,b,c,d) and (b,a,d,c) give the same graph
  const auto x = gen_two_cliques_crossed(5);
  std::map<std::pair<NodeId, PortIndex>, std::set<std::vector<NodeId>>> touched;
  std::set<std::vector<NodeId>> ys;
  for (NodeId a = 0; a < 5; ++a)
    for (NodeId b = 0; b < 5; ++b)
      for (NodeId c = 5; c < 10; ++c)
        for (NodeId d = 5; d < 10; ++d) {
          if (a == b || c == d) continue;
          auto y = x;
          apply_bridge(y, a, b, c, d);
          std::vector<NodeId> key;
          for (NodeId v = 0; v < 10; ++v)
            for (PortIndex p = 0; p < 4; ++p) key.push_back(y.neighbor(v, p));
          ys.insert(key);
          for (NodeId v = 0; v < 10; ++v)
            for (PortIndex p = 0; p < 4; ++p)
              if (x.neighbor(v, p) != y.neighbor(v, p)) touched[{v, p}].insert(key);
        }
  std::uint64_t l = 0;
  for (const auto& [k, set] : touched) l = std::max<std::uint64_t>(l, set.size());
  CHECK(ys.size() == r.m_lower);
  CHECK(l == r.l_max);
  CHECK(l <= 25);
  CHECK(std::sqrt(625.0 * 1.0 / 25.0) == 5.0);
}

TEST_CASE("BFS relation") {
  const auto r = bfs_relation_params(6, 3);
  CHECK(r.l_max <= 27);
  CHECK(r.m_lower == r.m_prime);
  CHECK(r.m_lower > 0);
  CHECK(r.symmetric);
  CHECK(r.separation_ok);
  CHECK(r.theta_constant == Catch::Approx(double(r.m_lower) / (6.0 * 9.0)));
  CHECK(r.bound == Catch::Approx(std::sqrt(double(r.m_lower) * r.m_prime / double(r.l_max))));

  const auto small = bfs_relation_params(4, 1);
  CHECK(small.bound >= 1.0);
}

TEST_CASE("oversize relations are refused") {
  CHECK_THROWS_AS(connectivity_relation_params(40), BudgetExceeded);
  CHECK_THROWS_WITH(connectivity_relation_params(40), Catch::Matchers::ContainsSubstring("budget"));
  CHECK_THROWS_AS(bfs_relation_params(200, 50), BudgetExceeded);
  CHECK_THROWS_AS(connectivity_relation_params(5, EntryCompare::kAnswer, 10), BudgetExceeded);
}
