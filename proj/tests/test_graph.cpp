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
#include <set>
#include <sstream>

#include "qroute/errors.hpp"
#include "qroute/generators.hpp"
#include "qroute/graph_io.hpp"
#include "qroute/ported_graph.hpp"
#include "qroute/reference.hpp"
#include "support/oracles.hpp"

using namespace qroute;

namespace {

std::size_t count_prefix(const std::vector<std::string>& v, const std::string& prefix) {
  std::size_t c = 0;
  for (const auto& s : v) c += s.rfind(prefix, 0) == 0;
  return c;
}

}  // namespace

TEST_CASE("triangle and path build with consistent reverse ports") {
  const auto tri = build_from_edge_list({{0, 1, {}}, {1, 2, {}}, {0, 2, {}}}, 3);
  for (NodeId v = 0; v < 3; ++v) CHECK(tri.degree(v) == 2);
  CHECK(validate(tri).empty());

  const auto path = build_from_edge_list({{0, 1, {}}, {1, 2, {}}}, 3);
  CHECK(path.degree(0) == 1);
  CHECK(path.degree(1) == 2);
  CHECK(path.degree(2) == 1);
  for (NodeId v = 0; v < 3; ++v)
    for (PortIndex p = 0; p < path.degree(v); ++p) {
      const auto& s = path.port(v, p);
      CHECK(path.port(s.to, s.back).to == v);
      CHECK(path.port(s.to, s.back).back == p);
    }
  // ports follow input order
  CHECK(path.neighbor(1, 0) == 0);
  CHECK(path.neighbor(1, 1) == 2);
}

TEST_CASE("bad edge lists are rejected") {
  CHECK_THROWS_AS(build_from_edge_list({{0, 0, {}}}, 2), InvalidInput);
  CHECK_THROWS_WITH(build_from_edge_list({{0, 0, {}}}, 2), Catch::Matchers::ContainsSubstring("self-loop"));
  CHECK_THROWS_AS(build_from_edge_list({{0, 1, {}}, {1, 0, {}}}, 2), InvalidInput);
  CHECK_THROWS_AS(build_from_edge_list({{0, 5, {}}}, 2), InvalidInput);
  CHECK_THROWS_AS(build_from_edge_list({{0, 1, -1.0}}, 2), InvalidInput);
}

TEST_CASE("validate reports tampering") {
  auto g = build_from_edge_list({{0, 1, {}}, {1, 2, {}}, {0, 2, {}}}, 3);
  SECTION("port symmetry") {
    Port s = g.port(0, 0);
    s.back = s.back == 0 ? 1 : 0;
    g.set_port(0, 0, s);
    const auto v = validate(g);
    CHECK(v.size() == 1);
    CHECK(count_prefix(v, "port symmetry") == 1);
  }
  SECTION("weight positivity") {
    Port a = g.port(0, 0);
    Port b = g.port(a.to, a.back);
    a.weight = b.weight = -1.0;
    g.set_port(1, b.back, b);
    g.set_port(0, 0, a);
    const auto v = validate(g);
    CHECK(v.size() == 1);
    CHECK(count_prefix(v, "weight positivity") == 1);
  }
}

TEST_CASE("two-clique instances") {
  const auto x = gen_two_cliques_crossed(5);
  CHECK(x.node_count() == 10);
  CHECK(reference::component_count(x) == 2);
  for (NodeId v = 0; v < 10; ++v) CHECK(x.degree(v) == 4);

  const auto y = gen_two_cliques_crossed(5, Bridge{0, 1, 7, 8});
  CHECK(validate(y).empty());
  CHECK(reference::component_count(y) == 1);
  CHECK(reference::diameter(y) == 3);
  for (NodeId v = 0; v < 10; ++v) CHECK(y.degree(v) == 4);

  std::size_t differing = 0;
  for (NodeId v = 0; v < 10; ++v)
    for (PortIndex p = 0; p < 4; ++p) differing += x.neighbor(v, p) != y.neighbor(v, p);
  CHECK(differing == 4);
}

TEST_CASE("three-level BFS instance") {
  const auto inst = gen_bfs_hard_instance(6, 3, 0x5eed);
  const auto& g = inst.graph;
  CHECK(g.node_count() == 16);
  CHECK(g.edge_count() == 39);
  CHECK(validate(g).empty());
  for (NodeId c : inst.level_c) CHECK(g.degree(c) == 4);
  for (NodeId a : inst.level_a) CHECK(g.degree(a) == 5);
  // each c is at distance 2 and its only neighbour at distance 1 is its matched a
  const auto d = oracle::floyd(g);
  for (std::size_t i = 0; i < inst.level_c.size(); ++i) {
    const NodeId c = inst.level_c[i];
    CHECK(d[inst.root][c] == 2);
    std::size_t closer = 0;
    for (const auto& p : g.ports(c))
      if (d[inst.root][p.to] == 1) {
        ++closer;
        CHECK(p.to == inst.level_a[i]);
      }
    CHECK(closer == 1);
  }
}

TEST_CASE("random connected graphs") {
  const auto tree = gen_random_connected(5, 4, false, 1);
  CHECK(tree.edge_count() == 4);
  CHECK(reference::component_count(tree) == 1);

  const auto k5 = gen_random_connected(5, 10, false, 2);
  for (NodeId v = 0; v < 5; ++v) CHECK(k5.degree(v) == 4);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_random_connected(30, 80, true, seed);
    CHECK(validate(g).empty());
    CHECK(reference::component_count(g) == 1);
    std::set<double> w;
    for (const auto& e : g.edges()) w.insert(e.weight);
    CHECK(w.size() == g.edge_count());
  }
  const auto star = gen_star(6);
  CHECK(star.degree(0) == 5);
}

TEST_CASE("graph files round-trip and hash by content") {
  const auto g = gen_random_connected(12, 30, true, 9);
  std::stringstream ss;
  write_graph(ss, g);
  const auto back = read_graph(ss);
  CHECK(graph_to_string(back) == graph_to_string(g));
  CHECK(graph_hash(back) == graph_hash(g));
  CHECK(graph_hash(g) != graph_hash(gen_random_connected(12, 30, true, 10)));

  std::stringstream bad("3 1 0\n0 0\n");
  CHECK_THROWS_AS(read_graph(bad), InvalidInput);
  std::stringstream trunc("3 2 0\n0 1\n");
  CHECK_THROWS_AS(read_graph(trunc), InvalidInput);
}

TEST_CASE("port shuffles keep the graph valid") {
  auto g = gen_random_connected(20, 60, false, 4);
  const auto before = oracle::floyd(g);
  Rng rng(5);
  shuffle_ports(g, rng);
  CHECK(validate(g).empty());
  CHECK(oracle::floyd(g) == before);
}

TEST_CASE("reference BFS and Kruskal agree with independent oracles") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_random_connected(25, 60, true, seed);
    const auto d = oracle::floyd(g);
    const auto ref = reference::bfs_distances(g, 3);
    for (NodeId v = 0; v < 25; ++v) CHECK(ref[v] == d[3][v]);
    CHECK(reference::kruskal(g) == oracle::prim(g));
  }
}
