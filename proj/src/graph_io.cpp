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

#include "qroute/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qroute/errors.hpp"

namespace qroute {

PortedGraph read_graph(std::istream& in) {
  std::size_t n = 0, m = 0;
  int weighted = 0;
  if (!(in >> n >> m >> weighted) || (weighted != 0 && weighted != 1)) {
    throw InvalidInput("bad graph header, expected 'n m weighted{0|1}'");
  }
  std::vector<EdgeSpec> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(in >> u >> v)) throw InvalidInput("truncated edge list at edge " + std::to_string(i));
    if (u < 0 || v < 0) throw InvalidInput("negative node id at edge " + std::to_string(i));
    EdgeSpec e{static_cast<NodeId>(u), static_cast<NodeId>(v), std::nullopt};
    if (weighted) {
      double w;
      if (!(in >> w)) throw InvalidInput("missing weight at edge " + std::to_string(i));
      e.weight = w;
    }
    edges.push_back(e);
  }
  auto g = build_from_edge_list(edges, n);
  g.set_weighted(weighted == 1);
  return g;
}

PortedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const PortedGraph& g) {
  out << g.node_count() << ' ' << g.edge_count() << ' ' << (g.weighted() ? 1 : 0) << '\n';
  char buf[64];
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (g.weighted()) {
      std::snprintf(buf, sizeof buf, "%.17g", e.weight);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

void write_graph_file(const std::string& path, const PortedGraph& g) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write graph file " + path);
  write_graph(out, g);
}

std::string graph_to_string(const PortedGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

std::string graph_hash(const PortedGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : graph_to_string(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace qroute
