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

#include "qroute/ported_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_set>

#include "qroute/errors.hpp"

namespace qroute {

PortIndex PortedGraph::port_to(NodeId u, NodeId v) const {
  const auto& a = adj_[u];
  for (PortIndex p = 0; p < a.size(); ++p) {
    if (a[p].to == v) return p;
  }
  return kNoPort;
}

EdgeId PortedGraph::add_edge(NodeId u, NodeId v, double weight) {
  const auto e = static_cast<EdgeId>(edges_.size());
  const auto pu = static_cast<PortIndex>(adj_[u].size());
  const auto pv = static_cast<PortIndex>(adj_[v].size());
  adj_[u].push_back(Port{v, pv, e, weight});
  adj_[v].push_back(Port{u, pu, e, weight});
  edges_.push_back(EdgeRecord{u, v, pu, pv, weight});
  return e;
}

void PortedGraph::reindex_edges() {
  edges_.clear();
  for (NodeId v = 0; v < adj_.size(); ++v) {
    for (PortIndex p = 0; p < adj_[v].size(); ++p) {
      auto& slot = adj_[v][p];
      if (slot.to == kNoNode || slot.to <= v) continue;
      const auto e = static_cast<EdgeId>(edges_.size());
      edges_.push_back(EdgeRecord{v, slot.to, p, slot.back, slot.weight});
      slot.edge = e;
      if (slot.back < adj_[slot.to].size()) adj_[slot.to][slot.back].edge = e;
    }
  }
}

std::size_t PortedGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& a : adj_) d = std::max(d, a.size());
  return d;
}

PortedGraph build_from_edge_list(const std::vector<EdgeSpec>& edges, std::size_t n) {
  bool weighted = !edges.empty() && edges.front().weight.has_value();
  PortedGraph g(n, weighted);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& e : edges) {
    auto describe = [&] {
      std::ostringstream os;
      os << "(" << e.u << "," << e.v << ")";
      return os.str();
    };
    if (e.u >= n || e.v >= n) throw InvalidInput("node id out of range in edge " + describe());
    if (e.u == e.v) throw InvalidInput("self-loop " + describe());
    if (e.weight.has_value() != weighted) {
      throw InvalidInput("mixed weighted and unweighted edges at " + describe());
    }
    double w = e.weight.value_or(1.0);
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("nonpositive weight on edge " + describe());
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second) {
      throw InvalidInput("duplicate edge " + describe());
    }
    g.add_edge(e.u, e.v, w);
  }
  return g;
}

std::vector<std::string> validate(const PortedGraph& g) {
  std::vector<std::string> out;
  const auto n = g.node_count();
  for (NodeId v = 0; v < n; ++v) {
    std::unordered_set<NodeId> nbrs;
    for (PortIndex p = 0; p < g.degree(v); ++p) {
      const Port& s = g.port(v, p);
      std::ostringstream where;
      where << "node " << v << " port " << p;
      if (s.to >= n) {
        out.push_back("range: " + where.str() + " points outside the graph");
        continue;
      }
      if (s.to == v) out.push_back("simplicity: self-loop at " + where.str());
      if (!nbrs.insert(s.to).second) {
        out.push_back("simplicity: duplicate neighbor " + std::to_string(s.to) + " at " + where.str());
      }
      if (s.back >= g.degree(s.to) || g.port(s.to, s.back).to != v) {
        out.push_back("port symmetry: " + where.str() + " -> " + std::to_string(s.to) +
                      " does not lead back");
        continue;
      }
      if (!(s.weight > 0.0) && v < s.to) out.push_back("weight positivity: " + where.str());
      if (g.port(s.to, s.back).weight != s.weight && v < s.to) {
        out.push_back("weight symmetry: " + where.str());
      }
    }
  }
  return out;
}

}  // namespace qroute
