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

#include "qroute/electric.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

namespace qroute {

namespace {

constexpr std::size_t kDenseLimit = 2000;

std::vector<std::vector<std::pair<NodeId, std::size_t>>> incidence(const ElectricNetwork& net) {
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> inc(net.node_space);
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    inc[net.edges[i].u].emplace_back(net.edges[i].v, i);
    inc[net.edges[i].v].emplace_back(net.edges[i].u, i);
  }
  return inc;
}

// Potentials with M grounded and one unit injected at the root.
// Index: position in the component list; marked vertices stay at 0.
std::vector<double> potentials(const ElectricNetwork& net, const std::vector<NodeId>& comp) {
  std::unordered_map<NodeId, std::size_t> slot;
  std::vector<NodeId> free_nodes;
  for (NodeId v : comp) {
    if (!net.is_marked(v)) {
      slot[v] = free_nodes.size();
      free_nodes.push_back(v);
    }
  }
  const auto k = free_nodes.size();
  std::vector<double> phi(net.node_space, 0.0);
  if (k == 0 || net.is_marked(net.root)) return phi;

  auto add = [&](auto& sink, NodeId a, NodeId b, double w) {
    auto ia = slot.find(a), ib = slot.find(b);
    if (ia != slot.end()) sink(ia->second, ia->second, w);
    if (ib != slot.end()) sink(ib->second, ib->second, w);
    if (ia != slot.end() && ib != slot.end()) {
      sink(ia->second, ib->second, -w);
      sink(ib->second, ia->second, -w);
    }
  };

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  rhs(static_cast<Eigen::Index>(slot.at(net.root))) = 1.0;
  Eigen::VectorXd x;
  if (k <= kDenseLimit) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    auto sink = [&](std::size_t i, std::size_t j, double w) {
      L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += w;
    };
    for (const auto& e : net.edges) add(sink, e.u, e.v, e.weight);
    x = L.ldlt().solve(rhs);
  } else {
    std::vector<Eigen::Triplet<double>> trip;
    auto sink = [&](std::size_t i, std::size_t j, double w) {
      trip.emplace_back(static_cast<int>(i), static_cast<int>(j), w);
    };
    for (const auto& e : net.edges) add(sink, e.u, e.v, e.weight);
    Eigen::SparseMatrix<double> L(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-10);
    cg.setMaxIterations(static_cast<Eigen::Index>(20 * k + 1000));
    cg.compute(L);
    x = cg.solve(rhs);
  }
  for (std::size_t i = 0; i < k; ++i) phi[free_nodes[i]] = x(static_cast<Eigen::Index>(i));
  return phi;
}

void require_reachable_marks(const ElectricNetwork& net, const std::vector<NodeId>& comp) {
  bool any = false;
  for (NodeId v = 0; v < net.node_space && !any; ++v) any = net.is_marked(v);
  if (!any) throw EmptyMarkedSet("effective resistance: marked set is empty");
  for (NodeId v : comp)
    if (net.is_marked(v)) return;
  throw UnreachableMarkedSet("effective resistance: no marked vertex reachable from root " +
                             std::to_string(net.root));
}

}  // namespace

std::vector<NodeId> ElectricNetwork::vertices() const {
  std::vector<NodeId> vs{root};
  for (const auto& e : edges) {
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::vector<NodeId> ElectricNetwork::root_component() const {
  auto inc = incidence(*this);
  std::vector<char> seen(node_space, 0);
  std::vector<NodeId> stack{root}, comp;
  seen[root] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    comp.push_back(v);
    for (auto [u, e] : inc[v]) {
      (void)e;
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::sort(comp.begin(), comp.end());
  return comp;
}

std::vector<NodeId> ElectricNetwork::marked_in_component() const {
  std::vector<NodeId> out;
  if (marked.empty()) return out;
  for (NodeId v : root_component())
    if (is_marked(v)) out.push_back(v);
  return out;
}

void ElectricNetwork::restrict_to_root_component() {
  auto comp = root_component();
  std::vector<char> in(node_space, 0);
  for (NodeId v : comp) in[v] = 1;
  std::erase_if(edges, [&](const NetEdge& e) { return !in[e.u]; });
}

double flow_energy(const ElectricNetwork& net, const UnitFlow& flow, double tol) {
  if (flow.values.size() != net.edges.size()) {
    throw PreconditionError("flow_energy: flow has " + std::to_string(flow.values.size()) +
                            " values for " + std::to_string(net.edges.size()) + " edges");
  }
  std::vector<double> net_out(net.node_space, 0.0);
  double energy = 0.0;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const auto& e = net.edges[i];
    const double f = flow.values[i];
    net_out[e.u] += f;
    net_out[e.v] -= f;
    energy += f * f / e.weight;
  }
  double into_marked = 0.0;
  for (NodeId v = 0; v < net.node_space; ++v) {
    if (net.is_marked(v)) {
      into_marked -= net_out[v];
      continue;
    }
    const double want = (v == net.root) ? 1.0 : 0.0;
    if (std::abs(net_out[v] - want) > tol) {
      throw PreconditionError("flow_energy: conservation violated at node " + std::to_string(v));
    }
  }
  if (!net.is_marked(net.root) && std::abs(into_marked - 1.0) > tol) {
    throw PreconditionError("flow_energy: net inflow into the marked set is not 1");
  }
  return energy;
}

double effective_resistance(const ElectricNetwork& net) {
  auto comp = net.root_component();
  require_reachable_marks(net, comp);
  if (net.is_marked(net.root)) return 0.0;
  return potentials(net, comp)[net.root];
}

double total_weight(const ElectricNetwork& net) {
  double s = 0.0;
  for (const auto& e : net.edges) s += e.weight;
  return s;
}

UnitFlow electrical_flow(const ElectricNetwork& net) {
  auto comp = net.root_component();
  require_reachable_marks(net, comp);
  auto phi = potentials(net, comp);
  UnitFlow f;
  f.values.reserve(net.edges.size());
  for (const auto& e : net.edges) f.values.push_back((phi[e.u] - phi[e.v]) * e.weight);
  return f;
}

}  // namespace qroute
