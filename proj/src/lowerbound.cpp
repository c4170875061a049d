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

#include "qroute/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "qroute/errors.hpp"
#include "qroute/generators.hpp"
#include "qroute/reference.hpp"

namespace qroute {

QueryOracle::QueryOracle(const PortedGraph& hidden, bool trace) : hidden_(&hidden), tracing_(trace) {
  degrees_.resize(hidden.node_count());
  for (NodeId v = 0; v < hidden.node_count(); ++v) degrees_[v] = hidden.degree(v);
}

QueryOracle::Answer QueryOracle::query(NodeId v, PortIndex p) { return query_repeated(v, p, 1); }

QueryOracle::Answer QueryOracle::query_repeated(NodeId v, PortIndex p, std::uint64_t times) {
  if (v >= degrees_.size()) throw InvalidInput("query: node " + std::to_string(v) + " out of range");
  if (p >= degrees_[v]) {
    throw InvalidInput("query: port " + std::to_string(p) + " out of range at node " + std::to_string(v) +
                       " of degree " + std::to_string(degrees_[v]));
  }
  count_ += times;
  if (tracing_)
    for (std::uint64_t i = 0; i < times; ++i) trace_.emplace_back(v, p);
  const Port& slot = hidden_->port(v, p);
  return {slot.to, slot.back};
}

ReductionResult reduce_protocol_to_queries(const PortedGraph& g, const Transcript& transcript,
                                           const MessageLedger& ledger) {
  ReductionResult res;
  res.ledger_messages = ledger.total();
  QueryOracle oracle(g);
  std::uint64_t flagged = 0;
  auto flag = [&](std::string what) {
    if (++flagged <= 20) res.issues.push_back(std::move(what));
  };
  if (transcript.dropped() > 0) {
    flag("transcript dropped " + std::to_string(transcript.dropped()) + " records; replay incomplete");
  }
  for (const auto& rec : transcript.records()) {
    const auto where = "round " + std::to_string(rec.round) + ": node " + std::to_string(rec.sender);
    if (rec.sender >= g.node_count() || rec.port >= g.degree(rec.sender)) {
      flag(where + " sends over port " + std::to_string(rec.port) + " it does not have");
      continue;
    }
    const auto ans = oracle.query_repeated(rec.sender, rec.port, rec.count);
    if (ans.u != rec.receiver || ans.q != rec.receiver_port) {
      flag(where + " port " + std::to_string(rec.port) + " delivered to " + std::to_string(rec.receiver) +
           " but leads to " + std::to_string(ans.u));
    }
  }
  if (flagged > 20) res.issues.push_back(std::to_string(flagged - 20) + " more issues");
  res.queries = oracle.count();
  return res;
}

const char* to_string(EntryCompare c) { return c == EntryCompare::kNeighbour ? "neighbour" : "answer"; }

namespace {

// Query answers laid out by (node, port).
struct Table {
  std::vector<std::size_t> offset;
  std::vector<std::uint64_t> entry;
};

Table table_of(const PortedGraph& g, EntryCompare compare) {
  Table t;
  t.offset.reserve(g.node_count() + 1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    t.offset.push_back(t.entry.size());
    for (const Port& p : g.ports(v)) {
      const std::uint64_t u = p.to;
      t.entry.push_back(compare == EntryCompare::kNeighbour ? u : (u << 32) | p.back);
    }
  }
  t.offset.push_back(t.entry.size());
  return t;
}

std::vector<std::size_t> diff_indices(const Table& x, const Table& y) {
  if (x.offset != y.offset) throw InvalidInput("query tables have different shapes");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.entry.size(); ++i)
    if (x.entry[i] != y.entry[i]) out.push_back(i);
  return out;
}

// Exchanges what ports p and q of v lead to, keeping reverse ports consistent.
void swap_ports(PortedGraph& g, NodeId v, PortIndex p, PortIndex q) {
  const Port sp = g.port(v, p), sq = g.port(v, q);
  g.set_port(v, p, sq);
  g.set_port(v, q, sp);
  Port back_q = g.port(sq.to, sq.back);
  back_q.back = p;
  g.set_port(sq.to, sq.back, back_q);
  Port back_p = g.port(sp.to, sp.back);
  back_p.back = q;
  g.set_port(sp.to, sp.back, back_p);
}

struct BfsRoles {
  NodeId first_a, first_b, first_c;
  std::size_t n, d;
  bool in_b(NodeId v) const { return v >= first_b && v < first_c; }
  bool in_c(NodeId v) const { return v >= first_c; }
};

// Every encoding related to x; each neighbour is x with ports swapped at a and at c = M(a).
std::vector<PortedGraph> bfs_neighbours(const PortedGraph& x, const BfsRoles& r) {
  std::vector<PortedGraph> out;
  for (NodeId a = r.first_a; a < r.first_b; ++a) {
    PortIndex to_c = kNoPort;
    for (PortIndex p = 0; p < x.degree(a); ++p)
      if (r.in_c(x.neighbor(a, p))) to_c = p;
    const NodeId c = x.neighbor(a, to_c);
    const PortIndex c_to_a = x.port(a, to_c).back;
    for (PortIndex pb = 0; pb < x.degree(a); ++pb) {
      if (!r.in_b(x.neighbor(a, pb))) continue;
      for (PortIndex pc = 0; pc < x.degree(c); ++pc) {
        if (!r.in_c(x.neighbor(c, pc))) continue;
        PortedGraph y = x;
        swap_ports(y, a, pb, to_c);
        swap_ports(y, c, c_to_a, pc);
        out.push_back(std::move(y));
      }
    }
  }
  return out;
}

void finish_bound(RelationParams& r) {
  r.bound = r.l_max == 0 ? 0.0
                         : std::sqrt(static_cast<double>(r.m_lower) * static_cast<double>(r.m_prime) /
                                     static_cast<double>(r.l_max));
}

}  // namespace

std::vector<std::pair<NodeId, PortIndex>> query_diff(const PortedGraph& x, const PortedGraph& y,
                                                     EntryCompare compare) {
  if (x.node_count() != y.node_count()) throw InvalidInput("query_diff: node counts differ");
  const Table tx = table_of(x, compare), ty = table_of(y, compare);
  std::vector<std::pair<NodeId, PortIndex>> out;
  for (std::size_t i : diff_indices(tx, ty)) {
    const auto v = static_cast<NodeId>(std::upper_bound(tx.offset.begin(), tx.offset.end(), i) - tx.offset.begin() - 1);
    out.emplace_back(v, static_cast<PortIndex>(i - tx.offset[v]));
  }
  return out;
}

RelationParams bfs_relation_params(std::size_t n, std::size_t d, EntryCompare compare, std::uint64_t budget) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("bfs relation: n must be even and at least 2");
  if (d < 1 || d > n - 1) throw InvalidInput("bfs relation: need 1 <= d <= n-1");
  const std::uint64_t related = n * d * d;
  const std::uint64_t table = 2 * (n + n * d + n + n * d / 2);
  const std::uint64_t work = (related + 1) * related * table;
  if (work > budget) {
    throw BudgetExceeded("bfs relation (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ") needs " +
                         std::to_string(work) + " work units; budget is " + std::to_string(budget));
  }

  const auto inst = gen_bfs_hard_instance(n, d, 0x5eed);
  const BfsRoles roles{inst.level_a.front(), inst.level_b.front(), inst.level_c.front(), n, d};
  const PortedGraph& x = inst.graph;
  const Table tx = table_of(x, compare);

  RelationParams r;
  r.family = "bfs";
  r.n = n;
  r.d = d;
  r.compare = compare;
  r.min_diff = ~std::uint64_t{0};

  const auto ys = bfs_neighbours(x, roles);
  std::vector<Table> ty;
  std::vector<std::vector<std::size_t>> dxy;
  std::vector<std::uint64_t> l_x(tx.entry.size(), 0);
  for (const auto& y : ys) {
    ty.push_back(table_of(y, compare));
    dxy.push_back(diff_indices(tx, ty.back()));
    for (std::size_t i : dxy.back()) ++l_x[i];
  }
  r.m_lower = ys.size();
  r.m_prime = ys.size();

  for (std::size_t k = 0; k < ys.size(); ++k) {
    const auto zs = bfs_neighbours(ys[k], roles);
    r.m_lower = std::min<std::uint64_t>(r.m_lower, zs.size());
    r.m_prime = std::min<std::uint64_t>(r.m_prime, zs.size());
    std::vector<std::uint64_t> l_y(tx.entry.size(), 0);
    bool back_to_x = false;
    for (const auto& z : zs) {
      const Table tz = table_of(z, compare);
      if (tz.entry == tx.entry) back_to_x = true;
      for (std::size_t i : diff_indices(ty[k], tz)) ++l_y[i];
    }
    r.symmetric = r.symmetric && back_to_x;
    ++r.pairs;
    r.min_diff = std::min<std::uint64_t>(r.min_diff, dxy[k].size());
    r.max_diff = std::max<std::uint64_t>(r.max_diff, dxy[k].size());
    for (std::size_t i : dxy[k]) r.l_max = std::max(r.l_max, l_x[i] * l_y[i]);

    // any BFS of x names some matching edge {a, M(a)} by a port that leads elsewhere in y
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId a = inst.level_a[i], c = inst.level_c[i];
      moved = moved || (ys[k].neighbor(a, x.port_to(a, c)) != c && ys[k].neighbor(c, x.port_to(c, a)) != a);
    }
    r.separation_ok = r.separation_ok && moved;
  }
  if (ys.empty()) r.min_diff = 0;
  r.theta_constant = static_cast<double>(r.m_lower) / static_cast<double>(n * d * d);
  finish_bound(r);
  return r;
}

RelationParams connectivity_relation_params(std::size_t n, EntryCompare compare, std::uint64_t budget) {
  if (n < 2) throw InvalidInput("connectivity relation: n must be at least 2");
  const std::uint64_t tuples = static_cast<std::uint64_t>(n) * n * n * n;
  const std::uint64_t work = tuples * 2 * n * (n - 1);
  if (work > budget) {
    throw BudgetExceeded("connectivity relation (n=" + std::to_string(n) + ") needs " + std::to_string(work) +
                         " work units; budget is " + std::to_string(budget));
  }
  const PortedGraph x = gen_two_cliques_crossed(n);
  const Table tx = table_of(x, compare);

  RelationParams r;
  r.family = "connectivity";
  r.n = n;
  r.compare = compare;
  r.tuples = tuples;
  r.l_tuple_bound = static_cast<std::uint64_t>(n) * n;
  r.bound_tuples = std::sqrt(static_cast<double>(tuples) / static_cast<double>(r.l_tuple_bound));
  r.separation_ok = reference::component_count(x) == 2;
  r.min_diff = ~std::uint64_t{0};

  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::uint64_t> l_x(tx.entry.size(), 0);
  const auto N = static_cast<NodeId>(n);
  for (NodeId a = 0; a < N; ++a)
    for (NodeId b = 0; b < N; ++b)
      for (NodeId c = N; c < 2 * N; ++c)
        for (NodeId d = N; d < 2 * N; ++d) {
          if (a == b || c == d) {
            ++r.degenerate_tuples;
            continue;
          }
          PortedGraph y = x;
          apply_bridge(y, a, b, c, d);
          Table ty = table_of(y, compare);
          if (!seen.insert(table_of(y, EntryCompare::kAnswer).entry).second) continue;
          const auto diff = diff_indices(tx, ty);
          for (std::size_t i : diff) ++l_x[i];
          r.min_diff = std::min<std::uint64_t>(r.min_diff, diff.size());
          r.max_diff = std::max<std::uint64_t>(r.max_diff, diff.size());
          y.reindex_edges();
          if (reference::component_count(y) != 1 || reference::diameter(y) != 3) r.separation_ok = false;
        }
  r.pairs = seen.size();
  r.m_lower = seen.size();
  r.m_prime = 1;  // every y is related to x alone
  for (auto l : l_x) r.l_max = std::max(r.l_max, l);  // times l_{y,i} = 1
  if (seen.empty()) r.min_diff = 0;
  finish_bound(r);
  return r;
}

std::string relation_json(const RelationParams& r) {
  nlohmann::ordered_json j;
  j["family"] = r.family;
  j["n"] = r.n;
  if (r.family == "bfs") j["d"] = r.d;
  j["compare"] = to_string(r.compare);
  j["m_lower"] = r.m_lower;
  j["m_prime"] = r.m_prime;
  j["l_max"] = r.l_max;
  j["bound"] = r.bound;
  j["pairs"] = r.pairs;
  j["min_diff"] = r.min_diff;
  j["max_diff"] = r.max_diff;
  j["symmetric"] = r.symmetric;
  j["separation_ok"] = r.separation_ok;
  if (r.family == "bfs") {
    j["theta_constant"] = r.theta_constant;
  } else {
    j["tuples"] = r.tuples;
    j["degenerate_tuples"] = r.degenerate_tuples;
    j["l_tuple_bound"] = r.l_tuple_bound;
    j["bound_tuples"] = r.bound_tuples;
  }
  return j.dump(2);
}

}  // namespace qroute
