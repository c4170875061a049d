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

#include "qroute/find_edge.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qroute/errors.hpp"
#include "qroute/reference.hpp"
#include "qroute/sim.hpp"

namespace qroute {

EdgeRanks::EdgeRanks(const PortedGraph& g) {
  const auto m = g.edge_count();
  order_.resize(m);
  std::iota(order_.begin(), order_.end(), EdgeId{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).weight < g.edge(b).weight; });
  rank_.resize(m);
  for (std::uint32_t r = 0; r < m; ++r) rank_[order_[r]] = r;
  by_node_.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto& list = by_node_[v];
    for (PortIndex p = 0; p < g.degree(v); ++p) list.emplace_back(rank_[g.port(v, p).edge], p);
    std::sort(list.begin(), list.end());
  }
}

// ---------------------------------------------------------------- search

OutgoingSearch::OutgoingSearch(SimContext& ctx, const Clustering& cl, const EdgeRanks& ranks,
                               std::uint64_t n_star, FindOptions opts, Rng& rng)
    : ctx_(ctx),
      cl_(cl),
      ranks_(ranks),
      n_star_(n_star),
      opts_(std::move(opts)),
      rng_(rng),
      id_space_(id_space_for(ctx.graph().node_count())) {
  const PortedGraph& g = ctx.graph();
  if (cl.cluster_of.size() != g.node_count()) throw InvalidInput("clustering does not match the graph");
  if (!(opts_.delta > 0.0 && opts_.delta < 1.0)) throw InvalidInput("find: delta must lie in (0,1)");
  out_ranks_.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (auto [r, p] : ranks.at(v))
      if (!cl.same(v, g.neighbor(v, p))) out_ranks_[v].push_back(r);
  }
  by_id_.resize(cl.clusters.size());
  for (std::uint32_t c = 0; c < cl.clusters.size(); ++c) {
    auto& ids = by_id_[c];
    ids = cl.clusters[c].members;
    std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) { return cl.node_id[a] < cl.node_id[b]; });
  }
}

double OutgoingSearch::walk_R(std::size_t n_i) { return 1.0 + std::log2(static_cast<double>(std::max<std::size_t>(1, n_i))); }
double OutgoingSearch::walk_W(std::size_t n_i) { return 2.0 * static_cast<double>(n_i) * static_cast<double>(n_i); }

std::uint32_t OutgoingSearch::id_search_steps() const {
  return 1 + static_cast<std::uint32_t>(std::bit_width(id_space_ - 1));
}

bool OutgoingSearch::active(std::uint32_t c) const {
  if (!passive_.empty() && passive_[c]) return false;
  return cl_.size(c) <= n_star_;
}

bool OutgoingSearch::in_range(NodeId v, PortIndex p, const RankRange& r) const {
  const auto k = ranks_.of(ctx_.graph().port(v, p).edge);
  return k >= r.lo && k <= r.hi;
}

bool OutgoingSearch::good(NodeId v, const RankRange& r) const {
  const auto& list = out_ranks_[v];
  auto it = std::lower_bound(list.begin(), list.end(), r.lo);
  return it != list.end() && *it <= r.hi;
}

std::size_t OutgoingSearch::restricted_degree(NodeId v, const RankRange& r) const {
  const auto& list = ranks_.at(v);
  auto lo = std::lower_bound(list.begin(), list.end(), std::make_pair(r.lo, PortIndex{0}));
  auto hi = r.hi == std::numeric_limits<std::uint32_t>::max()
                ? list.end()
                : std::lower_bound(list.begin(), list.end(), std::make_pair(r.hi + 1, PortIndex{0}));
  std::size_t d = static_cast<std::size_t>(hi - lo);
  const auto& t = cl_.tree[v];
  if (t.parent != kNoPort && !in_range(v, t.parent, r)) ++d;
  for (PortIndex p : t.children)
    if (!in_range(v, p, r)) ++d;
  return d;
}

bool OutgoingSearch::has_good_in(std::uint32_t c, std::uint64_t a, std::uint64_t b, const RankRange& r) const {
  const auto& ids = by_id_[c];
  auto it = std::lower_bound(ids.begin(), ids.end(), a,
                             [&](NodeId v, std::uint64_t x) { return cl_.node_id[v] < x; });
  for (; it != ids.end() && cl_.node_id[*it] < b; ++it)
    if (good(*it, r)) return true;
  return false;
}

std::vector<NodeId> OutgoingSearch::phase1(const std::vector<std::uint32_t>& clusters,
                                           const std::vector<RankRange>& window) {
  std::vector<NodeId> winner(clusters.size(), kNoNode);
  Concurrent con(ctx_);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    con.branch();
    const std::uint32_t c = clusters[i];
    const RankRange& r = window[c];
    const std::size_t n_i = cl_.size(c);
    broadcast(ctx_, cl_, c);  // start signal and rank window
    auto res = convergecast_min(ctx_, cl_, c, [&](NodeId v) {
      return restricted_degree(v, r) > n_i ? cl_.node_id[v] : std::numeric_limits<std::uint64_t>::max();
    });
    if (res.value != std::numeric_limits<std::uint64_t>::max()) {
      winner[i] = res.node;
      ++stats_.phase1_hits;
    }
  }
  con.join();
  return winner;
}

std::optional<OutEdge> OutgoingSearch::probe_and_report(NodeId w, const RankRange& r) {
  const PortedGraph& g = ctx_.graph();
  const auto& t = cl_.tree[w];
  thread_local std::vector<char> tree_port;
  tree_port.assign(g.degree(w), 0);
  if (t.parent != kNoPort) tree_port[t.parent] = 1;
  for (PortIndex p : t.children) tree_port[p] = 1;

  std::uint64_t at = ctx_.now();
  std::optional<OutEdge> found;
  for (PortIndex p = 0; p < g.degree(w) && !found; ++p) {
    if (tree_port[p] || !in_range(w, p, r)) continue;
    const Port& slot = g.port(w, p);
    ctx_.send(w, p, at);                    // "which cluster are you in?"
    ctx_.send(slot.to, slot.back, at + 1);  // reply with the cluster id
    at += 2;
    ++stats_.probes;
    if (!cl_.same(w, slot.to)) found = OutEdge{w, p, slot.edge, slot.weight};
  }
  if (found) {
    for (NodeId v = w; cl_.tree[v].parent != kNoPort; v = g.neighbor(v, cl_.tree[v].parent)) {
      ctx_.send(v, cl_.tree[v].parent, at++);
    }
  }
  ctx_.set_now(at);
  return found;
}

ElectricNetwork OutgoingSearch::build_network(std::uint32_t c, std::uint64_t a, std::uint64_t b,
                                              const RankRange& r) const {
  const PortedGraph& g = ctx_.graph();
  const Cluster& cluster = cl_.clusters[c];
  ElectricNetwork net(g.node_count(), cluster.root);
  net.token = Token{cluster.id, a, b};
  auto in_id = [&](NodeId v) { return cl_.node_id[v] >= a && cl_.node_id[v] < b; };
  for (NodeId v : cluster.members)
    for (PortIndex p : cl_.tree[v].children) {
      const Port& slot = g.port(v, p);
      // a tree edge weighs the depth of its deeper endpoint
      net.add_edge(v, slot.to, static_cast<double>(cl_.tree[slot.to].depth), p, slot.back);
    }
  for (NodeId v : cluster.members) {
    if (!in_id(v)) continue;
    for (PortIndex p = 0; p < g.degree(v); ++p) {
      if (cl_.is_tree_port(v, p) || !in_range(v, p, r)) continue;
      const Port& slot = g.port(v, p);
      const bool inside = cl_.same(v, slot.to);
      if (inside && in_id(slot.to) && slot.to < v) continue;  // added from the other side
      net.add_edge(v, slot.to, 1.0, p, slot.back);
      if (!inside) net.mark(slot.to);
    }
  }
  return net;
}

std::vector<bool> OutgoingSearch::walk_round(const std::vector<std::uint32_t>& clusters,
                                             const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b,
                                             const std::vector<RankRange>& window, double delta_step) {
  std::vector<bool> verdict(clusters.size(), false);
  {
    Concurrent con(ctx_);
    for (std::uint32_t c : clusters) {
      con.branch();
      broadcast(ctx_, cl_, c);  // the id range under test
    }
    con.join();
  }

  const bool exact = opts_.fidelity == Fidelity::kExact;
  std::vector<WalkRequest> batch;
  std::vector<std::size_t> slot_of;
  std::uint64_t rounds = 0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const std::uint32_t c = clusters[i];
    const std::size_t n_i = cl_.size(c);
    const double R = walk_R(n_i), W = walk_W(n_i);
    if (exact || opts_.observer) {
      ElectricNetwork net = build_network(c, a[i], b[i], window[c]);
      if (net.edges.empty()) continue;
      if (opts_.observer) opts_.observer(net, n_i, R, W);
      if (exact) {
        batch.push_back(WalkRequest{std::move(net), R, W, delta_step});
        slot_of.push_back(i);
        continue;
      }
    }
    // cost model: same charge as the scheduler, verdict from the ground truth
    const NodeId root = cl_.clusters[c].root;
    PortIndex port = kNoPort;
    if (!cl_.tree[root].children.empty()) {
      port = cl_.tree[root].children.front();
    } else if (cl_.node_id[root] >= a[i] && cl_.node_id[root] < b[i]) {
      for (auto [rk, p] : ranks_.at(root)) {
        (void)rk;
        if (in_range(root, p, window[c]) && (port == kNoPort || p < port)) port = p;
      }
    }
    if (port == kNoPort) continue;  // empty network: nothing to walk on
    const std::uint64_t steps = static_cast<std::uint64_t>(repetitions(delta_step, ctx_.constants())) *
                                static_cast<std::uint64_t>(walk_length(R, W, ctx_.constants()));
    const std::uint64_t msgs = steps * messages_per_step(ScheduleMode::kMarkedShared);
    ctx_.send_bulk(root, port, msgs, ctx_.now(), msgs, Category::kWalk);
    rounds = std::max(rounds, msgs);
    verdict[i] = has_good_in(c, a[i], b[i], window[c]);
    ++stats_.walks;
  }
  if (!batch.empty()) {
    Rng walk_rng = rng_.split();
    BatchResult res = ctx_.run_walks(batch, ScheduleMode::kMarkedShared, Fidelity::kExact, walk_rng, opts_.cache);
    for (std::size_t j = 0; j < batch.size(); ++j) {
      verdict[slot_of[j]] = res.outcomes[j].detection.verdict == Verdict::kNonempty;
    }
    rounds = std::max(rounds, res.rounds);
    stats_.walks += batch.size();
  }
  ctx_.advance(rounds);
  return verdict;
}

std::vector<std::optional<OutEdge>> OutgoingSearch::find_any_in(const std::vector<std::uint32_t>& clusters,
                                                                const std::vector<RankRange>& window,
                                                                double delta_step) {
  std::vector<std::optional<OutEdge>> out(cl_.clusters.size());
  const auto winner = phase1(clusters, window);
  std::vector<std::uint32_t> rest;
  {
    Concurrent con(ctx_);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      if (winner[i] == kNoNode) {
        rest.push_back(clusters[i]);
        continue;
      }
      con.branch();
      broadcast(ctx_, cl_, clusters[i]);  // tell the winner
      out[clusters[i]] = probe_and_report(winner[i], window[clusters[i]]);
    }
    con.join();
  }
  if (rest.empty()) return out;

  // Phase 2: existence over the whole id space, then halving
  std::vector<std::uint64_t> a(rest.size(), 0), b(rest.size(), id_space_);
  auto alive = walk_round(rest, a, b, window, delta_step);
  std::vector<std::uint32_t> live;
  std::vector<std::uint64_t> la, lb;
  for (std::size_t i = 0; i < rest.size(); ++i)
    if (alive[i]) {
      live.push_back(rest[i]);
      la.push_back(0);
      lb.push_back(id_space_);
    }
  for (;;) {
    std::vector<std::uint32_t> step;
    std::vector<std::size_t> at;
    std::vector<std::uint64_t> sa, smid;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (lb[i] - la[i] <= 1) continue;
      step.push_back(live[i]);
      at.push_back(i);
      sa.push_back(la[i]);
      smid.push_back(la[i] + (lb[i] - la[i]) / 2);
    }
    if (step.empty()) break;
    const auto left = walk_round(step, sa, smid, window, delta_step);
    for (std::size_t j = 0; j < step.size(); ++j) {
      if (left[j]) {
        lb[at[j]] = smid[j];
      } else {
        la[at[j]] = smid[j];
      }
    }
  }
  Concurrent con(ctx_);
  for (std::size_t i = 0; i < live.size(); ++i) {
    const std::uint32_t c = live[i];
    const auto& ids = by_id_[c];
    auto it = std::lower_bound(ids.begin(), ids.end(), la[i],
                               [&](NodeId v, std::uint64_t x) { return cl_.node_id[v] < x; });
    if (it == ids.end() || cl_.node_id[*it] != la[i]) continue;  // a detection error led nowhere
    con.branch();
    out[c] = probe_and_report(*it, window[c]);
  }
  con.join();
  return out;
}

std::vector<bool> OutgoingSearch::exists_in(const std::vector<std::uint32_t>& clusters,
                                            const std::vector<RankRange>& window, double delta_step) {
  std::vector<bool> out(clusters.size(), false);
  const auto winner = phase1(clusters, window);
  std::vector<std::uint32_t> rest;
  std::vector<std::size_t> at;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (winner[i] != kNoNode) {
      out[i] = true;
    } else {
      rest.push_back(clusters[i]);
      at.push_back(i);
    }
  }
  if (rest.empty()) return out;
  std::vector<std::uint64_t> a(rest.size(), 0), b(rest.size(), id_space_);
  const auto v = walk_round(rest, a, b, window, delta_step);
  for (std::size_t j = 0; j < rest.size(); ++j) out[at[j]] = v[j];
  return out;
}

std::vector<std::optional<OutEdge>> OutgoingSearch::find_any(const std::vector<RankRange>& window) {
  if (window.size() != cl_.clusters.size()) throw InvalidInput("find_any: one rank window per cluster");
  std::vector<std::uint32_t> act;
  for (std::uint32_t c = 0; c < cl_.clusters.size(); ++c)
    if (active(c)) act.push_back(c);
  return find_any_in(act, window, opts_.delta / id_search_steps());
}

std::vector<std::optional<OutEdge>> OutgoingSearch::find_any() {
  return find_any(std::vector<RankRange>(cl_.clusters.size()));
}

std::vector<std::optional<OutEdge>> OutgoingSearch::find_min() {
  const std::uint32_t K = ranks_.size();
  std::vector<std::optional<OutEdge>> out(cl_.clusters.size());
  if (K == 0) return out;
  const std::uint32_t rank_steps = 1 + static_cast<std::uint32_t>(std::bit_width(K - 1));
  const double delta_step = opts_.delta / (rank_steps + id_search_steps());

  std::vector<RankRange> window(cl_.clusters.size(), RankRange{0, K - 1});
  std::vector<std::uint32_t> act;
  for (std::uint32_t c = 0; c < cl_.clusters.size(); ++c)
    if (active(c)) act.push_back(c);
  const auto any = exists_in(act, window, delta_step);
  std::vector<std::uint32_t> live;
  std::vector<std::uint32_t> lo, hi;
  for (std::size_t i = 0; i < act.size(); ++i)
    if (any[i]) {
      live.push_back(act[i]);
      lo.push_back(0);
      hi.push_back(K - 1);
    }
  // live clusters halve [lo, hi] in lock step until each window holds one rank
  for (;;) {
    std::vector<std::uint32_t> step;
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (lo[i] == hi[i]) continue;
      window[live[i]] = RankRange{lo[i], lo[i] + (hi[i] - lo[i]) / 2};
      step.push_back(live[i]);
      at.push_back(i);
    }
    if (step.empty()) break;
    const auto left = exists_in(step, window, delta_step);
    for (std::size_t j = 0; j < step.size(); ++j) {
      const std::size_t i = at[j];
      const std::uint32_t mid = lo[i] + (hi[i] - lo[i]) / 2;
      if (left[j]) {
        hi[i] = mid;
      } else {
        lo[i] = mid + 1;
      }
    }
  }
  for (std::size_t i = 0; i < live.size(); ++i) window[live[i]] = RankRange{lo[i], lo[i]};
  auto found = find_any_in(live, window, delta_step);
  for (std::uint32_t c : live) out[c] = found[c];
  return out;
}

std::vector<std::optional<OutEdge>> find_any(SimContext& ctx, const Clustering& cl, std::uint64_t n_star,
                                             const FindOptions& opts, Rng& rng) {
  EdgeRanks ranks(ctx.graph());
  OutgoingSearch s(ctx, cl, ranks, n_star, opts, rng);
  return s.find_any();
}

std::vector<std::optional<OutEdge>> find_min(SimContext& ctx, const Clustering& cl, std::uint64_t n_star,
                                             const FindOptions& opts, Rng& rng) {
  if (ctx.graph().weighted() && !reference::unique_weights(ctx.graph())) {
    throw InvalidInput("find_min: edge weights must be distinct");
  }
  EdgeRanks ranks(ctx.graph());
  OutgoingSearch s(ctx, cl, ranks, n_star, opts, rng);
  return s.find_min();
}

}  // namespace qroute
