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

#include <bit>
#include <cmath>
#include <string>

#include "qroute/errors.hpp"
#include "qroute/sim.hpp"

namespace qroute {

// ---------------------------------------------------------------- SimContext

SimContext::SimContext(const PortedGraph& g, const Constants& c)
    : graph_(&g), constants_(c), transcript_(c.transcript_capacity) {}

void SimContext::send(NodeId v, PortIndex p, std::uint64_t at, Category c) {
  send_bulk(v, p, 1, at, 1, c);
}

void SimContext::send_bulk(NodeId v, PortIndex p, std::uint64_t count, std::uint64_t at, std::uint64_t rounds,
                           Category c) {
  if (count == 0) return;
  if (v >= graph_->node_count() || p >= graph_->degree(v)) {
    throw ProtocolError("send on invalid port " + std::to_string(p) + " at node " + std::to_string(v));
  }
  const Port& slot = graph_->port(v, p);
  ledger_.charge(c, count, at, rounds);
  transcript_.add(TranscriptRecord{at, v, p, slot.to, slot.back, c, count});
}

std::size_t SimContext::word_bits() const {
  const auto n = std::max<std::size_t>(2, graph_->node_count());
  return static_cast<std::size_t>(std::bit_width(n - 1));
}

void SimContext::check_payload(const std::vector<std::uint64_t>& words) const {
  std::size_t bits = 0;
  for (auto w : words) bits += std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(w)));
  const std::size_t budget = constants_.word_budget * word_bits();
  if (bits > budget) {
    throw ProtocolError("payload of " + std::to_string(bits) + " bits exceeds the budget of " +
                        std::to_string(budget) + " bits");
  }
}

BatchResult SimContext::run_walks(const std::vector<WalkRequest>& batch, ScheduleMode mode, Fidelity fidelity,
                                  Rng& rng, DetectionCache* cache) {
  DetectOptions opts;
  opts.constants = constants_;
  opts.cache = cache;
  BatchResult res = schedule_walks(batch, mode, fidelity, rng, opts);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto& net = batch[i].net;
    PortIndex port = kNoPort;
    for (const auto& e : net.edges) {
      if (e.u == net.root && e.pu != kNoPort) port = e.pu;
      if (e.v == net.root && e.pv != kNoPort) port = e.pv;
      if (port != kNoPort) break;
    }
    const auto& o = res.outcomes[i];
    if (o.messages == 0) continue;
    if (port == kNoPort) {
      // no real edge at the root: every step stays on the virtual pair
      ledger_.charge(Category::kWalk, 0, now_, o.rounds);
      continue;
    }
    send_bulk(net.root, port, o.messages, now_, o.rounds, Category::kWalk);
  }
  return res;
}

// ---------------------------------------------------------------- engine

void NodeView::send(PortIndex p, Payload payload) {
  if (terminated_) throw ProtocolError("terminated node " + std::to_string(id_) + " attempted to send");
  if (p >= degree_) {
    throw ProtocolError("send on invalid port " + std::to_string(p) + " at node " + std::to_string(id_));
  }
  outbox_.emplace_back(p, std::move(payload));
}

void NodeView::request_walk(WalkRequest req) {
  if (terminated_) throw ProtocolError("terminated node " + std::to_string(id_) + " requested a walk");
  walks_.push_back(std::move(req));
}

struct Engine {
  static ProtocolRun run(const PortedGraph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
                         const ProtocolOptions& opts) {
    const auto n = g.node_count();
    if (programs.size() != n) throw InvalidInput("run_protocol: need exactly one program per node");
    SimContext ctx(g, opts.constants);
    Rng master(opts.seed);
    std::vector<Rng> rngs;
    rngs.reserve(n);
    for (NodeId v = 0; v < n; ++v) rngs.push_back(master.split());
    Rng walk_rng = master.split();

    std::vector<NodeView> views(n);
    std::vector<std::vector<Inbound>> inbox(n), next_inbox(n);
    std::vector<std::vector<Verdict>> results(n), next_results(n);
    for (NodeId v = 0; v < n; ++v) {
      views[v].id_ = v;
      views[v].degree_ = g.degree(v);
      views[v].rng_ = &rngs[v];
    }

    ProtocolRun out;
    std::uint64_t t = 0;
    for (;; ++t) {
      ctx.set_now(t);
      bool activity = false;
      std::vector<WalkRequest> batch;
      std::vector<NodeId> batch_owner;
      for (NodeId v = 0; v < n; ++v) {
        NodeView& view = views[v];
        if (view.terminated_) continue;
        view.round_ = t;
        view.inbox_ = &inbox[v];
        view.walk_results_ = &results[v];
        programs[v]->on_round(view);
        for (auto& [p, payload] : view.outbox_) {
          ctx.check_payload(payload);
          ctx.send(v, p, t);
          const Port& slot = g.port(v, p);
          next_inbox[slot.to].push_back(Inbound{slot.back, std::move(payload)});
          activity = true;
        }
        view.outbox_.clear();
        for (auto& w : view.walks_) {
          batch.push_back(std::move(w));
          batch_owner.push_back(v);
          activity = true;
        }
        view.walks_.clear();
      }
      if (!batch.empty()) {
        BatchResult res = ctx.run_walks(batch, opts.walk_mode, opts.fidelity, walk_rng);
        for (std::size_t i = 0; i < batch.size(); ++i) {
          next_results[batch_owner[i]].push_back(res.outcomes[i].detection.verdict);
        }
        t += res.rounds;  // the batch occupies these rounds
      }
      for (NodeId v = 0; v < n; ++v) {
        inbox[v].swap(next_inbox[v]);
        next_inbox[v].clear();
        results[v].swap(next_results[v]);
        next_results[v].clear();
      }
      bool all_done = true;
      for (const auto& view : views) all_done = all_done && view.terminated_;
      if (all_done) {
        out.all_terminated = true;
        break;
      }
      if (!activity || t + 1 >= opts.max_rounds) break;
    }
    out.rounds = t;
    out.ledger = ctx.ledger();
    out.transcript = ctx.transcript();
    return out;
  }
};

ProtocolRun run_protocol(const PortedGraph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
                         const ProtocolOptions& opts) {
  return Engine::run(g, programs, opts);
}

}  // namespace qroute
