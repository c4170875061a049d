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

#include "qroute/scheduler.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "qroute/errors.hpp"

namespace qroute {

const char* to_string(ScheduleMode m) {
  switch (m) {
    case ScheduleMode::kExclusive:
      return "exclusive";
    case ScheduleMode::kEdgeDisjoint:
      return "edge-disjoint";
    case ScheduleMode::kMarkedShared:
      return "marked-shared";
  }
  return "?";
}

std::uint64_t messages_per_step(ScheduleMode m) { return m == ScheduleMode::kMarkedShared ? 3 : 1; }

namespace {

std::string token_name(const Token& t) {
  std::ostringstream os;
  os << "token(" << t.owner << "," << t.lo << "," << t.hi << ")";
  return os.str();
}

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

void check_batch(const std::vector<WalkRequest>& batch, ScheduleMode mode) {
  for (std::size_t i = 0; i < batch.size(); ++i)
    for (std::size_t j = i + 1; j < batch.size(); ++j)
      if (batch[i].net.token == batch[j].net.token) {
        throw DisjointnessError("duplicate " + token_name(batch[i].net.token) + " in batch");
      }

  if (mode == ScheduleMode::kExclusive) {
    std::unordered_map<NodeId, std::size_t> owner;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      for (NodeId v : batch[i].net.vertices()) {
        auto [it, fresh] = owner.emplace(v, i);
        if (!fresh && it->second != i) {
          throw DisjointnessError("exclusive mode: vertex " + std::to_string(v) + " shared by " +
                                  token_name(batch[it->second].net.token) + " and " +
                                  token_name(batch[i].net.token));
        }
      }
    }
    return;
  }

  std::unordered_map<std::uint64_t, std::size_t> owner;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    for (const auto& e : batch[i].net.edges) {
      auto [it, fresh] = owner.emplace(edge_key(e.u, e.v), i);
      if (fresh || it->second == i) continue;
      const auto& a = batch[it->second].net;
      const auto& b = batch[i].net;
      const bool excused = mode == ScheduleMode::kMarkedShared &&
                           (a.is_marked(e.u) || a.is_marked(e.v) || b.is_marked(e.u) || b.is_marked(e.v));
      if (!excused) {
        throw DisjointnessError(std::string(to_string(mode)) + " mode: edge {" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + "} shared by " + token_name(a.token) + " and " +
                                token_name(b.token));
      }
    }
  }
}

BatchResult schedule_walks(const std::vector<WalkRequest>& batch, ScheduleMode mode, Fidelity fidelity,
                           Rng& rng, const DetectOptions& opts) {
  check_batch(batch, mode);
  const std::uint64_t per_step = messages_per_step(mode);
  BatchResult out;
  for (const auto& req : batch) {
    Rng walk_rng = rng.split();
    WalkOutcome o;
    o.detection = detect_marked(req.net, req.R, req.W, req.delta, fidelity, walk_rng, opts);
    o.messages = o.detection.steps * per_step;
    o.rounds = o.detection.steps * per_step;
    out.messages += o.messages;
    out.rounds = std::max(out.rounds, o.rounds);
    out.outcomes.push_back(std::move(o));
  }
  return out;
}

}  // namespace qroute
