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

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qroute/config.hpp"
#include "qroute/ledger.hpp"
#include "qroute/ported_graph.hpp"
#include "qroute/scheduler.hpp"

namespace qroute {

/**
 * Round clock, ledger and transcript shared by everything that runs on a
 * graph. Every message goes through send()/send_bulk(), which check the
 * port and record who sent what where.
 */
class SimContext {
 public:
  explicit SimContext(const PortedGraph& g, const Constants& c = {});

  const PortedGraph& graph() const { return *graph_; }
  const Constants& constants() const { return constants_; }
  MessageLedger& ledger() { return ledger_; }
  const MessageLedger& ledger() const { return ledger_; }
  Transcript& transcript() { return transcript_; }
  const Transcript& transcript() const { return transcript_; }

  std::uint64_t now() const { return now_; }
  void set_now(std::uint64_t r) { now_ = r; }
  void advance(std::uint64_t rounds) { now_ += rounds; }

  void set_phase(const std::string& tag) { ledger_.set_phase(tag); }

  /** One message from v over port p, sent in round `at`. */
  void send(NodeId v, PortIndex p, std::uint64_t at, Category c = Category::kClassical);
  void send(NodeId v, PortIndex p) { send(v, p, now_); }
  /** `count` identical messages from v over p spread over `rounds` rounds from `at`. */
  void send_bulk(NodeId v, PortIndex p, std::uint64_t count, std::uint64_t at, std::uint64_t rounds,
                 Category c);

  /** Bits per payload word: ceil(log2 n), at least 1. */
  std::size_t word_bits() const;
  /** Throws ProtocolError when the payload is over the word budget. */
  void check_payload(const std::vector<std::uint64_t>& words) const;

  /** Runs a walk batch starting now, charges it, and returns the outcome. Does not move the clock. */
  BatchResult run_walks(const std::vector<WalkRequest>& batch, ScheduleMode mode, Fidelity fidelity, Rng& rng,
                        DetectionCache* cache = nullptr);

 private:
  const PortedGraph* graph_;
  Constants constants_;
  MessageLedger ledger_;
  Transcript transcript_;
  std::uint64_t now_ = 0;
};

/**
 * Fork-join over the round clock: each branch starts at the same round and
 * the join moves the clock to the latest branch end.
 */
class Concurrent {
 public:
  explicit Concurrent(SimContext& ctx) : ctx_(ctx), start_(ctx.now()), end_(ctx.now()) {}
  void branch() {
    end_ = std::max(end_, ctx_.now());
    ctx_.set_now(start_);
  }
  void join() {
    end_ = std::max(end_, ctx_.now());
    ctx_.set_now(end_);
  }

 private:
  SimContext& ctx_;
  std::uint64_t start_, end_;
};

// ---------------------------------------------------------------- node programs

using Payload = std::vector<std::uint64_t>;

struct Inbound {
  PortIndex port;
  Payload payload;
};

class NodeView;

/** Per-node behaviour for run_protocol. Called once per round until terminated. */
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void on_round(NodeView& view) = 0;
};

/** What a program sees and can do during one round. */
class NodeView {
 public:
  NodeId id() const { return id_; }
  std::size_t degree() const { return degree_; }
  std::uint64_t round() const { return round_; }
  const std::vector<Inbound>& inbox() const { return *inbox_; }
  /** Verdicts of walks this node requested, delivered the round after the batch ends. */
  const std::vector<Verdict>& walk_results() const { return *walk_results_; }
  Rng& rng() { return *rng_; }

  void send(PortIndex p, Payload payload);
  void request_walk(WalkRequest req);
  void terminate() { terminated_ = true; }
  bool terminated() const { return terminated_; }

 private:
  friend struct Engine;
  NodeId id_ = 0;
  std::size_t degree_ = 0;
  std::uint64_t round_ = 0;
  const std::vector<Inbound>* inbox_ = nullptr;
  const std::vector<Verdict>* walk_results_ = nullptr;
  Rng* rng_ = nullptr;
  bool terminated_ = false;
  std::vector<std::pair<PortIndex, Payload>> outbox_;
  std::vector<WalkRequest> walks_;
};

struct ProtocolOptions {
  std::uint64_t max_rounds = 1'000'000;
  std::uint64_t seed = 0;
  Constants constants{};
  ScheduleMode walk_mode = ScheduleMode::kEdgeDisjoint;
  Fidelity fidelity = Fidelity::kExact;
};

struct ProtocolRun {
  MessageLedger ledger;
  Transcript transcript;
  std::uint64_t rounds = 0;
  bool all_terminated = false;
};

/**
 * Lock-step execution: sends of round t arrive in round t+1. The run ends
 * when every program has terminated, when a round passes with nothing sent
 * or requested and nothing in flight, or at max_rounds.
 */
ProtocolRun run_protocol(const PortedGraph& g, std::vector<std::unique_ptr<NodeProgram>>& programs,
                         const ProtocolOptions& opts = {});

}  // namespace qroute
