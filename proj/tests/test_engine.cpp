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

#include "json.hpp"
#include "qroute/errors.hpp"
#include "qroute/generators.hpp"
#include "qroute/ledger.hpp"
#include "qroute/sim.hpp"

using namespace qroute;

namespace {

// Floods a token: the source starts, every node sends once on all its ports
// when it first holds the token. Every edge then carries exactly two messages.
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

// Minimum toward node 0 on a path 0 - 1 - ... - (n-1); ports follow input order.
class PathConvergecast : public NodeProgram {
 public:
  PathConvergecast(NodeId id, std::size_t n, std::uint64_t value) : id_(id), n_(n), best_(value) {}
  void on_round(NodeView& v) override {
    const bool leaf = id_ + 1 == n_;
    for (const auto& in : v.inbox()) best_ = std::min(best_, in.payload.at(0));
    if (leaf || !v.inbox().empty()) {
      if (id_ != 0) v.send(0, {best_});  // port 0 leads toward node 0
      v.terminate();
    }
  }
  std::uint64_t best() const { return best_; }

 private:
  NodeId id_;
  std::size_t n_;
  std::uint64_t best_;
};

class Idle : public NodeProgram {
 public:
  void on_round(NodeView&) override {}
};

class SendOn : public NodeProgram {
 public:
  SendOn(PortIndex p, Payload payload) : p_(p), payload_(std::move(payload)) {}
  void on_round(NodeView& v) override {
    if (v.round() == 0) v.send(p_, payload_);
  }

 private:
  PortIndex p_;
  Payload payload_;
};

}  // namespace

TEST_CASE("flooding on K5 sends two messages per edge") {
  const auto g = gen_complete(5);
  std::vector<std::unique_ptr<NodeProgram>> progs;
  for (NodeId v = 0; v < 5; ++v) progs.push_back(std::make_unique<Flood>(v == 0));
  const auto run = run_protocol(g, progs);
  CHECK(run.all_terminated);
  CHECK(run.ledger.of(Category::kClassical) == 2 * g.edge_count());
  CHECK(run.ledger.total() == 20);
  CHECK(run.transcript.message_count() == 20);
  // every record names the true receiver and its port
  for (const auto& r : run.transcript.records()) {
    CHECK(g.port(r.sender, r.port).to == r.receiver);
    CHECK(g.port(r.receiver, r.receiver_port).to == r.sender);
  }
}

TEST_CASE("convergecast on a path uses n - 1 messages") {
  for (std::size_t n : {2, 5, 12}) {
    const auto g = gen_path(n);
    std::vector<std::unique_ptr<NodeProgram>> progs;
    std::vector<PathConvergecast*> raw;
    for (NodeId v = 0; v < n; ++v) {
      auto p = std::make_unique<PathConvergecast>(v, n, 1 + (v * 7) % 11);
      raw.push_back(p.get());
      progs.push_back(std::move(p));
    }
    const auto run = run_protocol(g, progs);
    CHECK(run.ledger.total() == n - 1);
    std::uint64_t want = 1000;
    for (NodeId v = 0; v < n; ++v) want = std::min<std::uint64_t>(want, 1 + (v * 7) % 11);
    CHECK(raw[0]->best() == want);
    CHECK(run.rounds == n - 1);
  }
}

TEST_CASE("programs that do nothing end at round 0") {
  const auto g = gen_cycle(6);
  std::vector<std::unique_ptr<NodeProgram>> progs;
  for (NodeId v = 0; v < 6; ++v) progs.push_back(std::make_unique<Idle>());
  const auto run = run_protocol(g, progs);
  CHECK(run.ledger.total() == 0);
  CHECK(run.rounds == 0);
  CHECK_FALSE(run.all_terminated);
}

TEST_CASE("the engine enforces ports and payload size") {
  const auto g = gen_path(4);
  {
    std::vector<std::unique_ptr<NodeProgram>> progs;
    for (NodeId v = 0; v < 4; ++v) progs.push_back(std::make_unique<SendOn>(v == 0 ? 3 : 0, Payload{1}));
    CHECK_THROWS_AS(run_protocol(g, progs), ProtocolError);
  }
  {
    // 4 words of 2 bits each on a 4-node graph; a 64-bit word is far over
    std::vector<std::unique_ptr<NodeProgram>> progs;
    for (NodeId v = 0; v < 4; ++v) progs.push_back(std::make_unique<SendOn>(0, Payload{~0ULL}));
    CHECK_THROWS_AS(run_protocol(g, progs), ProtocolError);
  }
  {
    std::vector<std::unique_ptr<NodeProgram>> progs;
    progs.push_back(std::make_unique<Idle>());
    CHECK_THROWS_AS(run_protocol(g, progs), InvalidInput);
  }
}

TEST_CASE("ledger bookkeeping") {
  MessageLedger l(4);
  l.set_phase("a");
  l.charge(Category::kClassical, 3, 0);
  l.charge(Category::kWalk, 10, 1, 5);
  l.set_phase("b");
  l.charge(Category::kGrover, 2, 7);
  CHECK(l.total() == 15);
  CHECK(l.of(Category::kWalk) == 10);
  CHECK(l.last_round() == 8);
  CHECK(l.by_phase().at("a").total() == 13);
  CHECK(l.by_phase().at("b")[Category::kGrover] == 2);
  CHECK(l.charge_sum().total() == l.total());
  CHECK(l.round_counts(1)[Category::kWalk] == 10);

  // the log is capped but totals stay exact
  for (int i = 0; i < 10; ++i) l.charge(Category::kClassical, 1, 9 + i);
  CHECK(l.total() == 25);
  CHECK(l.dropped_charges() > 0);

  MessageLedger m;
  m.charge(Category::kClassical, 1, 0);
  m.merge(l, 100);
  CHECK(m.total() == 26);

  const auto j = nlohmann::json::parse(ledger_json(l, LedgerMeta{"x", 1, 4, 3, "test", 9}));
  CHECK(j.dump().find("\"test\"") != std::string::npos);
  CHECK(ledger_csv_header().find(',') != std::string::npos);
}

TEST_CASE("transcript ring keeps the newest records") {
  Transcript t(3);
  for (std::uint64_t r = 0; r < 5; ++r) t.add(TranscriptRecord{r, 0, 0, 1, 0, Category::kClassical, 2});
  CHECK(t.records().size() == 3);
  CHECK(t.records().front().round == 2);
  CHECK(t.dropped() == 2);
  CHECK(t.message_count() == 10);
}

TEST_CASE("context sends and fork-join clock") {
  const auto g = gen_star(4);
  SimContext ctx(g);
  ctx.send_bulk(0, 1, 5, 0, 3, Category::kGrover);
  CHECK(ctx.ledger().of(Category::kGrover) == 5);
  CHECK(ctx.transcript().records().back().receiver == g.neighbor(0, 1));
  CHECK_THROWS_AS(ctx.send(1, 1, 0), ProtocolError);

  Concurrent fork(ctx);
  ctx.advance(4);
  fork.branch();
  ctx.advance(9);
  fork.branch();
  ctx.advance(2);
  fork.join();
  CHECK(ctx.now() == 9);
}

TEST_CASE("runs are reproducible from the seed") {
  const auto g = gen_random_connected(15, 30, false, 3);
  auto go = [&](std::uint64_t seed) {
    std::vector<std::unique_ptr<NodeProgram>> progs;
    for (NodeId v = 0; v < 15; ++v) progs.push_back(std::make_unique<Flood>(v == 0));
    ProtocolOptions o;
    o.seed = seed;
    return run_protocol(g, progs, o);
  };
  const auto a = go(1), b = go(1);
  REQUIRE(a.transcript.records().size() == b.transcript.records().size());
  for (std::size_t i = 0; i < a.transcript.records().size(); ++i) {
    CHECK(a.transcript.records()[i].sender == b.transcript.records()[i].sender);
    CHECK(a.transcript.records()[i].round == b.transcript.records()[i].round);
  }
}
