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

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "qroute/ported_graph.hpp"

namespace qroute {

enum class Category : std::uint8_t { kClassical = 0, kWalk = 1, kGrover = 2 };
inline constexpr std::size_t kCategoryCount = 3;
const char* to_string(Category c);

struct Counts {
  std::array<std::uint64_t, kCategoryCount> by_category{};
  std::uint64_t total() const { return by_category[0] + by_category[1] + by_category[2]; }
  std::uint64_t operator[](Category c) const { return by_category[static_cast<std::size_t>(c)]; }
};

/** A block of messages charged over the rounds [round, round + rounds). */
struct Charge {
  std::uint64_t round = 0;
  std::uint64_t rounds = 1;
  Category category = Category::kClassical;
  std::uint64_t messages = 0;
  std::uint32_t phase = 0;  // index into MessageLedger::phase_names()
};

/**
 * Message accounting for one run.
 *
 * Quantum messages are counted once per walk step or Grover query, never
 * per superposed branch. The charge log is capped; totals are always exact.
 */
class MessageLedger {
 public:
  explicit MessageLedger(std::size_t charge_capacity = 1u << 20);

  void charge(Category c, std::uint64_t messages, std::uint64_t round, std::uint64_t rounds = 1);
  /** Sets the phase tag attached to subsequent charges. */
  void set_phase(const std::string& tag);
  const std::string& phase() const { return phase_names_[current_phase_]; }

  const Counts& totals() const { return totals_; }
  std::uint64_t total() const { return totals_.total(); }
  std::uint64_t of(Category c) const { return totals_[c]; }

  /** Last round touched by any charge (exclusive end). */
  std::uint64_t last_round() const { return last_round_; }

  const std::vector<Charge>& charges() const { return charges_; }
  std::uint64_t dropped_charges() const { return dropped_; }
  const std::vector<std::string>& phase_names() const { return phase_names_; }
  const std::map<std::string, Counts>& by_phase() const { return by_phase_; }

  /** Messages charged to blocks starting in the given round. */
  Counts round_counts(std::uint64_t round) const;
  /** Sum of all logged charges; equals totals() when nothing was dropped. */
  Counts charge_sum() const;

  /** Adds another ledger's charges shifted by `offset` rounds. */
  void merge(const MessageLedger& other, std::uint64_t offset);

 private:
  std::size_t capacity_;
  std::vector<Charge> charges_;
  std::uint64_t dropped_ = 0;
  Counts totals_;
  std::map<std::string, Counts> by_phase_;
  std::vector<std::string> phase_names_{""};
  std::map<std::string, std::uint32_t> phase_index_{{"", 0}};
  std::uint32_t current_phase_ = 0;
  std::uint64_t last_round_ = 0;
};

/** One charged message (count == 1) or a block of identical ones. */
struct TranscriptRecord {
  std::uint64_t round = 0;
  NodeId sender = kNoNode;
  PortIndex port = kNoPort;
  NodeId receiver = kNoNode;      // as seen by the simulator
  PortIndex receiver_port = kNoPort;
  Category category = Category::kClassical;
  std::uint64_t count = 1;
};

/** Ring buffer of records; capacity 0 keeps everything. */
class Transcript {
 public:
  explicit Transcript(std::size_t capacity = 0) : capacity_(capacity) {}

  void add(const TranscriptRecord& r);
  const std::deque<TranscriptRecord>& records() const { return records_; }
  std::uint64_t dropped() const { return dropped_; }
  std::uint64_t message_count() const { return messages_; }  // including dropped
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<TranscriptRecord> records_;
  std::uint64_t dropped_ = 0;
  std::uint64_t messages_ = 0;
};

/** Run identification carried into exported ledgers. */
struct LedgerMeta {
  std::string run_id;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string algorithm;
  std::uint64_t rounds = 0;
};

std::string ledger_json(const MessageLedger& ledger, const LedgerMeta& meta);
std::string ledger_csv_header();
std::string ledger_csv_row(const MessageLedger& ledger, const LedgerMeta& meta);

}  // namespace qroute
