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

#include "qroute/ledger.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace qroute {

const char* to_string(Category c) {
  switch (c) {
    case Category::kClassical:
      return "classical";
    case Category::kWalk:
      return "walk";
    case Category::kGrover:
      return "grover";
  }
  return "?";
}

MessageLedger::MessageLedger(std::size_t charge_capacity) : capacity_(charge_capacity) {}

void MessageLedger::set_phase(const std::string& tag) {
  auto [it, fresh] = phase_index_.try_emplace(tag, static_cast<std::uint32_t>(phase_names_.size()));
  if (fresh) phase_names_.push_back(tag);
  current_phase_ = it->second;
}

void MessageLedger::charge(Category c, std::uint64_t messages, std::uint64_t round, std::uint64_t rounds) {
  if (rounds == 0) rounds = 1;
  last_round_ = std::max(last_round_, round + rounds);
  if (messages == 0) return;
  totals_.by_category[static_cast<std::size_t>(c)] += messages;
  by_phase_[phase_names_[current_phase_]].by_category[static_cast<std::size_t>(c)] += messages;
  if (!charges_.empty()) {
    Charge& last = charges_.back();
    if (last.round == round && last.rounds == rounds && last.category == c && last.phase == current_phase_) {
      last.messages += messages;
      return;
    }
  }
  if (charges_.size() >= capacity_) {
    ++dropped_;
    return;
  }
  charges_.push_back(Charge{round, rounds, c, messages, current_phase_});
}

Counts MessageLedger::round_counts(std::uint64_t round) const {
  Counts out;
  for (const auto& ch : charges_)
    if (ch.round == round) out.by_category[static_cast<std::size_t>(ch.category)] += ch.messages;
  return out;
}

Counts MessageLedger::charge_sum() const {
  Counts out;
  for (const auto& ch : charges_) out.by_category[static_cast<std::size_t>(ch.category)] += ch.messages;
  return out;
}

void MessageLedger::merge(const MessageLedger& other, std::uint64_t offset) {
  const auto saved = current_phase_;
  for (const auto& ch : other.charges_) {
    set_phase(other.phase_names_[ch.phase]);
    charge(ch.category, ch.messages, ch.round + offset, ch.rounds);
  }
  current_phase_ = saved;
  // dropped charges are not replayable; keep totals exact anyway
  if (other.dropped_ > 0) {
    Counts logged = other.charge_sum();
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      totals_.by_category[c] += other.totals_.by_category[c] - logged.by_category[c];
    }
    dropped_ += other.dropped_;
  }
  last_round_ = std::max(last_round_, other.last_round_ + offset);
}

void Transcript::add(const TranscriptRecord& r) {
  messages_ += r.count;
  if (capacity_ != 0 && records_.size() == capacity_) {
    records_.pop_front();
    ++dropped_;
  }
  records_.push_back(r);
}

std::string ledger_json(const MessageLedger& ledger, const LedgerMeta& meta) {
  nlohmann::ordered_json j;
  j["run_id"] = meta.run_id;
  j["seed"] = meta.seed;
  j["n"] = meta.n;
  j["m"] = meta.m;
  j["algorithm"] = meta.algorithm;
  j["rounds"] = meta.rounds;
  j["messages"] = {{"classical", ledger.of(Category::kClassical)},
                   {"walk", ledger.of(Category::kWalk)},
                   {"grover", ledger.of(Category::kGrover)},
                   {"total", ledger.total()}};
  auto phases = nlohmann::ordered_json::array();
  for (const auto& [tag, c] : ledger.by_phase()) {
    phases.push_back({{"phase", tag},
                      {"classical", c[Category::kClassical]},
                      {"walk", c[Category::kWalk]},
                      {"grover", c[Category::kGrover]},
                      {"total", c.total()}});
  }
  j["phases"] = phases;
  return j.dump(2);
}

std::string ledger_csv_header() { return "run_id,seed,n,m,algorithm,rounds,classical,walk,grover,total"; }

std::string ledger_csv_row(const MessageLedger& ledger, const LedgerMeta& meta) {
  std::ostringstream os;
  os << meta.run_id << ',' << meta.seed << ',' << meta.n << ',' << meta.m << ',' << meta.algorithm << ','
     << meta.rounds << ',' << ledger.of(Category::kClassical) << ',' << ledger.of(Category::kWalk) << ','
     << ledger.of(Category::kGrover) << ',' << ledger.total();
  return os.str();
}

}  // namespace qroute
