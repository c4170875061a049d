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

#include <cstdint>
#include <vector>

#include "qroute/electric.hpp"
#include "qroute/walk.hpp"

namespace qroute {

/**
 * How walks in one batch may share the network.
 *
 * kExclusive: no shared vertex at all. kEdgeDisjoint: no shared edge.
 * kMarkedShared: shared edges must touch a vertex marked in one of the walks
 * sharing it; each step then takes a query/reply/move phase of 3 messages.
 */
enum class ScheduleMode { kExclusive, kEdgeDisjoint, kMarkedShared };
const char* to_string(ScheduleMode m);

struct WalkRequest {
  ElectricNetwork net;
  double R = 1.0;
  double W = 1.0;
  double delta = 0.01;
};

struct WalkOutcome {
  DetectionResult detection;
  std::uint64_t messages = 0;
  std::uint64_t rounds = 0;
};

struct BatchResult {
  std::vector<WalkOutcome> outcomes;
  std::uint64_t messages = 0;  // sum over walks
  std::uint64_t rounds = 0;    // max over walks
};

/** Messages (and rounds) per walk step under the mode. */
std::uint64_t messages_per_step(ScheduleMode m);

/** Throws DisjointnessError naming the first conflicting edge and tokens. */
void check_batch(const std::vector<WalkRequest>& batch, ScheduleMode mode);

BatchResult schedule_walks(const std::vector<WalkRequest>& batch, ScheduleMode mode, Fidelity fidelity,
                           Rng& rng, const DetectOptions& opts = {});

}  // namespace qroute
