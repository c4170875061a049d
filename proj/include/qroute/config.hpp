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

#include <cstddef>
#include <cstdint>

namespace qroute {

enum class Fidelity { kExact, kCostModel };

/** Every tunable constant of the simulator lives here. */
struct Constants {
  // walk length T = ceil(walk_length_coeff * sqrt(1/2 + c1 * R * W))
  double walk_length_coeff = 80.0;
  double c1 = 9.0;
  // QPD repetitions k = ceil(repetition_coeff * ln(1/delta)), threshold k/5
  double repetition_coeff = 48.0;
  // ping subphase length ceil(ping_coeff * log^3 n)
  double ping_coeff = 4.0;
  // payload budget in words of ceil(log2 n) bits
  std::size_t word_budget = 4;
  // merges abort after merge_abort_coeff * n* rounds
  double merge_abort_coeff = 2.0;
  // per-phase cover congestion k = ceil(cover_congestion_coeff * n^(1/kappa) * log2 n)
  double cover_congestion_coeff = 2.0;
  // Grover failure bound alpha = n^(-grover_alpha_exponent)
  double grover_alpha_exponent = 2.0;
  // oracle calls per Grover stage: ceil(grover_stage_coeff / sqrt(eps))
  double grover_stage_coeff = 27.0;
  // exact walks refuse when T * dim would exceed this many arc updates
  std::uint64_t exact_step_budget = 4'000'000'000ULL;
  // transcript ring capacity in records, 0 keeps everything
  std::size_t transcript_capacity = 0;
};

}  // namespace qroute
