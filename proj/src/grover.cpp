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

#include "qroute/grover.hpp"

#include <cmath>

#include "qroute/errors.hpp"
#include "qroute/sim.hpp"

namespace qroute {

std::uint64_t grover_stages(double alpha) {
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(std::log(1.0 / alpha) / std::log(3.0))));
}

std::uint64_t grover_stage_budget(double epsilon, const Constants& k) {
  return static_cast<std::uint64_t>(std::ceil(k.grover_stage_coeff / std::sqrt(epsilon)));
}

std::uint64_t grover_round_bound(std::size_t domain_size, double epsilon, double alpha, std::uint64_t check_rounds,
                                 const Constants& k) {
  // a stage stops once its budget is spent; the last run overshoots by < 2 sqrt(N) + 1 calls
  const auto overshoot = 2 * static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(domain_size)))) + 1;
  return grover_stages(alpha) * (grover_stage_budget(epsilon, k) + overshoot) * check_rounds;
}

GroverResult distributed_grover(const PortedGraph& g, const GroverTask& task, Rng& rng, const Constants& k) {
  if (!(task.epsilon > 0.0 && task.epsilon <= 1.0)) throw InvalidInput("grover: epsilon must lie in (0,1]");
  if (!(task.alpha > 0.0 && task.alpha < 1.0)) throw InvalidInput("grover: alpha must lie in (0,1)");
  const std::size_t size = task.domain.empty() ? g.degree(task.owner) : task.domain.size();
  if (size == 0) throw InvalidInput("grover: empty search domain at node " + std::to_string(task.owner));

  std::vector<PortIndex> good;
  if (task.marked_ports) {
    good = *task.marked_ports;
  } else if (task.domain.empty()) {
    for (PortIndex p = 0; p < size; ++p)
      if (task.marked(p)) good.push_back(p);
  } else {
    for (PortIndex p : task.domain)
      if (task.marked(p)) good.push_back(p);
  }
  const double N = static_cast<double>(size);
  const double theta = std::asin(std::sqrt(static_cast<double>(good.size()) / N));
  const auto root_n = static_cast<std::uint64_t>(std::ceil(std::sqrt(N)));

  GroverResult res;
  const std::uint64_t stages = grover_stages(task.alpha);
  const std::uint64_t budget = grover_stage_budget(task.epsilon, k);
  for (std::uint64_t s = 0; s < stages && !res.found; ++s) {
    ++res.stages_run;
    std::uint64_t spent = 0;
    double cap = 1.0;
    while (spent < budget) {
      const auto m = std::min(root_n, static_cast<std::uint64_t>(std::ceil(cap)));
      const std::uint64_t j = rng.below(std::max<std::uint64_t>(1, m));
      res.iterations += j;
      res.checks += 1;
      spent += 2 * j + 1;
      // with nothing marked only the spend matters
      if (!good.empty() && rng.bernoulli(std::pow(std::sin((2.0 * static_cast<double>(j) + 1.0) * theta), 2))) {
        res.found = good[rng.below(good.size())];  // verified by the check just charged
        break;
      }
      cap *= 6.0 / 5.0;
    }
  }
  res.oracle_calls = 2 * res.iterations + res.checks;
  res.messages = res.oracle_calls * task.check_messages;
  res.rounds = res.oracle_calls * task.check_rounds;
  return res;
}

void charge_grover(SimContext& ctx, const GroverTask& task, const GroverResult& res, std::uint64_t at) {
  if (res.messages == 0) return;
  const PortedGraph& g = ctx.graph();
  const PortIndex p = res.found ? *res.found : (task.domain.empty() ? 0 : task.domain.front());
  const Port& slot = g.port(task.owner, p);
  const std::uint64_t queries = (res.messages + 1) / 2;
  ctx.send_bulk(task.owner, p, queries, at, res.rounds, Category::kGrover);
  ctx.send_bulk(slot.to, slot.back, res.messages - queries, at, res.rounds, Category::kGrover);
}

}  // namespace qroute
