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
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qroute/bfs.hpp"
#include "qroute/config.hpp"
#include "qroute/ledger.hpp"
#include "qroute/mst.hpp"

namespace qroute {

using Json = nlohmann::ordered_json;

/** Everything needed to repeat a run. */
struct RunConfig {
  std::string subcommand;
  std::string algorithm;
  std::string graph_file;  // empty when generated
  std::string generator;
  std::map<std::string, std::string> generator_params;
  std::map<std::string, std::string> params;  // algorithm-specific: root, kappa, W, ...
  double delta = 0.01;
  std::string fidelity = "exact";
  std::uint64_t seed = 0;
  std::uint64_t rounds_cap = 0;
  std::string out_dir;
  Constants constants{};
};

Json constants_json(const Constants& k);
/** Sets one named constant; false when the name is unknown. Throws InvalidInput on a bad value. */
bool set_constant(Constants& k, const std::string& name, const std::string& value);

Json config_json(const RunConfig& c);
/** Config plus the input graph's size and content hash. */
Json manifest_json(const RunConfig& c, const PortedGraph& g);

Json mst_output_json(const MstOutput& out);
Json bfs_output_json(const BfsOutput& out);
Json tree_family_json(const TreeFamily& f);
Json cover_output_json(const CoverOutput& c);
Json ledger_to_json(const MessageLedger& ledger, const LedgerMeta& meta);

void write_json_file(const std::string& path, const Json& j);

/** Least-squares line through (log x, log y) with a 95% interval on the slope. */
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  std::size_t points = 0;
};
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qroute
