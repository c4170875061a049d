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

#include "qroute/report.hpp"

#include <cmath>
#include <fstream>

#include "qroute/errors.hpp"
#include "qroute/graph_io.hpp"

namespace qroute {
namespace {

template <typename T>
T parse_number(const std::string& name, const std::string& value) {
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(value, &used));
    } else {
      out = static_cast<T>(std::stoull(value, &used));
    }
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw InvalidInput("constant " + name + ": cannot parse '" + value + "'");
  }
}

Json port_or_null(PortIndex p) { return p == kNoPort ? Json(nullptr) : Json(p); }

}  // namespace

Json constants_json(const Constants& k) {
  Json j;
  j["walk_length_coeff"] = k.walk_length_coeff;
  j["c1"] = k.c1;
  j["repetition_coeff"] = k.repetition_coeff;
  j["ping_coeff"] = k.ping_coeff;
  j["word_budget"] = k.word_budget;
  j["merge_abort_coeff"] = k.merge_abort_coeff;
  j["cover_congestion_coeff"] = k.cover_congestion_coeff;
  j["grover_alpha_exponent"] = k.grover_alpha_exponent;
  j["grover_stage_coeff"] = k.grover_stage_coeff;
  j["exact_step_budget"] = k.exact_step_budget;
  j["transcript_capacity"] = k.transcript_capacity;
  return j;
}

bool set_constant(Constants& k, const std::string& name, const std::string& value) {
  if (name == "walk_length_coeff") k.walk_length_coeff = parse_number<double>(name, value);
  else if (name == "c1") k.c1 = parse_number<double>(name, value);
  else if (name == "repetition_coeff") k.repetition_coeff = parse_number<double>(name, value);
  else if (name == "ping_coeff") k.ping_coeff = parse_number<double>(name, value);
  else if (name == "word_budget") k.word_budget = parse_number<std::size_t>(name, value);
  else if (name == "merge_abort_coeff") k.merge_abort_coeff = parse_number<double>(name, value);
  else if (name == "cover_congestion_coeff") k.cover_congestion_coeff = parse_number<double>(name, value);
  else if (name == "grover_alpha_exponent") k.grover_alpha_exponent = parse_number<double>(name, value);
  else if (name == "grover_stage_coeff") k.grover_stage_coeff = parse_number<double>(name, value);
  else if (name == "exact_step_budget") k.exact_step_budget = parse_number<std::uint64_t>(name, value);
  else if (name == "transcript_capacity") k.transcript_capacity = parse_number<std::size_t>(name, value);
  else return false;
  return true;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["algorithm"] = c.algorithm;
  if (c.graph_file.empty()) {
    j["graph"] = {{"generator", c.generator}, {"params", c.generator_params}};
  } else {
    j["graph"] = {{"file", c.graph_file}};
  }
  j["params"] = c.params;
  j["delta"] = c.delta;
  j["fidelity"] = c.fidelity;
  j["seed"] = c.seed;
  j["rounds_cap"] = c.rounds_cap;
  j["out_dir"] = c.out_dir;
  j["constants"] = constants_json(c.constants);
  return j;
}

Json manifest_json(const RunConfig& c, const PortedGraph& g) {
  Json j;
  j["config"] = config_json(c);
  j["graph_hash"] = graph_hash(g);
  j["n"] = g.node_count();
  j["m"] = g.edge_count();
  return j;
}

Json mst_output_json(const MstOutput& out) {
  Json nodes = Json::array();
  for (NodeId v = 0; v < out.parent.size(); ++v) {
    nodes.push_back({{"node", v},
                     {"parent", port_or_null(out.parent[v])},
                     {"children", out.children[v]},
                     {"fragment", out.fragment_id[v]}});
  }
  return {{"roots", out.roots}, {"edges", out.edges}, {"nodes", nodes}};
}

Json bfs_output_json(const BfsOutput& out) {
  Json nodes = Json::array();
  for (NodeId v = 0; v < out.layer.size(); ++v) {
    nodes.push_back(
        {{"node", v}, {"layer", out.layer[v]}, {"parent", port_or_null(out.parent[v])}, {"children", out.children[v]}});
  }
  return {{"root", out.root}, {"nodes", nodes}};
}

Json tree_family_json(const TreeFamily& f) {
  Json trees = Json::array();
  for (const auto& t : f.trees) {
    trees.push_back({{"root", t.root}, {"depth", t.depth}, {"phase", t.phase}, {"size", t.members.size()}});
  }
  Json nodes = Json::array();
  for (NodeId v = 0; v < f.membership.size(); ++v) {
    Json ms = Json::array();
    for (const auto& m : f.membership[v]) {
      ms.push_back({{"tree", m.tree}, {"parent", port_or_null(m.parent)}, {"depth", m.depth}});
    }
    nodes.push_back({{"node", v}, {"memberships", ms}});
  }
  return {{"trees", trees}, {"nodes", nodes}};
}

Json cover_output_json(const CoverOutput& c) {
  Json j = tree_family_json(c.family);
  j["kappa"] = c.kappa;
  j["W"] = c.W;
  Json phases = Json::array();
  for (const auto& p : c.phases) {
    phases.push_back({{"sample_rate", p.sample_rate},
                      {"sampled", p.sampled},
                      {"depth", p.depth},
                      {"cover_radius", p.cover_radius},
                      {"congestion", p.congestion},
                      {"newly_covered", p.newly_covered}});
  }
  j["phases"] = phases;
  return j;
}

Json ledger_to_json(const MessageLedger& ledger, const LedgerMeta& meta) {
  return Json::parse(ledger_json(ledger, meta));
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << '\n';
}

namespace {

// Two-sided 95% Student t quantile.
double t975(std::size_t df) {
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                                 2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                                 2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df == 0) return 0.0;
  return df <= 30 ? table[df - 1] : 1.96 + 2.4 / static_cast<double>(df);
}

}  // namespace

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidInput("fit_loglog: x and y differ in length");
  LogLogFit f;
  f.points = x.size();
  if (f.points < 2) throw InvalidInput("fit_loglog: need at least two points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw InvalidInput("fit_loglog: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double k = static_cast<double>(f.points);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InvalidInput("fit_loglog: all x values are equal");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (f.points > 2) {
    double sse = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - f.intercept - f.slope * lx[i];
      sse += r * r;
    }
    f.slope_stderr = std::sqrt(sse / (k - 2) / sxx);
  }
  const double t = t975(f.points - 2);
  f.ci_low = f.slope - t * f.slope_stderr;
  f.ci_high = f.slope + t * f.slope_stderr;
  return f;
}

}  // namespace qroute
