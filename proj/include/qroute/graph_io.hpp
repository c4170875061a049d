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
#include <iosfwd>
#include <string>

#include "qroute/ported_graph.hpp"

namespace qroute {

// File format: "n m weighted" then one "u v [w]" line per edge.
// Edges are written in edge-id order, which reproduces port order on read.

PortedGraph read_graph(std::istream& in);
PortedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const PortedGraph& g);
void write_graph_file(const std::string& path, const PortedGraph& g);
std::string graph_to_string(const PortedGraph& g);

/** FNV-1a over the canonical text form, printed as 16 hex digits. */
std::string graph_hash(const PortedGraph& g);

}  // namespace qroute
