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

#include <stdexcept>
#include <string>

namespace qroute {

/** Base of everything the library throws on purpose. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Malformed input: bad edge lists, bad files, bad parameters. */
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/** A documented precondition of an operation does not hold. */
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/** Work would exceed a configured compute or enumeration budget. */
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/** A node program broke the model (bad port, oversized payload). */
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/** Concurrent walks violate the disjointness rule of their mode. */
class DisjointnessError : public Error {
 public:
  using Error::Error;
};

/** The input graph is not connected where connectivity is required. */
class Disconnected : public Error {
 public:
  using Error::Error;
};

}  // namespace qroute
