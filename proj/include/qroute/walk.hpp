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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "qroute/config.hpp"
#include "qroute/electric.hpp"
#include "qroute/rng.hpp"

namespace qroute {

using WalkState = Eigen::VectorXcd;

/** Stand-in id for the virtual vertex r-bar. It never names a graph node. */
inline constexpr NodeId kRootBar = kNoNode - 1;

struct Arc {
  NodeId from;
  NodeId to;
  bool operator==(const Arc&) const = default;
};

/**
 * Basis of the walk: all arcs of the network plus (r, r-bar) and (r-bar, r).
 *
 * Arcs leaving the same vertex are contiguous ("blocks"); the root's block
 * starts with (r, r-bar). The last basis vector is (r-bar, r) on its own.
 */
class WalkSpace {
 public:
  explicit WalkSpace(const ElectricNetwork& net);

  std::size_t dim() const { return arcs_.size(); }
  const Arc& arc(std::size_t i) const { return arcs_[i]; }
  std::size_t reverse(std::size_t i) const { return rev_[i]; }
  std::optional<std::size_t> index(Arc a) const;

  std::size_t root_out() const { return root_out_; }  // (r, r-bar)
  std::size_t root_in() const { return root_in_; }    // (r-bar, r)
  NodeId root() const { return root_; }

  std::size_t block_count() const { return block_vertex_.size(); }
  NodeId block_vertex(std::size_t b) const { return block_vertex_[b]; }
  std::size_t block_begin(std::size_t b) const { return block_start_[b]; }
  std::size_t block_end(std::size_t b) const { return block_start_[b + 1]; }

 private:
  NodeId root_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> rev_;
  std::vector<NodeId> block_vertex_;
  std::vector<std::size_t> block_start_;
  std::map<std::pair<NodeId, NodeId>, std::size_t> lookup_;
  std::size_t root_out_ = 0, root_in_ = 0;
};

/**
 * U(R, M) = (-Swap) D with D a product of per-vertex reflections.
 * Immutable after construction.
 */
class WalkOperator {
 public:
  WalkOperator(const ElectricNetwork& net, double R, double C1);

  const WalkSpace& space() const { return space_; }
  double R() const { return R_; }
  double C1() const { return C1_; }
  bool block_marked(std::size_t b) const { return marked_[b] != 0; }
  /** Normalised psi-hat entry attached to basis index i (0 inside marked blocks). */
  double psi_hat(std::size_t i) const { return psi_[i]; }

  /** y = U x. Scalar is double or std::complex<double>. */
  template <class Scalar>
  void apply(const Scalar* x, Scalar* y, Scalar* scratch) const;

  WalkState apply(const WalkState& x) const;
  /** Arc reversal alone, for structural checks. */
  WalkState swap(const WalkState& x) const;

  /** Column-by-column dense matrix. Audits only. */
  Eigen::MatrixXd dense() const;

 private:
  WalkSpace space_;
  double R_, C1_;
  std::vector<double> psi_;
  std::vector<char> marked_;
};

inline WalkOperator build_walk_operator(const ElectricNetwork& net, double R, double C1) {
  return WalkOperator(net, R, C1);
}

inline WalkState apply_step(const WalkOperator& op, const WalkState& x) { return op.apply(x); }

/** (|r,r-bar> - |r-bar,r>) / sqrt 2. */
WalkState sigma_state(const WalkOperator& op);

/** 1/2 - sin(T a/2) cos((T+1) a/2) / (2 T sin(a/2)); exactly 0 at a = 0. */
double qpd_closed_form(double alpha, std::int64_t T);

/** (1/T) sum_{t=1..T} ||(I - U^t) x||^2 / 4 with a running state. */
double qpd_outcome_distribution(const WalkOperator& op, const WalkState& x, std::int64_t T);

/** Draws t in [1, T] and returns the QPD output bit. */
int qpd_sample(const WalkOperator& op, const WalkState& x, std::int64_t T, Rng& rng);

/** ceil(coeff * sqrt(1/2 + c1 R W)). */
std::int64_t walk_length(double R, double W, const Constants& k = {});
/** ceil(coeff * ln(1/delta)), at least 1. */
std::int64_t repetitions(double delta, const Constants& k = {});

enum class Verdict { kEmpty, kNonempty };
const char* to_string(Verdict v);

struct DetectionResult {
  Verdict verdict = Verdict::kEmpty;
  std::int64_t repetitions = 0;
  std::int64_t walk_length = 0;
  std::int64_t ones = 0;
  std::uint64_t steps = 0;          // repetitions * walk_length
  std::optional<double> p_one;      // exact per-trial probability (exact mode)
};

/**
 * Memo of exact per-trial probabilities keyed by the full network
 * description, so repeated identical walks are computed once. Thread-safe.
 */
class DetectionCache {
 public:
  std::optional<double> find(const std::vector<double>& key) const;
  void put(std::vector<double> key, double p);
  std::size_t size() const;
  std::uint64_t hits() const { return hits_; }

 private:
  mutable std::mutex mu_;
  std::map<std::vector<double>, double> table_;
  mutable std::uint64_t hits_ = 0;
};

struct DetectOptions {
  Constants constants{};
  DetectionCache* cache = nullptr;
  bool check_preconditions = true;
};

/** Walk-based emptiness test for the marked set of the root's component. */
DetectionResult detect_marked(const ElectricNetwork& net, double R, double W, double delta,
                              Fidelity mode, Rng& rng, const DetectOptions& opts = {});

/** Largest walk-space dimension accepted by the dense spectral audits. */
inline constexpr std::size_t kMaxSpectralDim = 4000;

struct Spectrum {
  Eigen::VectorXd phases;     // in (-pi, pi]
  Eigen::MatrixXcd vectors;   // orthonormal columns
};

/** Eigen-decomposition of U via complex Schur form (U is normal). */
Spectrum spectrum(const WalkOperator& op);

/** Norm of the projection of sigma onto the 1-eigenspace of U. */
double overlap_one_eigenspace(const WalkOperator& op, double tol = 1e-8);
/** Norm of the projection of sigma onto eigenvectors with |phase| <= theta. */
double overlap_low_phase(const WalkOperator& op, double theta);

}  // namespace qroute
