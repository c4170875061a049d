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

#include "qroute/walk.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qroute {

// ---------------------------------------------------------------- space

WalkSpace::WalkSpace(const ElectricNetwork& net) : root_(net.root) {
  std::map<NodeId, std::vector<NodeId>> out;
  out[root_];
  for (const auto& e : net.edges) {
    out[e.u].push_back(e.v);
    out[e.v].push_back(e.u);
  }
  for (auto& [v, nbrs] : out) {
    block_vertex_.push_back(v);
    block_start_.push_back(arcs_.size());
    if (v == root_) {
      root_out_ = arcs_.size();
      arcs_.push_back({root_, kRootBar});
    }
    for (NodeId u : nbrs) {
      lookup_[{v, u}] = arcs_.size();
      arcs_.push_back({v, u});
    }
  }
  block_vertex_.push_back(kRootBar);
  block_start_.push_back(arcs_.size());
  root_in_ = arcs_.size();
  arcs_.push_back({kRootBar, root_});
  block_start_.push_back(arcs_.size());

  lookup_[{root_, kRootBar}] = root_out_;
  lookup_[{kRootBar, root_}] = root_in_;
  rev_.resize(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) rev_[i] = lookup_.at({arcs_[i].to, arcs_[i].from});
}

std::optional<std::size_t> WalkSpace::index(Arc a) const {
  auto it = lookup_.find({a.from, a.to});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- operator

WalkOperator::WalkOperator(const ElectricNetwork& net, double R, double C1)
    : space_(net), R_(R), C1_(C1) {
  if (!(R >= 1.0)) throw InvalidInput("walk operator: R must be at least 1");
  if (!(C1 >= 1.0)) throw InvalidInput("walk operator: C1 must be at least 1");
  std::map<std::pair<NodeId, NodeId>, double> w;
  for (const auto& e : net.edges) {
    if (!(e.weight > 0.0)) throw InvalidInput("walk operator: nonpositive edge weight");
    w[{e.u, e.v}] = e.weight;
    w[{e.v, e.u}] = e.weight;
  }
  psi_.assign(space_.dim(), 0.0);
  marked_.assign(space_.block_count(), 0);
  for (std::size_t b = 0; b < space_.block_count(); ++b) {
    const NodeId v = space_.block_vertex(b);
    if (v == kRootBar || net.is_marked(v)) {
      marked_[b] = 1;  // identity block
      continue;
    }
    double norm2 = 0.0;
    for (std::size_t i = space_.block_begin(b); i < space_.block_end(b); ++i) {
      const Arc& a = space_.arc(i);
      const double amp = (a.to == kRootBar) ? 1.0 / std::sqrt(C1 * R) : std::sqrt(w.at({a.from, a.to}));
      psi_[i] = amp;
      norm2 += amp * amp;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = space_.block_begin(b); i < space_.block_end(b); ++i) psi_[i] *= inv;
  }
}

template <class Scalar>
void WalkOperator::apply(const Scalar* x, Scalar* y, Scalar* scratch) const {
  const std::size_t nb = space_.block_count();
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t lo = space_.block_begin(b), hi = space_.block_end(b);
    if (marked_[b]) {
      for (std::size_t i = lo; i < hi; ++i) scratch[i] = x[i];
      continue;
    }
    Scalar c{};
    for (std::size_t i = lo; i < hi; ++i) c += psi_[i] * x[i];
    c *= 2.0;
    for (std::size_t i = lo; i < hi; ++i) scratch[i] = x[i] - c * psi_[i];
  }
  const std::size_t d = space_.dim();
  for (std::size_t i = 0; i < d; ++i) y[space_.reverse(i)] = -scratch[i];
}

template void WalkOperator::apply<double>(const double*, double*, double*) const;
template void WalkOperator::apply<std::complex<double>>(const std::complex<double>*,
                                                       std::complex<double>*,
                                                       std::complex<double>*) const;

WalkState WalkOperator::apply(const WalkState& x) const {
  if (static_cast<std::size_t>(x.size()) != space_.dim()) {
    throw InvalidInput("apply_step: state dimension " + std::to_string(x.size()) +
                       " does not match walk space dimension " + std::to_string(space_.dim()));
  }
  WalkState y(x.size()), scratch(x.size());
  apply(x.data(), y.data(), scratch.data());
  return y;
}

WalkState WalkOperator::swap(const WalkState& x) const {
  WalkState y(x.size());
  for (std::size_t i = 0; i < space_.dim(); ++i) y(static_cast<Eigen::Index>(space_.reverse(i))) = x(static_cast<Eigen::Index>(i));
  return y;
}

Eigen::MatrixXd WalkOperator::dense() const {
  const auto d = space_.dim();
  Eigen::MatrixXd U(d, d);
  std::vector<double> e(d, 0.0), y(d), s(d);
  for (std::size_t j = 0; j < d; ++j) {
    e[j] = 1.0;
    apply(e.data(), y.data(), s.data());
    for (std::size_t i = 0; i < d; ++i) U(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = y[i];
    e[j] = 0.0;
  }
  return U;
}

WalkState sigma_state(const WalkOperator& op) {
  WalkState s = WalkState::Zero(static_cast<Eigen::Index>(op.space().dim()));
  s(static_cast<Eigen::Index>(op.space().root_out())) = 1.0 / std::numbers::sqrt2;
  s(static_cast<Eigen::Index>(op.space().root_in())) = -1.0 / std::numbers::sqrt2;
  return s;
}

// ---------------------------------------------------------------- QPD

double qpd_closed_form(double alpha, std::int64_t T) {
  if (T < 1) throw InvalidInput("qpd_closed_form: T must be at least 1");
  if (alpha == 0.0) return 0.0;
  const double t = static_cast<double>(T);
  return 0.5 - std::sin(t * alpha / 2) * std::cos((t + 1) * alpha / 2) / (2 * t * std::sin(alpha / 2));
}

namespace {

template <class Scalar>
double running_average(const WalkOperator& op, const std::vector<Scalar>& x0, std::int64_t T) {
  const auto d = x0.size();
  std::vector<Scalar> cur = x0, nxt(d), scratch(d);
  // U is unitary, so ||x0 - U^t x0||^2 = 2||x0||^2 - 2 Re<x0, U^t x0>;
  // the overlap only touches the support of x0.
  std::vector<std::size_t> support;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (x0[i] != Scalar{}) support.push_back(i);
    norm2 += std::norm(x0[i]);
  }
  double acc = 0.0;
  for (std::int64_t t = 1; t <= T; ++t) {
    op.apply(cur.data(), nxt.data(), scratch.data());
    cur.swap(nxt);
    double overlap = 0.0;
    for (std::size_t i : support) overlap += std::real(std::conj(x0[i]) * cur[i]);
    acc += std::max(0.0, 2.0 * norm2 - 2.0 * overlap) / 4.0;
  }
  return acc / static_cast<double>(T);
}

template <class Scalar>
double single_time(const WalkOperator& op, const std::vector<Scalar>& x0, std::int64_t t) {
  const auto d = x0.size();
  std::vector<Scalar> cur = x0, nxt(d), scratch(d);
  for (std::int64_t s = 0; s < t; ++s) {
    op.apply(cur.data(), nxt.data(), scratch.data());
    cur.swap(nxt);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += std::norm(x0[i] - cur[i]);
  return s / 4.0;
}

bool is_real(const WalkState& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i).imag() != 0.0) return false;
  return true;
}

void check_dim(const WalkOperator& op, const WalkState& x, std::int64_t T) {
  if (T < 1) throw InvalidInput("QPD: T must be at least 1");
  if (static_cast<std::size_t>(x.size()) != op.space().dim()) {
    throw InvalidInput("QPD: state dimension does not match walk space");
  }
}

}  // namespace

double qpd_outcome_distribution(const WalkOperator& op, const WalkState& x, std::int64_t T) {
  check_dim(op, x, T);
  if (is_real(x)) {
    std::vector<double> v(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) v[i] = x(i).real();
    return running_average(op, v, T);
  }
  std::vector<std::complex<double>> v(x.data(), x.data() + x.size());
  return running_average(op, v, T);
}

int qpd_sample(const WalkOperator& op, const WalkState& x, std::int64_t T, Rng& rng) {
  check_dim(op, x, T);
  const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(T))) + 1;
  std::vector<std::complex<double>> v(x.data(), x.data() + x.size());
  const double p = single_time(op, v, t);
  return rng.bernoulli(p) ? 1 : 0;
}

std::int64_t walk_length(double R, double W, const Constants& k) {
  return static_cast<std::int64_t>(std::ceil(k.walk_length_coeff * std::sqrt(0.5 + k.c1 * R * W)));
}

std::int64_t repetitions(double delta, const Constants& k) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0,1)");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(k.repetition_coeff * std::log(1.0 / delta))));
}

const char* to_string(Verdict v) { return v == Verdict::kEmpty ? "empty" : "nonempty"; }

// ---------------------------------------------------------------- detection

std::optional<double> DetectionCache::find(const std::vector<double>& key) const {
  std::lock_guard lock(mu_);
  auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

void DetectionCache::put(std::vector<double> key, double p) {
  std::lock_guard lock(mu_);
  table_.emplace(std::move(key), p);
}

std::size_t DetectionCache::size() const {
  std::lock_guard lock(mu_);
  return table_.size();
}

namespace {

std::vector<double> cache_key(const ElectricNetwork& net, double R, double C1, std::int64_t T) {
  std::vector<std::array<double, 3>> es;
  for (const auto& e : net.edges) {
    es.push_back({static_cast<double>(std::min(e.u, e.v)), static_cast<double>(std::max(e.u, e.v)), e.weight});
  }
  std::sort(es.begin(), es.end());
  std::vector<double> key{R, C1, static_cast<double>(T), static_cast<double>(net.root)};
  for (const auto& e : es) key.insert(key.end(), e.begin(), e.end());
  key.push_back(-1.0);
  for (NodeId v : net.vertices())
    if (net.is_marked(v)) key.push_back(static_cast<double>(v));
  return key;
}

}  // namespace

DetectionResult detect_marked(const ElectricNetwork& net, double R, double W, double delta,
                              Fidelity mode, Rng& rng, const DetectOptions& opts) {
  DetectionResult res;
  res.repetitions = repetitions(delta, opts.constants);
  res.walk_length = walk_length(R, W, opts.constants);
  res.steps = static_cast<std::uint64_t>(res.repetitions) * static_cast<std::uint64_t>(res.walk_length);

  if (mode == Fidelity::kCostModel) {
    res.verdict = net.marked_in_component().empty() ? Verdict::kEmpty : Verdict::kNonempty;
    return res;
  }

  if (opts.check_preconditions) {
    const double tw = total_weight(net);
    if (tw > W * (1 + 1e-12)) {
      throw PreconditionError("detect_marked: total weight " + std::to_string(tw) + " exceeds W = " +
                              std::to_string(W));
    }
    if (!net.marked_in_component().empty()) {
      const double reff = effective_resistance(net);
      if (reff > R * (1 + 1e-9)) {
        throw PreconditionError("detect_marked: effective resistance " + std::to_string(reff) +
                                " exceeds R = " + std::to_string(R));
      }
    }
  }

  const double C1 = opts.constants.c1;
  std::optional<double> p;
  std::vector<double> key;
  if (opts.cache) {
    key = cache_key(net, R, C1, res.walk_length);
    p = opts.cache->find(key);
  }
  if (!p) {
    WalkOperator op(net, R, C1);
    const double work = static_cast<double>(res.walk_length) * static_cast<double>(op.space().dim());
    if (work > static_cast<double>(opts.constants.exact_step_budget)) {
      throw BudgetExceeded("detect_marked: exact walk needs " + std::to_string(work) +
                           " arc updates, budget is " + std::to_string(opts.constants.exact_step_budget));
    }
    p = qpd_outcome_distribution(op, sigma_state(op), res.walk_length);
    if (opts.cache) opts.cache->put(std::move(key), *p);
  }
  res.p_one = *p;
  std::binomial_distribution<std::int64_t> trials(res.repetitions, std::clamp(*p, 0.0, 1.0));
  res.ones = trials(rng);
  // more than k/5 ones points to "no marked vertex"
  res.verdict = (5 * res.ones > res.repetitions) ? Verdict::kEmpty : Verdict::kNonempty;
  return res;
}

// ---------------------------------------------------------------- spectra

Spectrum spectrum(const WalkOperator& op) {
  const auto d = op.space().dim();
  if (d > kMaxSpectralDim) {
    throw BudgetExceeded("spectral audit refused: walk space dimension " + std::to_string(d) +
                         " exceeds " + std::to_string(kMaxSpectralDim) +
                         "; use the property tests on smaller networks");
  }
  Eigen::MatrixXcd U = op.dense().cast<std::complex<double>>();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U);
  Spectrum s;
  s.vectors = schur.matrixU();
  s.phases.resize(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(d); ++i) {
    double a = std::arg(schur.matrixT()(i, i));
    if (a <= -std::numbers::pi) a += 2 * std::numbers::pi;
    s.phases(i) = a;
  }
  return s;
}

namespace {

double projected_norm(const WalkOperator& op, double theta) {
  Spectrum s = spectrum(op);
  WalkState sigma = sigma_state(op);
  Eigen::VectorXcd c = s.vectors.adjoint() * sigma;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (std::abs(s.phases(i)) <= theta) acc += std::norm(c(i));
  return std::sqrt(acc);
}

}  // namespace

double overlap_one_eigenspace(const WalkOperator& op, double tol) { return projected_norm(op, tol); }

double overlap_low_phase(const WalkOperator& op, double theta) { return projected_norm(op, theta); }

}  // namespace qroute
