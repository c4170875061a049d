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

#include <catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "qroute/errors.hpp"
#include "qroute/walk.hpp"
#include "support/oracles.hpp"

using namespace qroute;
using cd = std::complex<double>;

namespace {

ElectricNetwork unit_path(std::size_t len, bool mark_end) {
  ElectricNetwork net(len + 1, 0);
  for (NodeId v = 0; v < len; ++v) net.add_edge(v, v + 1, 1.0);
  if (mark_end) net.mark(static_cast<NodeId>(len));
  return net;
}

WalkState random_state(std::size_t d, Rng& rng) {
  WalkState x(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cd(rng.uniform() - 0.5, rng.uniform() - 0.5);
  return x.normalized();
}

double walk_T(double R, double W) { return std::ceil(80.0 * std::sqrt(0.5 + 9.0 * R * W)); }

}  // namespace

TEST_CASE("single marked edge gives a four-dimensional walk") {
  ElectricNetwork net(2, 0);
  net.add_edge(0, 1, 1.0);
  net.mark(1);
  const WalkOperator op(net, 1.0, 9.0);
  REQUIRE(op.space().dim() == 4);
  const Eigen::MatrixXd U = op.dense();
  CHECK((U.transpose() * U - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
  CHECK((U - oracle::walk_matrix(net, op.space(), 1.0, 9.0)).norm() < 1e-12);
  // two steps by hand: sigma returns with a known overlap
  const WalkState s = sigma_state(op);
  const WalkState s2 = op.apply(op.apply(s));
  const Eigen::VectorXd sr = s.real();
  const double want = std::abs(sr.dot(U * U * sr));
  CHECK(std::abs(s.dot(s2)) == Catch::Approx(want).margin(1e-12));
}

TEST_CASE("walk operator is unitary and matches the rebuilt matrix") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto net = oracle::random_network(5 + rng.below(4), 12, rng);
    if (trial % 2) net.mark(static_cast<NodeId>(rng.below(net.node_space)));
    const double R = 1.0 + 3.0 * rng.uniform();
    const WalkOperator op(net, R, 9.0);
    const auto d = op.space().dim();
    for (int k = 0; k < 10; ++k) {
      const WalkState x = random_state(d, rng);
      CHECK(op.apply(x).norm() == Catch::Approx(1.0).margin(1e-10));
    }
    const Eigen::MatrixXd U = op.dense();
    CHECK((U.transpose() * U - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-10);
    CHECK((U - oracle::walk_matrix(net, op.space(), R, 9.0)).norm() < 1e-10);
  }
}

TEST_CASE("unitarity on 100 random states") {
  Rng rng(8);
  auto net = oracle::random_network(9, 20, rng);
  net.mark(4);
  const WalkOperator op(net, 2.0, 9.0);
  for (int k = 0; k < 100; ++k) {
    const WalkState x = random_state(op.space().dim(), rng);
    CHECK(op.apply(x).norm() == Catch::Approx(x.norm()).margin(1e-10));
  }
}

TEST_CASE("everything marked leaves U = -Swap") {
  Rng rng(2);
  auto net = oracle::random_network(6, 9, rng);
  for (NodeId v = 0; v < 6; ++v) net.mark(v);
  const WalkOperator op(net, 1.0, 9.0);
  const WalkState x = random_state(op.space().dim(), rng);
  CHECK((op.apply(x) + op.swap(x)).norm() < 1e-14);
  CHECK(overlap_one_eigenspace(op) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("root block weights and the virtual arc") {
  ElectricNetwork net(3, 0);
  net.add_edge(0, 1, 2.0);
  net.add_edge(0, 2, 3.0);
  const double R = 2.0, C1 = 9.0;
  const WalkOperator op(net, R, C1);
  const auto& sp = op.space();
  const double a = 1.0 / std::sqrt(C1 * R);
  const double norm = std::sqrt(a * a + 2.0 + 3.0);
  CHECK(op.psi_hat(sp.root_out()) == Catch::Approx(a / norm).margin(1e-14));
  CHECK(op.psi_hat(*sp.index({0, 1})) == Catch::Approx(std::sqrt(2.0) / norm).margin(1e-14));

  // D is the identity on |rbar, r>, then -Swap sends it to -|r, rbar>
  WalkState x = WalkState::Zero(static_cast<Eigen::Index>(sp.dim()));
  x(static_cast<Eigen::Index>(sp.root_in())) = 1.0;
  WalkState want = WalkState::Zero(x.size());
  want(static_cast<Eigen::Index>(sp.root_out())) = -1.0;
  CHECK((op.apply(x) - want).norm() < 1e-15);
}

TEST_CASE("sigma state") {
  Rng rng(4);
  const auto net = oracle::random_network(7, 10, rng);
  const WalkOperator op(net, 1.5, 9.0);
  const WalkState s = sigma_state(op);
  CHECK(s.norm() == Catch::Approx(1.0).margin(1e-15));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const bool on = static_cast<std::size_t>(i) == op.space().root_out() ||
                    static_cast<std::size_t>(i) == op.space().root_in();
    CHECK((std::abs(s(i)) > 0) == on);
  }
  CHECK(std::real(s.dot(op.swap(s))) == Catch::Approx(-1.0).margin(1e-15));
}

TEST_CASE("QPD closed form") {
  for (std::int64_t T : {1, 5, 100}) CHECK(qpd_closed_form(0.0, T) == 0.0);
  CHECK(qpd_closed_form(std::numbers::pi, 1) == Catch::Approx(1.0).margin(1e-15));
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const double alpha = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
    const auto T = static_cast<std::int64_t>(1 + rng.below(300));
    CHECK(qpd_closed_form(alpha, T) == Catch::Approx(oracle::qpd_sum(alpha, T)).margin(1e-9));
    const auto T20 = static_cast<std::int64_t>(std::ceil(20.0 / std::abs(alpha)));
    if (std::abs(alpha) > 1e-3) CHECK(qpd_closed_form(alpha, T20) > 0.4);
  }
}

TEST_CASE("QPD outcome on eigenvectors") {
  Rng rng(6);
  auto net = oracle::random_network(6, 9, rng);
  net.mark(static_cast<NodeId>(rng.below(6)));
  const WalkOperator op(net, 2.0, 9.0);
  const Spectrum sp = spectrum(op);
  for (Eigen::Index j = 0; j < sp.phases.size(); ++j) {
    const WalkState v = sp.vectors.col(j);
    const double alpha = sp.phases(j);
    // the vector really is an eigenvector of that phase
    CHECK((op.apply(v) - std::polar(1.0, alpha) * v).norm() < 1e-9);
    for (std::int64_t T : {1, 7, 40}) {
      const double p = qpd_outcome_distribution(op, v, T);
      CHECK(p == Catch::Approx(oracle::qpd_sum(alpha, T)).margin(1e-9));
      if (std::abs(alpha) < 1e-12) CHECK(p < 1e-12);
    }
  }
}

TEST_CASE("sigma without marks outputs 1 often") {
  Rng rng(11);
  const auto net = oracle::random_network(6, 8, rng);
  const double W = total_weight(net), R = 3.0;
  const WalkOperator op(net, R, 9.0);
  const auto T = static_cast<std::int64_t>(walk_T(R, W));
  CHECK(qpd_outcome_distribution(op, sigma_state(op), T) >= 0.3);
}

TEST_CASE("QPD sampling") {
  Rng rng(12);
  auto net = oracle::random_network(5, 7, rng);
  net.mark(2);
  const WalkOperator op(net, 2.0, 9.0);
  const WalkState s = sigma_state(op);
  const std::int64_t T = 30;
  const double p = qpd_outcome_distribution(op, s, T);
  Rng a(99);
  int ones = 0;
  const int N = 10000;
  for (int i = 0; i < N; ++i) ones += qpd_sample(op, s, T, a);
  const double sigma = std::sqrt(p * (1 - p) / N);
  CHECK(std::abs(ones / double(N) - p) <= 3 * sigma + 1e-12);

  Rng b1(5), b2(5);
  for (int i = 0; i < 50; ++i) CHECK(qpd_sample(op, s, T, b1) == qpd_sample(op, s, T, b2));

  for (NodeId v = 0; v < 5; ++v) net.mark(v);
  const WalkOperator all(net, 2.0, 9.0);
  Rng c(3);
  for (int i = 0; i < 200; ++i) CHECK(qpd_sample(all, sigma_state(all), T, c) == 0);
}

TEST_CASE("detection on a unit path") {
  const double delta = 0.05;
  int right_marked = 0, right_empty = 0;
  const int runs = 40;
  for (int i = 0; i < runs; ++i) {
    Rng rng(static_cast<std::uint64_t>(i));
    const auto r1 = detect_marked(unit_path(4, true), 4.0, 4.0, delta, Fidelity::kExact, rng);
    right_marked += r1.verdict == Verdict::kNonempty;
    REQUIRE(r1.p_one);
    CHECK(*r1.p_one <= 0.1);
    const auto r2 = detect_marked(unit_path(4, false), 4.0, 4.0, delta, Fidelity::kExact, rng);
    right_empty += r2.verdict == Verdict::kEmpty;
    CHECK(*r2.p_one >= 0.3);
  }
  // with p_one on the right side of the gap each verdict fails w.p. well below delta
  CHECK(right_marked >= runs - 2);
  CHECK(right_empty >= runs - 2);
}

TEST_CASE("cost-model detection is the reachability answer at full cost") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto net = oracle::random_network(8, 12, rng);
    // an unreachable marked vertex does not count
    net.node_space += 1;
    net.marked.assign(net.node_space, 0);
    net.mark(8);
    if (trial % 2) net.mark(static_cast<NodeId>(rng.below(8)));
    const double R = 5.0, W = total_weight(net), delta = 0.01;
    const auto d = detect_marked(net, R, W, delta, Fidelity::kCostModel, rng);
    CHECK(d.verdict == (trial % 2 ? Verdict::kNonempty : Verdict::kEmpty));
    const auto k = static_cast<std::uint64_t>(std::ceil(48.0 * std::log(1 / delta)));
    CHECK(d.steps == k * static_cast<std::uint64_t>(walk_T(R, W)));
  }
}

TEST_CASE("exact detection refuses oversize work and bad parameters") {
  Constants small;
  small.exact_step_budget = 100;
  Rng rng(1);
  DetectOptions o;
  o.constants = small;
  CHECK_THROWS_AS(detect_marked(unit_path(4, true), 4.0, 4.0, 0.1, Fidelity::kExact, rng, o), BudgetExceeded);
  // R below the effective resistance breaks the precondition
  CHECK_THROWS_AS(detect_marked(unit_path(4, true), 2.0, 4.0, 0.1, Fidelity::kExact, rng), PreconditionError);
  CHECK_THROWS_AS(WalkOperator(unit_path(2, true), 0.5, 9.0), InvalidInput);
}

TEST_CASE("overlap lemmas on small networks") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    auto net = oracle::random_network(4 + rng.below(8), 14, rng);
    const double W = total_weight(net);
    if (trial % 2) {
      net.mark(static_cast<NodeId>(rng.below(net.node_space)));
      const double R = std::max(1.0, effective_resistance(net));
      const WalkOperator op(net, R, 9.0);
      const double got = overlap_one_eigenspace(op);
      CHECK(got >= std::sqrt(0.9));
      const Eigen::MatrixXd U = oracle::walk_matrix(net, op.space(), R, 9.0);
      CHECK(got * got == Catch::Approx(oracle::one_eigenspace_weight(U, sigma_state(op).real())).margin(1e-8));
    } else {
      const double R = 1.0 + 4.0 * rng.uniform();
      const WalkOperator op(net, R, 9.0);
      const double theta = 1.0 / (4.0 * std::sqrt(0.5 + 9.0 * R * W));
      const double got = overlap_low_phase(op, theta);
      CHECK(got <= 0.25);
      const Eigen::MatrixXd U = oracle::walk_matrix(net, op.space(), R, 9.0);
      CHECK(got * got == Catch::Approx(oracle::low_phase_weight(U, sigma_state(op).real(), theta)).margin(1e-8));
    }
  }
}

TEST_CASE("walk length and repetitions") {
  CHECK(walk_length(4.0, 4.0) == static_cast<std::int64_t>(walk_T(4.0, 4.0)));
  CHECK(repetitions(0.01) == static_cast<std::int64_t>(std::ceil(48.0 * std::log(100.0))));
  CHECK(repetitions(0.999) >= 1);
}
