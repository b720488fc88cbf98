// Copyright 2026 The qmetric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmetric/metrics.hpp"

#include <numbers>
#include <random>

#include "gtest/gtest.h"

using namespace qmetric;
using C = std::complex<double>;
using State = StateVector<double>;
using Density = DensityMatrix<double>;
using Vec = Eigen::VectorXd;

namespace {

constexpr double kPi = std::numbers::pi;

State ket(double re0, double re1) {
  ComplexVector<double> a(2);
  a << re0, re1;
  return State(1, a.normalized());
}

State random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector<double> a(qubit_dim(n));
  for (auto& v : a) v = C(g(rng), g(rng));
  return State(n, a.normalized());
}

std::vector<State> random_states(int n, int m, std::mt19937_64& rng) {
  std::vector<State> out;
  for (int i = 0; i < m; ++i) out.push_back(random_state(n, rng));
  return out;
}

Density pure(const State& s) { return density_from_states(std::vector<State>{s}); }

ComplexMatrix<double> exact_conjugation(const Density& eta, const Density& rho, const Density& sigma,
                                        double delta) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<double>> es(rho.matrix() - sigma.matrix());
  const ComplexVector<double> phases =
      (es.eigenvalues().cast<C>() * C(0, -delta)).array().exp().matrix();
  const ComplexMatrix<double> u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return u * eta.matrix() * u.adjoint();
}

double dme_error(const Density& eta, const Density& rho, const Density& sigma, double delta) {
  return (dme_trotter_step(eta, rho, sigma, delta).matrix() - exact_conjugation(eta, rho, sigma, delta)).norm();
}

}  // namespace

TEST(OverlapExact, Examples) {
  EXPECT_DOUBLE_EQ(overlap_exact(State::zero(1), State::zero(1)), 1.0);
  EXPECT_DOUBLE_EQ(overlap_exact(State::basis(1, 0), State::basis(1, 1)), 0.0);
  Circuit<double> c(1);
  c.push(GateOp<double>::rx(0, kPi / 2));
  EXPECT_NEAR(overlap_exact(State::zero(1), apply(c, State::zero(1))), 0.5, 1e-12);
  EXPECT_THROW(overlap_exact(State::zero(1), State::zero(2)), std::invalid_argument);
}

TEST(SwapTest, IdenticalStatesAlwaysOne) {
  std::mt19937_64 rng(1);
  const State s = random_state(2, rng);
  for (std::int64_t shots : {1, 10, 10000}) {
    const auto e = swap_test(s, s, shots, 3);
    EXPECT_DOUBLE_EQ(e.value, 1.0);
    EXPECT_EQ(e.shots, shots);
    EXPECT_DOUBLE_EQ(e.std_error, 0.0);
  }
}

TEST(SwapTest, OrthogonalStates) {
  // (1 + F)/2 with F = 0, from the full 3-qubit statevector (see oracle script).
  EXPECT_NEAR(swap_test_ancilla_zero_probability(State::basis(1, 0), State::basis(1, 1)), 0.5, 1e-15);
  const auto e = swap_test(State::basis(1, 0), State::basis(1, 1), 1000000, 5);
  EXPECT_LT(e.value, 5e-3);
}

TEST(SwapTest, AncillaProbabilityIsHalfOnePlusFidelity) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const State a = random_state(n, rng), b = random_state(n, rng);
    EXPECT_NEAR(swap_test_ancilla_zero_probability(a, b), (1 + overlap_exact(a, b)) / 2, 1e-12);
  }
  EXPECT_NEAR(swap_test_ancilla_zero_probability(State::zero(1), ket(1, 1)), 0.75, 1e-15);
}

TEST(SwapTest, CircuitShape) {
  const auto c = swap_test_circuit<double>(2);
  EXPECT_EQ(c.n_qubits(), 5);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c.ops()[1], GateOp<double>::cswap(0, 1, 3));
  EXPECT_EQ(c.ops()[2], GateOp<double>::cswap(0, 2, 4));
}

TEST(SwapTest, Errors) {
  EXPECT_THROW(swap_test(State::zero(1), State::zero(2), 10, 0), std::invalid_argument);
  EXPECT_THROW(swap_test(State::zero(1), State::zero(1), 0, 0), std::invalid_argument);
}

TEST(FidelityAccuracy, HalfAtTenThousandShots) {
  EXPECT_NEAR(fidelity_accuracy(0.5, 10000), 0.005, 1e-15);
  EXPECT_EQ(fidelity_accuracy(0.5, 0), 0.0);
}

TEST(InversionTest, SameInputIsExactlyOne) {
  const EmbeddingSpec spec{2, 2, 2};
  std::mt19937_64 rng(4);
  const Vec theta = init_params<double>(spec, 1, 1.0);
  const Vec x = Vec(Vec::Random(2));
  const auto e = inversion_test(spec, theta, x, x, 0, 0);
  EXPECT_NEAR(e.value, 1.0, 1e-12);
  EXPECT_EQ(e.shots, 0);
  EXPECT_EQ(e.std_error, 0.0);
}

TEST(InversionTest, ExactModeMatchesOverlap) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const EmbeddingSpec spec{1 + trial % 3, 1 + trial % 3, 1 + trial % 3};
    const Vec theta = init_params<double>(spec, std::uint64_t(trial), 1.0);
    Vec x(spec.n_features), y(spec.n_features);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = u(rng);
    EXPECT_NEAR(inversion_test(spec, theta, x, y, 0, 0).value,
                overlap_exact(embed(spec, theta, x), embed(spec, theta, y)), 1e-10);
  }
}

TEST(InversionTest, ShotErrorsAndReportedStderr) {
  const EmbeddingSpec spec{1, 1, 1};
  const Vec theta = Vec(Vec::Zero(1));
  EXPECT_THROW(inversion_test(spec, theta, Vec(Vec::Zero(1)), Vec(Vec::Zero(1)), -1, 0), std::invalid_argument);
  const auto e = inversion_test(spec, theta, Vec(Vec::Constant(1, 0.0)), Vec(Vec::Constant(1, kPi / 4)), 10000, 2);
  EXPECT_NEAR(e.std_error, std::sqrt(e.value * (1 - e.value) / 1e4), 1e-15);
}

TEST(InversionTest, AgreesWithSwapTest) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const EmbeddingSpec spec{2, 2, 2};
  int agree = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const Vec theta = init_params<double>(spec, std::uint64_t(t), 1.0);
    const Vec x = Vec::NullaryExpr(2, [&] { return u(rng); });
    const Vec y = Vec::NullaryExpr(2, [&] { return u(rng); });
    const auto inv = inversion_test(spec, theta, x, y, 10000, derive_seed(7, std::uint64_t(t)));
    const auto sw = swap_test(embed(spec, theta, x), embed(spec, theta, y), 10000, derive_seed(8, std::uint64_t(t)));
    const double combined = std::hypot(inv.std_error, sw.std_error);
    agree += std::abs(inv.value - sw.value) <= 3 * combined + 1e-12;
  }
  EXPECT_GE(agree, 97);
}

TEST(HsDistance, Examples) {
  const Density zero = pure(State::basis(1, 0));
  EXPECT_DOUBLE_EQ(hs_distance(zero, zero), 0.0);
  EXPECT_NEAR(hs_distance(zero, pure(State::basis(1, 1))), 2.0, 1e-15);
  EXPECT_NEAR(hs_distance(zero, pure(ket(1, 1))), 1.0, 1e-15);
  EXPECT_THROW(hs_distance(zero, pure(State::zero(2))), std::invalid_argument);
}

TEST(HsDistance, ExpandsIntoPurityAndCrossTerms) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const auto rho = density_from_states(random_states(n, 1 + trial % 5, rng));
    const auto sigma = density_from_states(random_states(n, 1 + trial % 4, rng));
    const double d = hs_distance(rho, sigma);
    EXPECT_NEAR(d, purity(rho) + purity(sigma) - 2 * overlap_trace(rho, sigma), 1e-10);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0);
    const double cross = overlap_trace(rho, sigma);
    EXPECT_GE(cross, -1e-12);
    EXPECT_LE(cross, 1 + 1e-12);
  }
}

TEST(HsFromOverlaps, Examples) {
  const std::vector<State> a{State::basis(1, 0)}, b{State::basis(1, 1)};
  EXPECT_NEAR(hs_distance_from_overlaps(a, b, 0, 0), 2.0, 1e-15);

  std::mt19937_64 rng(14);
  const State x = random_state(2, rng), y = random_state(2, rng);
  EXPECT_NEAR(hs_distance_from_overlaps(std::vector<State>{x}, std::vector<State>{y}, 0, 0),
              2 * (1 - overlap_exact(x, y)), 1e-12);
  EXPECT_THROW(hs_distance_from_overlaps(std::vector<State>{}, b, 0, 0), std::invalid_argument);
}

TEST(HsFromOverlaps, ExactModeMatchesDensityAssembly) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const auto a = random_states(n, 1 + trial % 6, rng);
    const auto b = random_states(n, 1 + (trial / 6) % 6, rng);
    EXPECT_NEAR(hs_distance_from_overlaps(a, b, 0, 0),
                hs_distance(density_from_states(a), density_from_states(b)), 1e-10);
  }
}

TEST(HsFromOverlaps, ShotModeIsCloseAndSeeded) {
  std::mt19937_64 rng(16);
  const auto a = random_states(2, 3, rng);
  const auto b = random_states(2, 3, rng);
  const double exact = hs_distance_from_overlaps(a, b, 0, 0);
  const double est = hs_distance_from_overlaps(a, b, 20000, 99);
  EXPECT_NEAR(est, exact, 0.05);
  EXPECT_EQ(est, hs_distance_from_overlaps(a, b, 20000, 99));
}

TEST(HsFromOverlaps, InputsUseInversionTests) {
  const EmbeddingSpec spec{2, 2, 1};
  const Vec theta = init_params<double>(spec, 4, 1.0);
  const std::vector<Vec> a{Vec(Vec::Constant(2, 0.1)), Vec(Vec::Constant(2, 0.4))};
  const std::vector<Vec> b{Vec(Vec::Constant(2, 2.0)), Vec(Vec::Constant(2, -1.5))};
  const auto exact = hs_terms_from_overlaps<double>(spec, theta, a, b, 0, 0);
  std::vector<State> sa, sb;
  for (const auto& x : a) sa.push_back(embed(spec, theta, x));
  for (const auto& x : b) sb.push_back(embed(spec, theta, x));
  EXPECT_NEAR(exact.distance(), hs_distance(density_from_states(sa), density_from_states(sb)), 1e-10);
  const auto est = hs_terms_from_overlaps<double>(spec, theta, a, b, 20000, 1);
  EXPECT_NEAR(est.distance(), exact.distance(), 0.05);
}

TEST(TraceDistance, Examples) {
  const Density zero = pure(State::basis(1, 0));
  EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(zero, pure(State::basis(1, 1))), 1.0, 1e-15);
  const Density plus = pure(ket(1, 1));
  EXPECT_NEAR(trace_distance(zero, plus), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(std::pow(trace_distance(zero, plus), 2), hs_distance(zero, plus) / 2, 1e-12);
}

TEST(TraceDistance, RankOneEquality) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const Density rho = pure(random_state(n, rng)), sigma = pure(random_state(n, rng));
    EXPECT_NEAR(std::pow(trace_distance(rho, sigma), 2), hs_distance(rho, sigma) / 2, 1e-9);
  }
}

TEST(TraceDistance, SandwichBetweenHsBounds) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const auto rho = density_from_states(random_states(n, 1 + trial % 4, rng));
    const auto sigma = density_from_states(random_states(n, 1 + (trial / 4) % 4, rng));
    const double dtr2 = std::pow(trace_distance(rho, sigma), 2);
    const double dhs = hs_distance(rho, sigma);
    const double ra = numerical_rank(rho), rb = numerical_rank(sigma);
    EXPECT_LE(dhs / 2, dtr2 + 1e-12);
    EXPECT_LE(dtr2, ra * rb / (ra + rb) * dhs + 1e-12);
  }
}

TEST(Purity, Examples) {
  EXPECT_NEAR(purity(pure(ket(0.3, 0.8))), 1.0, 1e-15);
  for (int n = 1; n <= 3; ++n) {
    std::vector<State> basis;
    for (Index i = 0; i < qubit_dim(n); ++i) basis.push_back(State::basis(n, i));
    EXPECT_NEAR(purity(density_from_states(basis)), 1.0 / double(qubit_dim(n)), 1e-15);
  }
  ComplexMatrix<double> m = ComplexMatrix<double>::Zero(2, 2);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  EXPECT_NEAR(purity(Density(1, m)), 0.625, 1e-15);
}

TEST(Dme, ZeroStepIsIdentity) {
  const Density eta = pure(ket(1, 1));
  EXPECT_LE((dme_trotter_step(eta, pure(State::basis(1, 0)), pure(State::basis(1, 1)), 0.0).matrix() -
             eta.matrix()).norm(), 1e-14);
}

TEST(Dme, EqualEnsemblesLeaveEtaToSecondOrder) {
  std::mt19937_64 rng(19);
  const Density eta = pure(random_state(1, rng));
  const Density rho = density_from_states(random_states(1, 2, rng));
  const double e1 = (dme_trotter_step(eta, rho, rho, 0.1).matrix() - eta.matrix()).norm();
  const double e2 = (dme_trotter_step(eta, rho, rho, 0.05).matrix() - eta.matrix()).norm();
  EXPECT_LT(e1, 0.1);
  EXPECT_GT(e1 / e2, 3.0);
  EXPECT_LT(e1 / e2, 5.0);
}

TEST(Dme, SigmaZExampleScalesQuadratically) {
  const Density eta = pure(ket(1, 1));
  const Density rho = pure(State::basis(1, 0));
  const Density sigma = pure(State::basis(1, 1));
  // Frozen from tests/oracles/frozen_values.py.
  EXPECT_NEAR(dme_error(eta, rho, sigma, 0.1), 0.0070478790159721775, 1e-12);
  EXPECT_NEAR(dme_error(eta, rho, sigma, 0.05), 0.0017662998152660507, 1e-12);
  EXPECT_NEAR(dme_error(eta, rho, sigma, 0.025), 0.00044184976098105325, 1e-12);
}

TEST(Dme, OutputIsDensityMatrix) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const Density eta = density_from_states(random_states(n, 2, rng));
    const auto out = dme_trotter_step(eta, density_from_states(random_states(n, 3, rng)),
                                      density_from_states(random_states(n, 2, rng)), 0.3);
    EXPECT_GE(out.min_eigenvalue(), -1e-10);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(Dme, Errors) {
  const Density a = pure(State::zero(1));
  EXPECT_THROW(dme_trotter_step(a, a, pure(State::zero(2)), 0.1), std::invalid_argument);
  EXPECT_THROW(dme_trotter_step(a, a, a, 1.5), std::invalid_argument);
}
