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

#include "qmetric/embedding.hpp"

#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "qmetric/metrics.hpp"

using namespace qmetric;
using Vec = Eigen::VectorXd;
using Gate = GateOp<double>;

namespace {

constexpr double kPi = std::numbers::pi;

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Vec random_vec(Eigen::Index n, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vec v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST(ParamCount, Examples) {
  EXPECT_EQ(param_count({1, 1, 1}), 1);
  EXPECT_EQ(param_count({2, 2, 4}), 12);
  EXPECT_EQ(param_count({4, 3, 1}), 7);
}

TEST(EmbeddingSpec, Validation) {
  EXPECT_THROW((EmbeddingSpec{2, 3, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((EmbeddingSpec{2, 0, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((EmbeddingSpec{2, 2, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((EmbeddingSpec{0, 1, 1}.validate()), std::invalid_argument);
}

TEST(BuildCircuit, TwoQubitLayerSequence) {
  const Vec theta = vec({0.1, 0.2, 0.3});
  const Vec x = vec({0.4, 0.5});
  const auto c = build_circuit(EmbeddingSpec{2, 2, 1}, theta, x);
  const std::vector<Gate> expected = {Gate::rx(0, 0.4), Gate::rx(1, 0.5), Gate::zz(0, 1, 0.1),
                                      Gate::ry(0, 0.2), Gate::ry(1, 0.3), Gate::rx(0, 0.4),
                                      Gate::rx(1, 0.5)};
  EXPECT_EQ(c.ops(), expected);
}

TEST(BuildCircuit, GateCountAndOrdering) {
  const EmbeddingSpec spec{3, 3, 2};
  std::mt19937_64 rng(1);
  const auto c = build_circuit(spec, random_vec(param_count(spec), rng, 1), random_vec(3, rng, 1));
  EXPECT_EQ(c.size(), 19u);
  EXPECT_EQ(c.n_qubits(), 3);
  // Per layer: 3 RX, 2 ZZ, 3 RY; then a closing RX block.
  const std::vector<GateKind> layer = {GateKind::RX, GateKind::RX, GateKind::RX, GateKind::ZZ,
                                       GateKind::ZZ, GateKind::RY, GateKind::RY, GateKind::RY};
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(c.ops()[i].kind, layer[i % 8]) << i;
  for (std::size_t i = 16; i < 19; ++i) EXPECT_EQ(c.ops()[i].kind, GateKind::RX);
}

TEST(BuildCircuit, LatentQubitsSkipFeatureRotations) {
  const EmbeddingSpec spec{4, 3, 1};
  const auto c = build_circuit(spec, Vec(Vec::Zero(7)), vec({1, 2, 3}));
  int latent_rx = 0, latent_ry = 0, latent_zz = 0;
  for (const auto& g : c.ops()) {
    const bool touches = g.qubits[0] == 3 || (g.arity() > 1 && g.qubits[1] == 3);
    if (!touches) continue;
    latent_rx += g.kind == GateKind::RX;
    latent_ry += g.kind == GateKind::RY;
    latent_zz += g.kind == GateKind::ZZ;
  }
  EXPECT_EQ(latent_rx, 0);
  EXPECT_EQ(latent_ry, 1);
  EXPECT_EQ(latent_zz, 1);
}

TEST(BuildCircuit, LengthMismatchThrows) {
  EXPECT_THROW(build_circuit(EmbeddingSpec{2, 2, 1}, Vec(Vec::Zero(2)), Vec(Vec::Zero(2))), std::invalid_argument);
  EXPECT_THROW(build_circuit(EmbeddingSpec{2, 2, 1}, Vec(Vec::Zero(3)), Vec(Vec::Zero(1))), std::invalid_argument);
}

TEST(Embed, ZeroAnglesGiveGroundState) {
  const EmbeddingSpec spec{3, 2, 2};
  const auto s = embed(spec, Vec(Vec::Zero(param_count(spec))), Vec(Vec::Zero(2)));
  EXPECT_NEAR(std::abs(s[0] - std::complex<double>(1)), 0, 1e-15);
}

TEST(Embed, SingleQubitDoublePiRotation) {
  const auto s = embed(EmbeddingSpec{1, 1, 1}, vec({0}), vec({kPi}));
  EXPECT_NEAR(overlap_exact(s, StateVector<double>::zero(1)), 1.0, 1e-12);
  EXPECT_NEAR(s[0].real(), -1.0, 1e-12);
}

TEST(Embed, MatchesIndependentMatrixProduct) {
  // Frozen from tests/oracles/frozen_values.py (scipy expm of each generator).
  const auto s = embed(EmbeddingSpec{2, 2, 1}, vec({0.3, -0.4, 0.9}), vec({0.5, -1.2}));
  const std::complex<double> expected[] = {{0.34967406, -0.12610852}, {0.37215177, 0.6906423},
                                           {-0.07465729, -0.12812864}, {0.30446644, -0.36283673}};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(s[i] - expected[i]), 0, 1e-7) << i;
}

TEST(Embed, FourPiPeriodicInFeatures) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const EmbeddingSpec spec{1 + trial % 3, 1 + trial % 3, 1 + trial % 2};
    const Vec theta = random_vec(param_count(spec), rng, kPi);
    const Vec x = random_vec(spec.n_features, rng, kPi);
    for (int i = 0; i < spec.n_features; ++i) {
      Vec shifted = x;
      shifted(i) += 4 * kPi;
      EXPECT_NEAR(overlap_exact(embed(spec, theta, x), embed(spec, theta, shifted)), 1.0, 1e-10);
    }
  }
}

TEST(Embed, UnitNormOnRandomInputs) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> qubits(1, 5), layers(1, 4);
    EmbeddingSpec spec{qubits(rng), 1, layers(rng)};
    spec.n_features = std::uniform_int_distribution<int>(1, spec.n_qubits)(rng);
    const auto s = embed(spec, random_vec(param_count(spec), rng, 5), random_vec(spec.n_features, rng, 5));
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-10);
    EXPECT_EQ(s.n_qubits(), spec.n_qubits);
  }
}

TEST(InitParams, DeterministicAndSized) {
  const EmbeddingSpec spec{2, 2, 4};
  const Vec a = init_params<double>(spec, 5, 0.1);
  EXPECT_EQ(a.size(), param_count(spec));
  EXPECT_EQ(a, init_params<double>(spec, 5, 0.1));
  EXPECT_NE(a, init_params<double>(spec, 6, 0.1));
  EXPECT_LT(init_params<double>(spec, 5, 1e-300).cwiseAbs().maxCoeff(), 1e-290);
  EXPECT_THROW(init_params<double>(spec, 5, 0.0), std::invalid_argument);
}

TEST(InitParams, ScaleMatchesStandardDeviation) {
  const EmbeddingSpec spec{5, 1, 200};
  const Vec a = init_params<double>(spec, 3, 0.1);
  const double mean = a.mean();
  const double sd = std::sqrt((a.array() - mean).square().mean());
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sd, 0.1, 0.01);
}
