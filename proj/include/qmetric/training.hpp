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

#pragma once

// Embedding training: the metric costs, their gradients and the optimizers.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmetric/datasets.hpp"
#include "qmetric/embedding.hpp"

namespace qmetric {

enum class CostKind { HilbertSchmidt, TraceDistance };
enum class OptimizerKind { RMSProp, Adagrad, SGD };

std::string to_string(CostKind kind);
std::string to_string(OptimizerKind kind);
CostKind parse_cost_kind(std::string_view name);
OptimizerKind parse_optimizer_kind(std::string_view name);

using ParamVector = Eigen::VectorXd;

struct TrainConfig {
  EmbeddingSpec spec;
  CostKind cost = CostKind::HilbertSchmidt;
  OptimizerKind optimizer = OptimizerKind::RMSProp;
  double learning_rate = 0.01;
  int batch_size = 2;  // per class
  int steps = 100;
  std::uint64_t seed = 0;
  std::int64_t shots = 0;  // 0 = exact cost
  double init_scale = 0.1;

  void validate() const;
  void validate_against(const Dataset& data) const;
};

struct CostPoint {
  int step = 0;
  double cost = 0;
};

struct TrainResult {
  ParamVector theta;
  std::vector<CostPoint> history;
  TrainConfig config;
};

/// 1 - D_hs/2 (HilbertSchmidt) or 1 - D_tr (TraceDistance) between the
/// ensembles of the embedded batches. shots > 0 estimates D_hs with inversion
/// tests and is rejected for TraceDistance.
double cost(const EmbeddingSpec& spec, const ParamVector& theta, const FeatureVectors& batch_a,
            const FeatureVectors& batch_b, CostKind kind, std::int64_t shots = 0,
            std::uint64_t seed = 0);

/// Exact Hilbert-Schmidt cost gradient by the two-term shift rule.
Eigen::VectorXd gradient_param_shift(const EmbeddingSpec& spec, const ParamVector& theta,
                                     const FeatureVectors& batch_a, const FeatureVectors& batch_b);

/// Central differences [C(theta + h e_i) - C(theta - h e_i)] / 2h. With
/// shots > 0 both sides reuse the same seed.
Eigen::VectorXd gradient_finite_diff(const EmbeddingSpec& spec, const ParamVector& theta,
                                     const FeatureVectors& batch_a, const FeatureVectors& batch_b,
                                     CostKind kind, double h = 1e-4, std::int64_t shots = 0,
                                     std::uint64_t seed = 0);

struct OptimizerState {
  OptimizerKind kind = OptimizerKind::RMSProp;
  Eigen::VectorXd accumulator;  // squared-gradient average (RMSProp) or sum (Adagrad)

  static OptimizerState zeros(OptimizerKind kind, Eigen::Index n) {
    return {kind, Eigen::VectorXd::Zero(n)};
  }
};

inline constexpr double kRmsPropDecay = 0.99;
inline constexpr double kOptimizerEpsilon = 1e-8;

std::pair<ParamVector, OptimizerState> optimizer_step(const OptimizerState& state,
                                                      const ParamVector& theta,
                                                      const Eigen::VectorXd& grad, double lr);

TrainResult train(const Dataset& data, const TrainConfig& config);

/// Fidelity classifier on raw inputs; with shots > 0 every overlap is an
/// inversion-test estimate.
double fidelity_score(const EmbeddingSpec& spec, const ParamVector& theta, const FeatureVector& x,
                      const FeatureVectors& class_a, const FeatureVectors& class_b,
                      std::int64_t shots, std::uint64_t seed);

}  // namespace qmetric
