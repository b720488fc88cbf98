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

#include "qmetric/training.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qmetric/metrics.hpp"
#include "qmetric/random.hpp"

namespace qmetric {

std::string to_string(CostKind kind) {
  return kind == CostKind::HilbertSchmidt ? "hilbert-schmidt" : "trace";
}

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::RMSProp: return "rmsprop";
    case OptimizerKind::Adagrad: return "adagrad";
    case OptimizerKind::SGD: return "sgd";
  }
  return "?";
}

CostKind parse_cost_kind(std::string_view name) {
  if (name == "hilbert-schmidt" || name == "hs" || name == "l2") return CostKind::HilbertSchmidt;
  if (name == "trace" || name == "tr" || name == "l1") return CostKind::TraceDistance;
  throw std::invalid_argument("unknown cost kind '" + std::string(name) + "'");
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "rmsprop") return OptimizerKind::RMSProp;
  if (name == "adagrad") return OptimizerKind::Adagrad;
  if (name == "sgd") return OptimizerKind::SGD;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  spec.validate();
  if (!(learning_rate > 0)) throw std::invalid_argument("learning_rate must be > 0");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (shots < 0) throw std::invalid_argument("shots must be >= 0");
  if (!(init_scale > 0)) throw std::invalid_argument("init_scale must be > 0");
  if (shots > 0 && cost == CostKind::TraceDistance) {
    throw std::invalid_argument("trace-distance cost is only available in exact mode (shots = 0)");
  }
}

void TrainConfig::validate_against(const Dataset& data) const {
  validate();
  data.validate();
  if (data.n_features() != spec.n_features) {
    throw std::invalid_argument("dataset has " + std::to_string(data.n_features()) +
                                " features, embedding expects " + std::to_string(spec.n_features));
  }
  std::size_t ma = 0;
  for (int y : data.labels) ma += y == 1;
  const std::size_t mb = data.size() - ma;
  if (std::size_t(batch_size) > std::min(ma, mb)) {
    throw std::invalid_argument("batch_size exceeds the size of the smaller class");
  }
}

namespace {

using State = StateVector<double>;

std::vector<State> embed_all(const EmbeddingSpec& spec, const ParamVector& theta,
                             const FeatureVectors& inputs) {
  std::vector<State> out;
  out.reserve(inputs.size());
  for (const auto& x : inputs) out.push_back(embed(spec, theta, x));
  return out;
}

void check_batches(const FeatureVectors& a, const FeatureVectors& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("cost: empty batch");
}

double complex_overlap(const State& u, const State& v) {
  return std::norm(u.amplitudes().dot(v.amplitudes()));
}

}  // namespace

double cost(const EmbeddingSpec& spec, const ParamVector& theta, const FeatureVectors& batch_a,
            const FeatureVectors& batch_b, CostKind kind, std::int64_t shots, std::uint64_t seed) {
  check_batches(batch_a, batch_b);
  if (shots < 0) throw std::invalid_argument("cost: shots must be >= 0");
  if (kind == CostKind::TraceDistance) {
    if (shots > 0) throw std::invalid_argument("trace-distance cost requires exact mode (shots = 0)");
    const auto rho = density_from_states(embed_all(spec, theta, batch_a));
    const auto sigma = density_from_states(embed_all(spec, theta, batch_b));
    return 1.0 - trace_distance(rho, sigma);
  }
  const auto terms = hs_terms_from_overlaps<double>(spec, theta, batch_a, batch_b, shots, seed);
  return std::clamp(1.0 - 0.5 * terms.distance(), 0.0, 1.0);
}

Eigen::VectorXd gradient_param_shift(const EmbeddingSpec& spec, const ParamVector& theta,
                                     const FeatureVectors& batch_a, const FeatureVectors& batch_b) {
  check_batches(batch_a, batch_b);
  const std::size_t ma = batch_a.size();
  const std::size_t mb = batch_b.size();
  FeatureVectors inputs = batch_a;
  inputs.insert(inputs.end(), batch_b.begin(), batch_b.end());
  const std::size_t m = inputs.size();
  const auto base = embed_all(spec, theta, inputs);

  Eigen::VectorXd grad(theta.size());
  const double shift = std::numbers::pi / 2;
  for (Eigen::Index p = 0; p < theta.size(); ++p) {
    ParamVector plus = theta, minus = theta;
    plus(p) += shift;
    minus(p) -= shift;
    const auto up = embed_all(spec, plus, inputs);
    const auto down = embed_all(spec, minus, inputs);
    // Each overlap |<u|v>|^2 depends on theta_p through both embeddings.
    auto d_overlap = [&](std::size_t i, std::size_t j) {
      return 0.5 * (complex_overlap(base[i], up[j]) - complex_overlap(base[i], down[j])) +
             0.5 * (complex_overlap(up[i], base[j]) - complex_overlap(down[i], base[j]));
    };
    double d_aa = 0, d_bb = 0, d_ab = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double d = d_overlap(i, j);
        if (j < ma) {
          d_aa += 2 * d;
        } else if (i >= ma) {
          d_bb += 2 * d;
        } else {
          d_ab += d;
        }
      }
    }
    const double d_hs = d_aa / double(ma * ma) + d_bb / double(mb * mb) - 2 * d_ab / double(ma * mb);
    grad(p) = -0.5 * d_hs;
  }
  return grad;
}

Eigen::VectorXd gradient_finite_diff(const EmbeddingSpec& spec, const ParamVector& theta,
                                     const FeatureVectors& batch_a, const FeatureVectors& batch_b,
                                     CostKind kind, double h, std::int64_t shots,
                                     std::uint64_t seed) {
  if (!(h > 0)) throw std::invalid_argument("finite-difference step must be > 0");
  Eigen::VectorXd grad(theta.size());
  for (Eigen::Index p = 0; p < theta.size(); ++p) {
    ParamVector plus = theta, minus = theta;
    plus(p) += h;
    minus(p) -= h;
    grad(p) = (cost(spec, plus, batch_a, batch_b, kind, shots, seed) -
               cost(spec, minus, batch_a, batch_b, kind, shots, seed)) /
              (2 * h);
  }
  return grad;
}

std::pair<ParamVector, OptimizerState> optimizer_step(const OptimizerState& state,
                                                      const ParamVector& theta,
                                                      const Eigen::VectorXd& grad, double lr) {
  if (theta.size() != grad.size()) throw std::invalid_argument("optimizer_step: gradient shape mismatch");
  OptimizerState next = state;
  if (next.kind != OptimizerKind::SGD && next.accumulator.size() != theta.size()) {
    if (next.accumulator.size() != 0) {
      throw std::invalid_argument("optimizer_step: accumulator shape mismatch");
    }
    next.accumulator = Eigen::VectorXd::Zero(theta.size());
  }
  switch (state.kind) {
    case OptimizerKind::SGD:
      return {theta - lr * grad, next};
    case OptimizerKind::RMSProp:
      next.accumulator = kRmsPropDecay * next.accumulator + (1 - kRmsPropDecay) * grad.cwiseAbs2();
      break;
    case OptimizerKind::Adagrad:
      next.accumulator += grad.cwiseAbs2();
      break;
  }
  const Eigen::VectorXd denom = next.accumulator.cwiseSqrt().array() + kOptimizerEpsilon;
  return {theta - lr * grad.cwiseQuotient(denom), next};
}

namespace {

// batch_size distinct indices, uniform, by a partial Fisher-Yates shuffle.
std::vector<std::size_t> sample_without_replacement(std::size_t n, int k, Engine& engine) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(std::size_t(i), n - 1);
    std::swap(idx[std::size_t(i)], idx[pick(engine)]);
  }
  idx.resize(std::size_t(k));
  return idx;
}

FeatureVectors gather(const FeatureVectors& from, const std::vector<std::size_t>& idx) {
  FeatureVectors out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(from[i]);
  return out;
}

// Seed streams derived from the run seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kBatchStream = 2;
constexpr std::uint64_t kShotStreamBase = 1000;

// Shot-mode finite-difference step, wide enough to stay above estimator noise.
constexpr double kShotFiniteDiffStep = 0.1;

}  // namespace

TrainResult train(const Dataset& data, const TrainConfig& config) {
  config.validate_against(data);
  const auto class_a = data.class_a();
  const auto class_b = data.class_b();
  const auto& spec = config.spec;

  TrainResult result;
  result.config = config;
  ParamVector theta = init_params<double>(spec, derive_seed(config.seed, kInitStream), config.init_scale);
  OptimizerState opt = OptimizerState::zeros(config.optimizer, theta.size());
  Engine batch_engine = make_engine(config.seed, kBatchStream);

  result.history.reserve(std::size_t(config.steps));
  for (int step = 0; step < config.steps; ++step) {
    const auto batch_a = gather(class_a, sample_without_replacement(class_a.size(), config.batch_size, batch_engine));
    const auto batch_b = gather(class_b, sample_without_replacement(class_b.size(), config.batch_size, batch_engine));
    const std::uint64_t shot_seed = derive_seed(config.seed, kShotStreamBase + std::uint64_t(step));

    const double c = cost(spec, theta, batch_a, batch_b, config.cost, config.shots, shot_seed);
    Eigen::VectorXd grad;
    if (config.shots > 0) {
      grad = gradient_finite_diff(spec, theta, batch_a, batch_b, config.cost, kShotFiniteDiffStep,
                                  config.shots, shot_seed);
    } else if (config.cost == CostKind::HilbertSchmidt) {
      grad = gradient_param_shift(spec, theta, batch_a, batch_b);
    } else {
      grad = gradient_finite_diff(spec, theta, batch_a, batch_b, config.cost);
    }
    std::tie(theta, opt) = optimizer_step(opt, theta, grad, config.learning_rate);
    result.history.push_back({step, c});
  }
  result.theta = theta;
  return result;
}

double fidelity_score(const EmbeddingSpec& spec, const ParamVector& theta, const FeatureVector& x,
                      const FeatureVectors& class_a, const FeatureVectors& class_b,
                      std::int64_t shots, std::uint64_t seed) {
  if (class_a.empty() || class_b.empty()) throw std::invalid_argument("fidelity_score: empty class");
  std::uint64_t stream = 0;
  auto mean_overlap = [&](const FeatureVectors& inputs) {
    double sum = 0;
    for (const auto& c : inputs) {
      sum += inversion_test<double>(spec, theta, x, c, shots, derive_seed(seed, stream++)).value;
    }
    return sum / double(inputs.size());
  };
  const double a = mean_overlap(class_a);
  return a - mean_overlap(class_b);
}

}  // namespace qmetric
