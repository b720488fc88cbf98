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

#include "qmetric/datasets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qmetric/random.hpp"

namespace qmetric {

void Dataset::validate() const {
  if (inputs.size() != labels.size()) throw std::invalid_argument("dataset: inputs and labels differ in length");
  if (inputs.empty()) throw std::invalid_argument("dataset is empty");
  bool has_a = false, has_b = false;
  for (int y : labels) {
    if (y == 1) {
      has_a = true;
    } else if (y == -1) {
      has_b = true;
    } else {
      throw std::invalid_argument("dataset: labels must be +1 or -1");
    }
  }
  if (!has_a || !has_b) throw std::invalid_argument("dataset: both labels must be present");
  const auto d = inputs.front().size();
  if (d < 1) throw std::invalid_argument("dataset: inputs need at least one feature");
  for (const auto& x : inputs) {
    if (x.size() != d) throw std::invalid_argument("dataset: inconsistent feature count");
    if (!x.allFinite()) throw std::invalid_argument("dataset: non-finite feature value");
  }
}

FeatureVectors Dataset::class_a() const {
  FeatureVectors out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (labels[i] == 1) out.push_back(inputs[i]);
  }
  return out;
}

FeatureVectors Dataset::class_b() const {
  FeatureVectors out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (labels[i] == -1) out.push_back(inputs[i]);
  }
  return out;
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.labels != b.labels || a.inputs.size() != b.inputs.size()) return false;
  for (std::size_t i = 0; i < a.inputs.size(); ++i) {
    if (a.inputs[i].size() != b.inputs[i].size() || a.inputs[i] != b.inputs[i]) return false;
  }
  return true;
}

Eigen::Vector2d moon_point(int label, double t) {
  if (label == 1) return {std::cos(t), std::sin(t)};
  return {1.0 - std::cos(t), 0.5 - std::sin(t)};
}

Dataset gen_moons(int n_per_class, double noise_std, std::uint64_t seed) {
  if (n_per_class < 1) throw std::invalid_argument("gen_moons: n_per_class must be >= 1");
  if (!(noise_std >= 0)) throw std::invalid_argument("gen_moons: noise_std must be >= 0");
  Engine engine = make_engine(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset d;
  for (int label : {1, -1}) {
    for (int i = 0; i < n_per_class; ++i) {
      Eigen::Vector2d p = moon_point(label, angle(engine));
      if (noise_std > 0) {
        p(0) += noise_std * noise(engine);
        p(1) += noise_std * noise(engine);
      }
      d.inputs.emplace_back(p);
      d.labels.push_back(label);
    }
  }
  return d;
}

Dataset gen_bands1d(int n_per_class, std::uint64_t seed) {
  if (n_per_class < 1) throw std::invalid_argument("gen_bands1d: n_per_class must be >= 1");
  Engine engine = make_engine(seed);
  std::uniform_real_distribution<double> inner(-0.5, 0.5);
  std::uniform_real_distribution<double> outer(1.0, 2.0);
  std::bernoulli_distribution negative(0.5);
  Dataset d;
  for (int i = 0; i < n_per_class; ++i) {
    const double r = outer(engine);
    d.inputs.push_back(Eigen::VectorXd::Constant(1, negative(engine) ? -r : r));
    d.labels.push_back(1);
  }
  for (int i = 0; i < n_per_class; ++i) {
    d.inputs.push_back(Eigen::VectorXd::Constant(1, inner(engine)));
    d.labels.push_back(-1);
  }
  return d;
}

Standardizer Standardizer::fit(const FeatureVectors& inputs) {
  if (inputs.empty()) throw std::invalid_argument("standardize: no inputs");
  const auto d = inputs.front().size();
  Standardizer s{Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d)};
  for (const auto& x : inputs) s.mean += x;
  s.mean /= double(inputs.size());
  for (const auto& x : inputs) s.scale += (x - s.mean).cwiseAbs2();
  s.scale = (s.scale / double(inputs.size())).cwiseSqrt();
  // Constant features are only centred.
  for (Eigen::Index i = 0; i < d; ++i) {
    if (s.scale(i) == 0) s.scale(i) = 1;
  }
  return s;
}

FeatureVector Standardizer::apply(const FeatureVector& x) const {
  return (x - mean).cwiseQuotient(scale);
}

Dataset Standardizer::apply(const Dataset& d) const {
  Dataset out = d;
  for (auto& x : out.inputs) x = apply(x);
  return out;
}

double capacity(const CapacityParams& p) {
  if (!(p.bandwidth_hz > 0) || !(p.coherence_s > 0) || p.n_qubits < 1 || p.bits_per_sample < 1) {
    throw std::invalid_argument("capacity: all parameters must be positive");
  }
  return 2.0 * p.bandwidth_hz * p.coherence_s * double(p.n_qubits) * double(p.bits_per_sample);
}

}  // namespace qmetric
