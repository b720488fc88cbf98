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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qmetric {

using FeatureVector = Eigen::VectorXd;
using FeatureVectors = std::vector<FeatureVector>;

/// Labelled inputs; class A carries label +1 and class B label -1.
struct Dataset {
  FeatureVectors inputs;
  std::vector<int> labels;

  std::size_t size() const { return inputs.size(); }
  int n_features() const { return inputs.empty() ? 0 : int(inputs.front().size()); }

  /// Throws unless lengths agree, labels are +-1 with both present, and all
  /// inputs share one finite dimension.
  void validate() const;

  FeatureVectors class_a() const;
  FeatureVectors class_b() const;

  friend bool operator==(const Dataset&, const Dataset&);
};

/// Two interleaving half circles: label +1 at (cos t, sin t), label -1 at
/// (1 - cos t, 0.5 - sin t), t ~ U[0, pi], plus isotropic Gaussian noise.
Dataset gen_moons(int n_per_class, double noise_std, std::uint64_t seed);

/// Noise-free moons point for a given label and parameter t.
Eigen::Vector2d moon_point(int label, double t);

/// One feature: label -1 uniform on [-0.5, 0.5], label +1 uniform on
/// [-2, -1] U [1, 2].
Dataset gen_bands1d(int n_per_class, std::uint64_t seed);

/// Per-feature mean and standard deviation of a training split.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd scale;

  static Standardizer fit(const FeatureVectors& inputs);
  FeatureVector apply(const FeatureVector& x) const;
  Dataset apply(const Dataset& d) const;
};

struct CapacityParams {
  double bandwidth_hz = 0;
  double coherence_s = 0;
  int n_qubits = 0;
  int bits_per_sample = 0;
};

/// Classical bits a pulse sequence can load within the coherence time: 2 * bandwidth * t * n * b.
double capacity(const CapacityParams& p);

}  // namespace qmetric
