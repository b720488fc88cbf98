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

// Trainable layered feature map. Each layer encodes the features with RX
// rotations, entangles neighbouring qubits with an open chain of ZZ gates and
// applies a trainable RY on every qubit. A final feature block closes the
// circuit. Qubits beyond n_features are latent: they get no feature rotations.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "qmetric/random.hpp"
#include "qmetric/simulator.hpp"
#include "qmetric/types.hpp"

namespace qmetric {

struct EmbeddingSpec {
  int n_qubits = 1;
  int n_features = 1;
  int n_layers = 1;

  void validate() const {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    if (n_features < 1 || n_features > n_qubits) {
      throw std::invalid_argument("n_features must be in [1, n_qubits]");
    }
    if (n_layers < 1) throw std::invalid_argument("n_layers must be >= 1");
  }

  /// Trainable angles per layer: n-1 ZZ angles then n RY angles.
  int params_per_layer() const { return 2 * n_qubits - 1; }

  friend bool operator==(const EmbeddingSpec&, const EmbeddingSpec&) = default;
};

inline Index param_count(const EmbeddingSpec& spec) {
  spec.validate();
  return Index(spec.n_layers) * spec.params_per_layer();
}

namespace detail {

template <typename Real>
void check_embedding_args(const EmbeddingSpec& spec, const RealVector<Real>& theta,
                          const RealVector<Real>& x) {
  spec.validate();
  if (theta.size() != param_count(spec)) {
    throw std::invalid_argument("theta has " + std::to_string(theta.size()) +
                                " entries, embedding expects " +
                                std::to_string(param_count(spec)));
  }
  if (x.size() != spec.n_features) {
    throw std::invalid_argument("feature vector has " + std::to_string(x.size()) +
                                " entries, embedding expects " +
                                std::to_string(spec.n_features));
  }
  if (!x.allFinite()) throw std::invalid_argument("feature vector has non-finite entries");
}

template <typename Real>
void push_feature_block(const EmbeddingSpec& spec, const RealVector<Real>& x, Circuit<Real>& c) {
  for (int i = 0; i < spec.n_features; ++i) c.push(GateOp<Real>::rx(i, x(i)));
}

}  // namespace detail

template <typename Real>
Circuit<Real> build_circuit(const EmbeddingSpec& spec, const RealVector<Real>& theta,
                            const RealVector<Real>& x) {
  detail::check_embedding_args(spec, theta, x);
  const int n = spec.n_qubits;
  Circuit<Real> c(n);
  Index p = 0;
  for (int layer = 0; layer < spec.n_layers; ++layer) {
    detail::push_feature_block(spec, x, c);
    for (int q = 0; q + 1 < n; ++q) c.push(GateOp<Real>::zz(q, q + 1, theta(p++)));
    for (int q = 0; q < n; ++q) c.push(GateOp<Real>::ry(q, theta(p++)));
  }
  detail::push_feature_block(spec, x, c);
  return c;
}

/// |x> = Phi(x, theta)|0...0>.
template <typename Real>
StateVector<Real> embed(const EmbeddingSpec& spec, const RealVector<Real>& theta,
                        const RealVector<Real>& x) {
  return apply(build_circuit(spec, theta, x), StateVector<Real>::zero(spec.n_qubits));
}

/// Independent Normal(0, scale^2) angles.
template <typename Real = double>
RealVector<Real> init_params(const EmbeddingSpec& spec, std::uint64_t seed, Real scale = Real(0.1)) {
  if (!(scale > 0)) throw std::invalid_argument("init scale must be > 0");
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector<Real> theta(param_count(spec));
  for (Index i = 0; i < theta.size(); ++i) theta(i) = scale * Real(normal(engine));
  return theta;
}

}  // namespace qmetric
