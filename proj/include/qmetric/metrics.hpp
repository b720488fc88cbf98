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

// Overlaps between embedded states, their shot-based estimators, and distances
// between class ensembles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmetric/embedding.hpp"
#include "qmetric/random.hpp"
#include "qmetric/simulator.hpp"
#include "qmetric/types.hpp"

namespace qmetric {

/// A fidelity value with its sampling error. shots == 0 marks an exact value.
template <typename Real = double>
struct OverlapEstimate {
  Real value = 0;
  std::int64_t shots = 0;
  Real std_error = 0;
};

/// sqrt(F(1-F)/k): the standard error of a fidelity estimated as a Bernoulli
/// frequency over k repetitions.
template <typename Real>
Real fidelity_accuracy(Real fidelity, std::int64_t shots) {
  using std::sqrt;
  if (shots <= 0) return Real(0);
  const Real f = std::clamp(fidelity, Real(0), Real(1));
  return sqrt(f * (1 - f) / Real(shots));
}

template <typename Real>
Real overlap_exact(const StateVector<Real>& psi, const StateVector<Real>& phi) {
  if (psi.n_qubits() != phi.n_qubits()) throw std::invalid_argument("overlap: dimension mismatch");
  return std::clamp(std::norm(psi.amplitudes().dot(phi.amplitudes())), Real(0), Real(1));
}

/// The 2n+1 qubit SWAP-test circuit: ancilla on qubit 0, the first state on
/// qubits 1..n and the second on n+1..2n.
template <typename Real = double>
Circuit<Real> swap_test_circuit(int n) {
  Circuit<Real> c(2 * n + 1);
  c.push(GateOp<Real>::h(0));
  for (int i = 0; i < n; ++i) c.push(GateOp<Real>::cswap(0, 1 + i, 1 + n + i));
  c.push(GateOp<Real>::h(0));
  return c;
}

/// Exact ancilla-0 probability of the SWAP test, (1 + F)/2.
template <typename Real>
Real swap_test_ancilla_zero_probability(const StateVector<Real>& psi, const StateVector<Real>& phi) {
  if (psi.n_qubits() != phi.n_qubits()) throw std::invalid_argument("swap_test: dimension mismatch");
  const auto input = tensor(StateVector<Real>::zero(1), tensor(psi, phi));
  return prob_qubit_zero(apply(swap_test_circuit<Real>(psi.n_qubits()), input), 0);
}

/// Estimates |<psi|phi>|^2 as 2 p0 - 1 from `shots` ancilla readouts, clamped to
/// [0, 1]. The reported error is that of 2 p0 - 1, sqrt((1 - F^2) / shots).
template <typename Real>
OverlapEstimate<Real> swap_test(const StateVector<Real>& psi, const StateVector<Real>& phi,
                                std::int64_t shots, std::uint64_t seed) {
  using std::sqrt;
  if (shots < 1) throw std::invalid_argument("swap_test: shots must be >= 1");
  const Real p0 = swap_test_ancilla_zero_probability(psi, phi);
  const std::int64_t n0 = sample_binomial(double(p0), shots, seed);
  const Real f = std::clamp(2 * Real(n0) / Real(shots) - 1, Real(0), Real(1));
  return {f, shots, sqrt((1 - f * f) / Real(shots))};
}

/// Phi(x')^dagger Phi(x) on n qubits; the all-zeros probability is |<x'|x>|^2.
/// shots == 0 returns the exact probability.
template <typename Real>
OverlapEstimate<Real> inversion_test(const EmbeddingSpec& spec, const RealVector<Real>& theta,
                                     const RealVector<Real>& x, const RealVector<Real>& x_prime,
                                     std::int64_t shots, std::uint64_t seed) {
  if (shots < 0) throw std::invalid_argument("inversion_test: shots must be >= 0");
  const auto circuit =
      compose(build_circuit(spec, theta, x), adjoint(build_circuit(spec, theta, x_prime)));
  const auto out = apply(circuit, StateVector<Real>::zero(spec.n_qubits));
  const Real p = std::clamp(std::norm(out[0]), Real(0), Real(1));
  if (shots == 0) return {p, 0, Real(0)};
  const Real f = Real(sample_binomial(double(p), shots, seed)) / Real(shots);
  return {f, shots, fidelity_accuracy(f, shots)};
}

template <typename Real>
void check_same_dim(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("density matrices differ in dimension");
}

/// tr((rho - sigma)^2).
template <typename Real>
Real hs_distance(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  check_same_dim(rho, sigma);
  return (rho.matrix() - sigma.matrix()).squaredNorm();
}

template <typename Real>
Real purity(const DensityMatrix<Real>& rho) {
  return rho.matrix().squaredNorm();
}

/// Real tr(rho sigma).
template <typename Real>
Real overlap_trace(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  check_same_dim(rho, sigma);
  return rho.matrix().cwiseProduct(sigma.matrix().conjugate()).sum().real();
}

/// (1/2) sum_j |lambda_j| over the spectrum of rho - sigma.
template <typename Real>
Real trace_distance(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  check_same_dim(rho, sigma);
  const ComplexMatrix<Real> diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(diff, Eigen::EigenvaluesOnly);
  return std::clamp(solver.eigenvalues().cwiseAbs().sum() / 2, Real(0), Real(1));
}

/// Count of eigenvalues above `cutoff`.
template <typename Real>
int numerical_rank(const DensityMatrix<Real>& rho, Real cutoff = Real(kRankCutoff)) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  return int((solver.eigenvalues().array() > cutoff).count());
}

/// The three overlap sums that make up the Hilbert-Schmidt distance.
template <typename Real = double>
struct HsTerms {
  Real purity_a = 0;   // tr rho^2
  Real purity_b = 0;   // tr sigma^2
  Real cross = 0;      // tr rho sigma

  Real distance() const { return purity_a + purity_b - 2 * cross; }
};

/// Builds HsTerms from a pairwise overlap function overlap(i, j) over the
/// concatenated index range [0, Ma + Mb). Class A occupies [0, Ma). Each
/// unordered pair is queried once; overlap(i, i) is taken as 1.
template <typename Real, typename OverlapFn>
HsTerms<Real> hs_terms_from_pairwise(std::size_t ma, std::size_t mb, OverlapFn&& overlap) {
  if (ma == 0 || mb == 0) throw std::invalid_argument("hs distance: empty class");
  const std::size_t m = ma + mb;
  Real aa = Real(ma), bb = Real(mb), ab = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Real f = overlap(i, j);
      if (j < ma) {
        aa += 2 * f;
      } else if (i >= ma) {
        bb += 2 * f;
      } else {
        ab += f;
      }
    }
  }
  return {aa / Real(ma * ma), bb / Real(mb * mb), ab / Real(ma * mb)};
}

/// Overlap sums from the states themselves: exact when shots == 0, otherwise
/// each pair is estimated with an independently seeded SWAP test.
template <typename Real>
HsTerms<Real> hs_terms_from_overlaps(std::span<const StateVector<Real>> a,
                                     std::span<const StateVector<Real>> b, std::int64_t shots,
                                     std::uint64_t seed) {
  const std::size_t ma = a.size();
  auto state = [&](std::size_t i) -> const StateVector<Real>& { return i < ma ? a[i] : b[i - ma]; };
  const std::size_t m = ma + b.size();
  return hs_terms_from_pairwise<Real>(ma, b.size(), [&](std::size_t i, std::size_t j) {
    if (shots == 0) return overlap_exact(state(i), state(j));
    return swap_test(state(i), state(j), shots, derive_seed(seed, i * m + j)).value;
  });
}

/// Overlap sums from raw inputs, estimated with inversion tests when shots > 0.
template <typename Real>
HsTerms<Real> hs_terms_from_overlaps(const EmbeddingSpec& spec, const RealVector<Real>& theta,
                                     std::span<const RealVector<Real>> a,
                                     std::span<const RealVector<Real>> b, std::int64_t shots,
                                     std::uint64_t seed) {
  const std::size_t ma = a.size();
  const std::size_t m = ma + b.size();
  auto input = [&](std::size_t i) -> const RealVector<Real>& { return i < ma ? a[i] : b[i - ma]; };
  if (shots == 0) {
    std::vector<StateVector<Real>> sa, sb;
    for (const auto& x : a) sa.push_back(embed(spec, theta, x));
    for (const auto& x : b) sb.push_back(embed(spec, theta, x));
    return hs_terms_from_overlaps<Real>(sa, sb, 0, seed);
  }
  return hs_terms_from_pairwise<Real>(ma, b.size(), [&](std::size_t i, std::size_t j) {
    return inversion_test(spec, theta, input(i), input(j), shots, derive_seed(seed, i * m + j)).value;
  });
}

template <typename Real>
Real hs_distance_from_overlaps(std::span<const StateVector<Real>> a,
                               std::span<const StateVector<Real>> b, std::int64_t shots,
                               std::uint64_t seed) {
  return hs_terms_from_overlaps(a, b, shots, seed).distance();
}

template <typename Real>
Real hs_distance_from_overlaps(const std::vector<StateVector<Real>>& a,
                               const std::vector<StateVector<Real>>& b, std::int64_t shots,
                               std::uint64_t seed) {
  return hs_distance_from_overlaps(std::span<const StateVector<Real>>(a),
                                   std::span<const StateVector<Real>>(b), shots, seed);
}

namespace detail {

// tr_env[U (eta (x) env) U^dagger] with U = cos(d) I - i sin(d) S, S the swap.
template <typename Real>
ComplexMatrix<Real> partial_swap(const ComplexMatrix<Real>& eta, const ComplexMatrix<Real>& env,
                                 Real delta) {
  using std::cos;
  using std::sin;
  const Index d = eta.rows();
  const Index dd = d * d;
  ComplexMatrix<Real> joint(dd, dd);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) joint.block(i * d, j * d, d, d) = eta(i, j) * env;
  }
  ComplexMatrix<Real> swap = ComplexMatrix<Real>::Zero(dd, dd);
  for (Index i = 0; i < d; ++i) {
    for (Index k = 0; k < d; ++k) swap(k * d + i, i * d + k) = Complex<Real>(1);
  }
  const ComplexMatrix<Real> u = cos(delta) * ComplexMatrix<Real>::Identity(dd, dd) -
                                Complex<Real>(0, sin(delta)) * swap;
  const ComplexMatrix<Real> out = u * joint * u.adjoint();
  ComplexMatrix<Real> reduced = ComplexMatrix<Real>::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      for (Index k = 0; k < d; ++k) reduced(i, j) += out(i * d + k, j * d + k);
    }
  }
  return (reduced + reduced.adjoint()) / Real(2);
}

}  // namespace detail

/// One Trotter step of density-matrix exponentiation of rho - sigma acting on
/// eta: a partial swap with a copy of rho by +delta, then with sigma by -delta.
/// Approximates exp(-i delta (rho - sigma)) eta exp(i delta (rho - sigma)) to
/// O(delta^2).
template <typename Real>
DensityMatrix<Real> dme_trotter_step(const DensityMatrix<Real>& eta, const DensityMatrix<Real>& rho,
                                     const DensityMatrix<Real>& sigma, Real delta) {
  using std::abs;
  check_same_dim(eta, rho);
  check_same_dim(eta, sigma);
  if (abs(delta) > Real(1)) throw std::invalid_argument("dme_trotter_step: |delta| must be <= 1");
  const auto first = detail::partial_swap(eta.matrix(), rho.matrix(), delta);
  auto second = detail::partial_swap(first, sigma.matrix(), -delta);
  return DensityMatrix<Real>(eta.n_qubits(), std::move(second));
}

}  // namespace qmetric
