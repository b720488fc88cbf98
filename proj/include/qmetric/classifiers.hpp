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

// Classifiers built directly on the class ensembles rho (label +1) and
// sigma (label -1): the fidelity classifier <x|rho - sigma|x>, the Helstrom
// classifier <x|P+ - P-|x>, and its per-pair average over pure states.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmetric/metrics.hpp"
#include "qmetric/random.hpp"
#include "qmetric/simulator.hpp"
#include "qmetric/types.hpp"

namespace qmetric {

template <typename Real = double>
class ClassEnsembles {
 public:
  ClassEnsembles(std::vector<StateVector<Real>> states_a, std::vector<StateVector<Real>> states_b)
      : states_a_(std::move(states_a)),
        states_b_(std::move(states_b)),
        rho_(checked_density(states_a_, states_b_, 0)),
        sigma_(checked_density(states_a_, states_b_, 1)) {}

  const std::vector<StateVector<Real>>& states_a() const { return states_a_; }
  const std::vector<StateVector<Real>>& states_b() const { return states_b_; }
  const DensityMatrix<Real>& rho() const { return rho_; }
  const DensityMatrix<Real>& sigma() const { return sigma_; }
  int n_qubits() const { return rho_.n_qubits(); }

 private:
  static DensityMatrix<Real> checked_density(const std::vector<StateVector<Real>>& a,
                                             const std::vector<StateVector<Real>>& b, int which) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ClassEnsembles: empty class");
    const int n = a.front().n_qubits();
    for (const auto* side : {&a, &b}) {
      for (const auto& s : *side) {
        if (s.n_qubits() != n) throw std::invalid_argument("ClassEnsembles: mixed qubit counts");
      }
    }
    return density_from_states(which == 0 ? a : b);
  }

  std::vector<StateVector<Real>> states_a_;
  std::vector<StateVector<Real>> states_b_;
  DensityMatrix<Real> rho_;
  DensityMatrix<Real> sigma_;
};

template <typename Real>
void check_matching(const StateVector<Real>& x, const ClassEnsembles<Real>& e) {
  if (x.n_qubits() != e.n_qubits()) throw std::invalid_argument("input state and ensembles differ in size");
}

/// (1/Ma) sum_a |<a|x>|^2 - (1/Mb) sum_b |<b|x>|^2. With shots > 0 every
/// overlap is a SWAP-test estimate on its own seed substream.
template <typename Real>
Real fidelity_score(const StateVector<Real>& x, const ClassEnsembles<Real>& e,
                    std::int64_t shots = 0, std::uint64_t seed = 0) {
  check_matching(x, e);
  std::uint64_t stream = 0;
  auto mean_overlap = [&](const std::vector<StateVector<Real>>& states) {
    Real sum = 0;
    for (const auto& s : states) {
      sum += shots == 0 ? overlap_exact(s, x) : swap_test(s, x, shots, derive_seed(seed, stream)).value;
      ++stream;
    }
    return sum / Real(states.size());
  };
  const Real a = mean_overlap(e.states_a());
  return a - mean_overlap(e.states_b());
}

/// P+ - P- for the spectral decomposition of rho - sigma. Eigenvalues within
/// `tol` of zero belong to neither projector.
template <typename Real>
ComplexMatrix<Real> helstrom_observable(const ClassEnsembles<Real>& e, Real tol = Real(kSignTolerance)) {
  const ComplexMatrix<Real> diff = e.rho().matrix() - e.sigma().matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(diff);
  RealVector<Real> signs = RealVector<Real>::Zero(diff.rows());
  for (Index j = 0; j < signs.size(); ++j) {
    const Real l = solver.eigenvalues()(j);
    signs(j) = l > tol ? Real(1) : (l < -tol ? Real(-1) : Real(0));
  }
  const auto& v = solver.eigenvectors();
  return v * signs.template cast<Complex<Real>>().asDiagonal() * v.adjoint();
}

template <typename Real>
Real expectation(const ComplexMatrix<Real>& observable, const StateVector<Real>& x) {
  if (observable.rows() != x.dim()) throw std::invalid_argument("observable and state differ in size");
  return x.amplitudes().dot(observable * x.amplitudes()).real();
}

template <typename Real>
Real helstrom_global_score(const StateVector<Real>& x, const ClassEnsembles<Real>& e) {
  check_matching(x, e);
  return expectation(helstrom_observable(e), x);
}

/// Spectrum of |a><a| - |b><b| restricted to span{a, b}.
template <typename Real = double>
struct PairSpectrum {
  Eigen::Matrix<Real, 2, 1> eigenvalues = Eigen::Matrix<Real, 2, 1>::Zero();
  // Eigenvectors in the orthonormal basis {a, (b - <a|b> a)/norm}.
  Eigen::Matrix<Complex<Real>, 2, 2> eigenvectors = Eigen::Matrix<Complex<Real>, 2, 2>::Identity();
  ComplexVector<Real> basis_a;
  ComplexVector<Real> basis_perp;
  bool degenerate = true;
};

template <typename Real>
PairSpectrum<Real> pair_spectrum(const StateVector<Real>& a, const StateVector<Real>& b) {
  using std::abs;
  using std::sqrt;
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("pair_spectrum: dimension mismatch");
  PairSpectrum<Real> out;
  const Complex<Real> c = a.amplitudes().dot(b.amplitudes());
  if (abs(abs(c) - Real(1)) <= Real(kSignTolerance)) return out;
  out.basis_a = a.amplitudes();
  ComplexVector<Real> perp = b.amplitudes() - c * a.amplitudes();
  const Real s = perp.norm();
  out.basis_perp = perp / s;
  // b = c a + s e  =>  |a><a| - |b><b| in the {a, e} basis.
  Eigen::Matrix<Complex<Real>, 2, 2> m;
  m << Complex<Real>(1 - std::norm(c)), -c * s, -std::conj(c) * s, Complex<Real>(-s * s);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex<Real>, 2, 2>> solver(m);
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.degenerate = false;
  return out;
}

/// sum_j sign(lambda_j) |<d_j|x>|^2 for the pure pair (a, b).
template <typename Real>
Real pair_sign_score(const StateVector<Real>& a, const StateVector<Real>& b, const StateVector<Real>& x) {
  const auto spec = pair_spectrum(a, b);
  if (spec.degenerate) return Real(0);
  Eigen::Matrix<Complex<Real>, 2, 1> local;
  local << spec.basis_a.dot(x.amplitudes()), spec.basis_perp.dot(x.amplitudes());
  Real score = 0;
  for (int j = 0; j < 2; ++j) {
    const Real l = spec.eigenvalues(j);
    if (std::abs(l) <= Real(kSignTolerance)) continue;
    const Real weight = std::norm(spec.eigenvectors.col(j).dot(local));
    score += l > 0 ? weight : -weight;
  }
  return score;
}

/// Average of pair_sign_score over all (a, b) pairs drawn from the two classes.
template <typename Real>
Real helstrom_pairwise_score(const StateVector<Real>& x, const ClassEnsembles<Real>& e) {
  check_matching(x, e);
  Real sum = 0;
  for (const auto& a : e.states_a()) {
    for (const auto& b : e.states_b()) sum += pair_sign_score(a, b, x);
  }
  return sum / Real(e.states_a().size() * e.states_b().size());
}

struct Prediction {
  double score = 0;
  int label = 1;
  double threshold = 0;
};

/// Label +1 iff score >= threshold.
inline Prediction predict(double score, double threshold = 0.0) {
  return {score, score >= threshold ? 1 : -1, threshold};
}

/// Linear-loss risk -f(x) y averaged within each class and summed over the two
/// classes, i.e. -(mean_{y=+1} f - mean_{y=-1} f). On the training ensembles
/// this is -tr((rho - sigma) M) for a classifier with observable M.
template <typename Real>
Real empirical_risk(std::span<const Real> scores, std::span<const int> labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw std::invalid_argument("empirical_risk: scores and labels must have equal nonzero length");
  }
  Real sum_a = 0, sum_b = 0;
  std::size_t ma = 0, mb = 0;
  for (std::size_t m = 0; m < scores.size(); ++m) {
    if (labels[m] == 1) {
      sum_a += scores[m];
      ++ma;
    } else if (labels[m] == -1) {
      sum_b += scores[m];
      ++mb;
    } else {
      throw std::invalid_argument("empirical_risk: labels must be +1 or -1");
    }
  }
  if (ma == 0 || mb == 0) throw std::invalid_argument("empirical_risk: both labels must be present");
  return -(sum_a / Real(ma) - sum_b / Real(mb));
}

template <typename Real>
Real empirical_risk(const std::vector<Real>& scores, const std::vector<int>& labels) {
  return empirical_risk(std::span<const Real>(scores), std::span<const int>(labels));
}

/// ceil(p(1-p)/(p-q)^2) + 1 repetitions to resolve p = tr rho^2 from q = tr rho sigma.
inline std::int64_t required_shots(double p, double q) {
  if (!(p > q)) throw std::invalid_argument("required_shots: purity does not exceed cross overlap");
  const double gap = p - q;
  return std::int64_t(std::ceil(p * (1 - p) / (gap * gap))) + 1;
}

template <typename Real>
std::int64_t required_shots(const ClassEnsembles<Real>& e) {
  return required_shots(double(purity(e.rho())), double(overlap_trace(e.rho(), e.sigma())));
}

}  // namespace qmetric
