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

// Dense statevector and density-matrix simulation of the gate set used by the
// embedding circuits: RX, RY, ZZ, H and CSWAP.
//
// Basis indices are big-endian: qubit 0 is the most significant bit. Rotation
// gates use the generator-halved form exp(-i * angle * P / 2).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmetric/random.hpp"
#include "qmetric/types.hpp"

namespace qmetric {

template <typename Real = double>
class StateVector {
 public:
  using Scalar = Complex<Real>;
  using Amplitudes = ComplexVector<Real>;

  /// |0...0> on n qubits.
  static StateVector zero(int n_qubits) { return basis(n_qubits, 0); }

  static StateVector basis(int n_qubits, Index index) {
    check_qubits(n_qubits);
    if (index < 0 || index >= qubit_dim(n_qubits)) {
      throw std::out_of_range("basis index out of range");
    }
    Amplitudes a = Amplitudes::Zero(qubit_dim(n_qubits));
    a(index) = Scalar(1);
    return StateVector(n_qubits, std::move(a));
  }

  /// Takes ownership of `amplitudes`; throws unless the length is 2^n and the
  /// norm is 1 within 1e-10.
  StateVector(int n_qubits, Amplitudes amplitudes)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubits(n_qubits);
    if (amplitudes_.size() != qubit_dim(n_qubits)) {
      throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
    }
    using std::abs;
    if (abs(amplitudes_.squaredNorm() - Real(1)) > Real(1e-10)) {
      throw std::invalid_argument("state vector is not normalized");
    }
  }

  int n_qubits() const { return n_qubits_; }
  Index dim() const { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  const Scalar& operator[](Index i) const { return amplitudes_(i); }

 private:
  static void check_qubits(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
      throw std::invalid_argument("n_qubits must be in [1, 30]");
    }
  }

  int n_qubits_;
  Amplitudes amplitudes_;
};

/// Tensor product |a> (x) |b>; a occupies the leading qubits.
template <typename Real>
StateVector<Real> tensor(const StateVector<Real>& a, const StateVector<Real>& b) {
  ComplexVector<Real> out(a.dim() * b.dim());
  for (Index i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  }
  return StateVector<Real>(a.n_qubits() + b.n_qubits(), std::move(out));
}

template <typename Real = double>
class DensityMatrix {
 public:
  using Matrix = ComplexMatrix<Real>;

  /// Throws unless `entries` is 2^n x 2^n, Hermitian and unit trace within 1e-10.
  /// Positivity is not checked here; see min_eigenvalue().
  DensityMatrix(int n_qubits, Matrix entries)
      : n_qubits_(n_qubits), entries_(std::move(entries)) {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    const Index d = qubit_dim(n_qubits);
    if (entries_.rows() != d || entries_.cols() != d) {
      throw std::invalid_argument("density matrix must be 2^n x 2^n");
    }
    using std::abs;
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > Real(1e-10)) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (abs(entries_.trace() - Complex<Real>(1)) > Real(1e-10)) {
      throw std::invalid_argument("density matrix does not have unit trace");
    }
  }

  int n_qubits() const { return n_qubits_; }
  Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

  Real min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }

 private:
  int n_qubits_;
  Matrix entries_;
};

enum class GateKind { RX, RY, ZZ, H, CSWAP };

inline int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::H:
      return 1;
    case GateKind::ZZ:
      return 2;
    case GateKind::CSWAP:
      return 3;
  }
  return 0;
}

inline bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::ZZ;
}

inline const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::ZZ: return "ZZ";
    case GateKind::H: return "H";
    case GateKind::CSWAP: return "CSWAP";
  }
  return "?";
}

template <typename Real = double>
struct GateOp {
  GateKind kind;
  std::array<int, 3> qubits{-1, -1, -1};
  Real angle{0};

  int arity() const { return gate_arity(kind); }
  std::span<const int> targets() const { return {qubits.data(), std::size_t(arity())}; }

  static GateOp rx(int q, Real a) { return {GateKind::RX, {q, -1, -1}, a}; }
  static GateOp ry(int q, Real a) { return {GateKind::RY, {q, -1, -1}, a}; }
  static GateOp zz(int q0, int q1, Real a) { return {GateKind::ZZ, {q0, q1, -1}, a}; }
  static GateOp h(int q) { return {GateKind::H, {q, -1, -1}, Real(0)}; }
  static GateOp cswap(int control, int a, int b) {
    return {GateKind::CSWAP, {control, a, b}, Real(0)};
  }

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

template <typename Real = double>
class Circuit {
 public:
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  }

  /// Appends `op`; throws if its qubits are out of range or repeated.
  Circuit& push(const GateOp<Real>& op) {
    auto t = op.targets();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] < 0 || t[i] >= n_qubits_) {
        throw std::out_of_range(std::string(gate_name(op.kind)) + ": qubit index out of range");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (t[i] == t[j]) {
          throw std::invalid_argument(std::string(gate_name(op.kind)) + ": repeated qubit");
        }
      }
    }
    ops_.push_back(op);
    return *this;
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateOp<Real>>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }

 private:
  int n_qubits_;
  std::vector<GateOp<Real>> ops_;
};

/// Local unitary of a gate. Local index bits follow the target order, first
/// target most significant (for CSWAP: control, a, b).
template <typename Real>
ComplexMatrix<Real> gate_matrix(const GateOp<Real>& g) {
  using C = Complex<Real>;
  using std::cos;
  using std::sin;
  const Real c = cos(g.angle / 2);
  const Real s = sin(g.angle / 2);
  ComplexMatrix<Real> m;
  switch (g.kind) {
    case GateKind::RX:
      m.resize(2, 2);
      m << C(c), C(0, -s), C(0, -s), C(c);
      break;
    case GateKind::RY:
      m.resize(2, 2);
      m << C(c), C(-s), C(s), C(c);
      break;
    case GateKind::ZZ: {
      const C minus(c, -s);
      const C plus(c, s);
      m = ComplexMatrix<Real>::Zero(4, 4);
      m.diagonal() << minus, plus, plus, minus;
      break;
    }
    case GateKind::H: {
      const Real r = Real(1) / std::sqrt(Real(2));
      m.resize(2, 2);
      m << C(r), C(r), C(r), C(-r);
      break;
    }
    case GateKind::CSWAP:
      m = ComplexMatrix<Real>::Identity(8, 8);
      m(5, 5) = m(6, 6) = C(0);
      m(5, 6) = m(6, 5) = C(1);
      break;
  }
  return m;
}

namespace detail {

template <typename Real>
void apply_gate(const GateOp<Real>& g, int n_qubits, ComplexVector<Real>& amps) {
  const ComplexMatrix<Real> u = gate_matrix(g);
  const int k = g.arity();
  const Index local = Index{1} << k;
  std::array<Index, 3> masks{};
  Index all = 0;
  for (int j = 0; j < k; ++j) {
    masks[j] = Index{1} << (n_qubits - 1 - g.qubits[j]);
    all |= masks[j];
  }
  std::array<Index, 8> idx{};
  ComplexVector<Real> v(local);
  for (Index base = 0; base < amps.size(); ++base) {
    if (base & all) continue;
    for (Index l = 0; l < local; ++l) {
      Index i = base;
      for (int j = 0; j < k; ++j) {
        if (l & (Index{1} << (k - 1 - j))) i |= masks[j];
      }
      idx[l] = i;
      v(l) = amps(i);
    }
    const ComplexVector<Real> w = u * v;
    for (Index l = 0; l < local; ++l) amps(idx[l]) = w(l);
  }
}

}  // namespace detail

template <typename Real>
StateVector<Real> apply(const Circuit<Real>& c, const StateVector<Real>& s) {
  if (c.n_qubits() != s.n_qubits()) {
    throw std::invalid_argument("circuit and state have different qubit counts");
  }
  ComplexVector<Real> amps = s.amplitudes();
  for (const auto& g : c.ops()) detail::apply_gate(g, c.n_qubits(), amps);
  return StateVector<Real>(s.n_qubits(), std::move(amps));
}

template <typename Real>
Circuit<Real> adjoint(const Circuit<Real>& c) {
  Circuit<Real> out(c.n_qubits());
  for (auto it = c.ops().rbegin(); it != c.ops().rend(); ++it) {
    GateOp<Real> g = *it;
    if (is_rotation(g.kind)) g.angle = -g.angle;
    out.push(g);
  }
  return out;
}

/// Appends the ops of `b` after those of `a`.
template <typename Real>
Circuit<Real> compose(const Circuit<Real>& a, const Circuit<Real>& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("compose: qubit count mismatch");
  Circuit<Real> out = a;
  for (const auto& g : b.ops()) out.push(g);
  return out;
}

/// Uniform mixture (1/M) sum_i |psi_i><psi_i|.
template <typename Real>
DensityMatrix<Real> density_from_states(std::span<const StateVector<Real>> states) {
  if (states.empty()) throw std::invalid_argument("density_from_states: empty ensemble");
  const int n = states.front().n_qubits();
  const Index d = qubit_dim(n);
  ComplexMatrix<Real> rho = ComplexMatrix<Real>::Zero(d, d);
  for (const auto& s : states) {
    if (s.n_qubits() != n) throw std::invalid_argument("density_from_states: mixed qubit counts");
    rho.noalias() += s.amplitudes() * s.amplitudes().adjoint();
  }
  rho /= Real(states.size());
  // Symmetrize away rounding so the Hermitian check is exact.
  ComplexMatrix<Real> herm = (rho + rho.adjoint()) / Real(2);
  return DensityMatrix<Real>(n, std::move(herm));
}

template <typename Real>
DensityMatrix<Real> density_from_states(const std::vector<StateVector<Real>>& states) {
  return density_from_states(std::span<const StateVector<Real>>(states));
}

/// Probability of reading 0 on `qubit` in the computational basis.
template <typename Real>
Real prob_qubit_zero(const StateVector<Real>& s, int qubit) {
  if (qubit < 0 || qubit >= s.n_qubits()) throw std::out_of_range("qubit out of range");
  const Index mask = Index{1} << (s.n_qubits() - 1 - qubit);
  Real p0 = 0;
  for (Index i = 0; i < s.dim(); ++i) {
    if (!(i & mask)) p0 += std::norm(s[i]);
  }
  return std::clamp(p0, Real(0), Real(1));
}

struct QubitCounts {
  std::int64_t n0 = 0;
  std::int64_t n1 = 0;
  friend bool operator==(const QubitCounts&, const QubitCounts&) = default;
};

/// Number of successes among `shots` Bernoulli(p) trials drawn from `seed`.
inline std::int64_t sample_binomial(double p, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  p = std::clamp(p, 0.0, 1.0);
  Engine engine = make_engine(seed);
  std::binomial_distribution<std::int64_t> dist(shots, p);
  return dist(engine);
}

template <typename Real>
QubitCounts sample_qubit_z(const StateVector<Real>& s, int qubit, std::int64_t shots,
                           std::uint64_t seed) {
  const double p0 = double(prob_qubit_zero(s, qubit));
  const std::int64_t n0 = sample_binomial(p0, shots, seed);
  return {n0, shots - n0};
}

}  // namespace qmetric
