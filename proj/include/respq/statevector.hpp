// Copyright 2026 The respq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "respq/circuit.hpp"
#include "respq/pauli.hpp"

namespace respq {

inline constexpr int kStatevectorCap = 24;

namespace detail {

// Gate kernels templated on the slice type so the same code serves plain
// statevectors and rows/columns of a density matrix.  Indices follow the
// qubit-0-leftmost convention: qubit q owns bit (n-1-q) of a basis index.

template <typename V>
void apply_1q_kernel(V&& v, int n, int q, const Eigen::Matrix2cd& m) {
  const std::int64_t dim = std::int64_t(1) << n;
  const std::int64_t s = std::int64_t(1) << (n - 1 - q);
  for (std::int64_t i = 0; i < dim; ++i) {
    if (i & s) continue;
    const cplx a = v(i), b = v(i | s);
    v(i) = m(0, 0) * a + m(0, 1) * b;
    v(i | s) = m(1, 0) * a + m(1, 1) * b;
  }
}

template <typename V>
void apply_2q_kernel(V&& v, int n, int q0, int q1, const Eigen::Matrix4cd& m) {
  const std::int64_t dim = std::int64_t(1) << n;
  const std::int64_t s0 = std::int64_t(1) << (n - 1 - q0);
  const std::int64_t s1 = std::int64_t(1) << (n - 1 - q1);
  for (std::int64_t i = 0; i < dim; ++i) {
    if ((i & s0) || (i & s1)) continue;
    const std::int64_t i01 = i | s1, i10 = i | s0, i11 = i | s0 | s1;
    const cplx a00 = v(i), a01 = v(i01), a10 = v(i10), a11 = v(i11);
    v(i) = m(0, 0) * a00 + m(0, 1) * a01 + m(0, 2) * a10 + m(0, 3) * a11;
    v(i01) = m(1, 0) * a00 + m(1, 1) * a01 + m(1, 2) * a10 + m(1, 3) * a11;
    v(i10) = m(2, 0) * a00 + m(2, 1) * a01 + m(2, 2) * a10 + m(2, 3) * a11;
    v(i11) = m(3, 0) * a00 + m(3, 1) * a01 + m(3, 2) * a10 + m(3, 3) * a11;
  }
}

struct PauliMask {
  std::int64_t flip = 0;
  std::vector<std::pair<std::int64_t, char>> phased;  // (bit mask, 'Y' or 'Z')
};

inline PauliMask pauli_mask(const std::string& word, const std::vector<int>& qubits, int n) {
  PauliMask pm;
  for (std::size_t j = 0; j < word.size(); ++j) {
    const std::int64_t bit = std::int64_t(1) << (n - 1 - qubits[j]);
    if (word[j] == 'X' || word[j] == 'Y') pm.flip |= bit;
    if (word[j] == 'Y' || word[j] == 'Z') pm.phased.emplace_back(bit, word[j]);
  }
  return pm;
}

// Phase of P acting on basis state i: each Z contributes (-1)^bit, each Y
// contributes +i on bit 0 and -i on bit 1.
inline cplx pauli_phase(const PauliMask& pm, std::int64_t i) {
  cplx phase(1.0, 0.0);
  for (const auto& [bit, op] : pm.phased) {
    const bool set = (i & bit) != 0;
    if (op == 'Z') {
      if (set) phase = -phase;
    } else {
      phase *= set ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    }
  }
  return phase;
}

// Pauli word applied in place, optionally restricted to indices where
// `ctrl` bits are set (0 = unconditional) and optionally with conjugated
// phases (used when multiplying a density matrix from the right).
template <typename V>
void apply_pauli_kernel(V&& v, int n, const PauliMask& pm, std::int64_t ctrl, bool conj) {
  const std::int64_t dim = std::int64_t(1) << n;
  if (pm.flip == 0) {
    for (std::int64_t i = 0; i < dim; ++i) {
      if ((i & ctrl) != ctrl) continue;
      cplx ph = pauli_phase(pm, i);
      v(i) *= conj ? std::conj(ph) : ph;
    }
    return;
  }
  const std::int64_t low = pm.flip & -pm.flip;
  for (std::int64_t i = 0; i < dim; ++i) {
    if ((i & ctrl) != ctrl) continue;
    if (i & low) continue;
    const std::int64_t j = i ^ pm.flip;
    cplx pi = pauli_phase(pm, i), pj = pauli_phase(pm, j);
    if (conj) {
      pi = std::conj(pi);
      pj = std::conj(pj);
    }
    const cplx a = v(i);
    v(i) = pj * v(j);
    v(j) = pi * a;
  }
}

// Dispatches one gate onto a slice.  `conj` applies the entrywise-conjugated
// matrix instead (not the adjoint).
template <typename V>
void apply_gate_kernel(V&& v, int n, const Gate& g, double angle, bool conj = false) {
  switch (g.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::XHalf:
    case GateKind::RY:
    case GateKind::RZ: {
      Eigen::Matrix2cd m = gate_matrix_1q(g, angle);
      if (conj) m = m.conjugate().eval();
      apply_1q_kernel(v, n, g.targets[0], m);
      break;
    }
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SqrtISwap: {
      Eigen::Matrix4cd m = gate_matrix_2q(g);
      if (conj) m = m.conjugate().eval();
      apply_2q_kernel(v, n, g.targets[0], g.targets[1], m);
      break;
    }
    case GateKind::ControlledPauli: {
      if (g.word.empty()) break;
      std::vector<int> qs(g.targets.begin() + 1, g.targets.end());
      const PauliMask pm = pauli_mask(g.word, qs, n);
      const std::int64_t ctrl = std::int64_t(1) << (n - 1 - g.targets[0]);
      // Controlled Pauli words are Hermitian, so dagger is a no-op.
      apply_pauli_kernel(v, n, pm, ctrl, conj);
      break;
    }
  }
}

}  // namespace detail

/// A pure n-qubit state.  Basis index bit (n-1-q) holds qubit q, i.e. qubit 0
/// is the most significant bit and the leftmost tensor factor.
class Statevector {
 public:
  explicit Statevector(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("Statevector: qubit count must be positive");
    if (n > kStatevectorCap)
      throw std::runtime_error("Statevector: qubit count exceeds cap of 24");
    a_ = Eigen::VectorXcd::Zero(std::int64_t(1) << n);
    a_(0) = 1.0;
  }

  static Statevector from_vector(const Eigen::VectorXcd& v) {
    int n = 0;
    while ((std::int64_t(1) << n) < v.size()) ++n;
    if ((std::int64_t(1) << n) != v.size())
      throw std::invalid_argument("Statevector::from_vector: size is not a power of two");
    const double nrm = v.norm();
    if (std::abs(nrm - 1.0) > 1e-8)
      throw std::invalid_argument("Statevector::from_vector: vector is not normalized");
    Statevector s(n);
    s.a_ = v;
    return s;
  }

  static Statevector normalized(const Eigen::VectorXcd& v) {
    const double nrm = v.norm();
    if (nrm < 1e-300)
      throw std::invalid_argument("Statevector::normalized: zero vector");
    return from_vector(v / nrm);
  }

  int n() const { return n_; }
  std::int64_t dim() const { return a_.size(); }
  const Eigen::VectorXcd& vector() const { return a_; }
  Eigen::VectorXcd& vector() { return a_; }
  cplx amp(std::int64_t i) const { return a_(i); }
  double norm() const { return a_.norm(); }

  void apply(const Gate& g, double angle) {
    detail::apply_gate_kernel(a_, n_, g, angle);
  }

 private:
  int n_;
  Eigen::VectorXcd a_;
};

/// Runs `c` on |0...0> with the given parameter bindings.
inline Statevector run_circuit(const Circuit& c, const Bindings& b = {}) {
  Statevector s(c.n());
  for (const auto& g : c.gates()) s.apply(g, c.resolve_angle(g, b));
  if (std::abs(s.norm() - 1.0) > 1e-10)
    throw std::runtime_error("run_circuit: norm drifted beyond 1e-10");
  return s;
}

/// <a|b>.
inline cplx inner(const Statevector& a, const Statevector& b) {
  if (a.n() != b.n()) throw std::invalid_argument("inner: dimension mismatch");
  return a.vector().dot(b.vector());
}

/// <a|P|b> for a single Pauli word.
inline cplx pauli_bracket(const Statevector& a, const PauliTerm& t, const Statevector& b) {
  if (a.n() != b.n() || t.n() != a.n())
    throw std::invalid_argument("pauli_bracket: dimension mismatch");
  std::vector<int> qs(t.n());
  for (int q = 0; q < t.n(); ++q) qs[q] = q;
  const detail::PauliMask pm = detail::pauli_mask(t.word, qs, t.n());
  cplx acc(0.0, 0.0);
  const auto& va = a.vector();
  const auto& vb = b.vector();
  for (std::int64_t i = 0; i < va.size(); ++i)
    acc += std::conj(va(i ^ pm.flip)) * detail::pauli_phase(pm, i) * vb(i);
  return acc;
}

/// <s|O|s> summed term by term.  Complex in general; real to rounding for
/// Hermitian O.
inline cplx expect(const Statevector& s, const PauliSum& o) {
  if (s.n() != o.n()) throw std::invalid_argument("expect: dimension mismatch");
  cplx acc(0.0, 0.0);
  for (const auto& [w, c] : o.terms()) acc += c * pauli_bracket(s, PauliTerm(w), s);
  return acc;
}

/// P|s> as a fresh state (norm preserved).
inline Statevector apply_pauli(const PauliTerm& t, const Statevector& s) {
  if (t.n() != s.n()) throw std::invalid_argument("apply_pauli: dimension mismatch");
  Statevector out = s;
  std::vector<int> qs(t.n());
  for (int q = 0; q < t.n(); ++q) qs[q] = q;
  const detail::PauliMask pm = detail::pauli_mask(t.word, qs, t.n());
  detail::apply_pauli_kernel(out.vector(), t.n(), pm, 0, false);
  return out;
}

/// O|s> as an unnormalized dense vector.
inline Eigen::VectorXcd apply_sum(const PauliSum& o, const Statevector& s) {
  if (s.n() != o.n()) throw std::invalid_argument("apply_sum: dimension mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.dim());
  std::vector<int> qs(o.n());
  for (int q = 0; q < o.n(); ++q) qs[q] = q;
  for (const auto& [w, c] : o.terms()) {
    const detail::PauliMask pm = detail::pauli_mask(w, qs, o.n());
    for (std::int64_t i = 0; i < s.dim(); ++i)
      out(i ^ pm.flip) += c * detail::pauli_phase(pm, i) * s.amp(i);
  }
  return out;
}

/// Computational-basis probabilities |amp|^2.
inline std::vector<double> probabilities(const Statevector& s) {
  std::vector<double> p(static_cast<std::size_t>(s.dim()));
  for (std::int64_t i = 0; i < s.dim(); ++i) p[i] = std::norm(s.amp(i));
  return p;
}

/// Classical readout error: each qubit's measured bit flips independently
/// with probability flips[q].  Transforms a probability vector in place.
inline void apply_readout_flips(std::vector<double>& p, const std::vector<double>& flips, int n) {
  if (flips.empty()) return;
  if (static_cast<int>(flips.size()) > n)
    throw std::invalid_argument("apply_readout_flips: more flip rates than qubits");
  const std::int64_t dim = std::int64_t(1) << n;
  if (static_cast<std::int64_t>(p.size()) != dim)
    throw std::invalid_argument("apply_readout_flips: distribution size mismatch");
  for (std::size_t q = 0; q < flips.size(); ++q) {
    const double f = flips[q];
    if (f == 0.0) continue;
    if (f < 0.0 || f > 1.0)
      throw std::invalid_argument("apply_readout_flips: probability out of [0,1]");
    const std::int64_t bit = std::int64_t(1) << (n - 1 - static_cast<int>(q));
    for (std::int64_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const double a = p[i], b = p[i | bit];
      p[i] = (1 - f) * a + f * b;
      p[i | bit] = (1 - f) * b + f * a;
    }
  }
}

}  // namespace respq
