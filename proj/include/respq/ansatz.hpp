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

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "respq/circuit.hpp"
#include "respq/statevector.hpp"
#include "respq/stateprep.hpp"

namespace respq {

enum class AnsatzKind {
  HardwareEfficient,  // RY layers with a sqrt-iSWAP chain; n*layers angles
  SingletPair,        // one-angle family over span{|01>,|10>}
  TwoAngleCO,         // cos(t/2)|a> + sin(t/2) e^{i p}|b> over two basis states
  Custom,             // caller-supplied circuit
  OracleSpan          // two-angle family anchored per frequency by the solver
};

struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::HardwareEfficient;
  int n = 1;
  int layers = 1;                       // HardwareEfficient
  std::int64_t basis_a = 0;             // TwoAngleCO
  std::int64_t basis_b = 1;             // TwoAngleCO
  std::optional<Circuit> custom;        // Custom
  double span_theta0 = 0.9250;          // OracleSpan optimum displacement
  double span_phi0 = 2.1130;
};

/// Reference determinant: X on each listed qubit, e.g. occupied {1} on two
/// qubits prepares |01>.
inline Circuit hf_reference(int n, const std::vector<int>& occupied) {
  Circuit c(n);
  for (int q : occupied) {
    if (q < 0 || q >= n) throw std::invalid_argument("hf_reference: qubit index out of range");
    c.x(q);
  }
  return c;
}

/// Two-angle family about a fixed anchor state:
///   |x(theta,phi)> = cos(h)|anchor> + e^{i xi} sin(h)|anchor_perp>
/// with the anchor reached exactly at (theta0, phi0).  The anchor embedding
/// is an exact preparation circuit; the two free angles rotate inside the
/// spanned two-dimensional subspace.
inline Circuit build_span_ansatz(const Statevector& anchor, double theta0, double phi0) {
  Circuit c(anchor.n());
  c.ry(0, "theta");
  c.rz(0, "phi");
  c.rz(0, -phi0);
  c.ry(0, -theta0);
  c.extend(prepare_state(anchor.vector()));
  return c;
}

/// Builds the circuit for `spec`.  OracleSpan is anchored per frequency by
/// the response solver and cannot be built standalone.
inline Circuit build_ansatz(const AnsatzSpec& spec) {
  switch (spec.kind) {
    case AnsatzKind::HardwareEfficient: {
      if (spec.layers < 1)
        throw std::invalid_argument("build_ansatz: layers must be >= 1");
      Circuit c(spec.n);
      for (int l = 0; l < spec.layers; ++l) {
        for (int q = 0; q < spec.n; ++q)
          c.ry(q, "t" + std::to_string(l) + "_" + std::to_string(q));
        for (int q = 0; q + 1 < spec.n; ++q) c.sqrt_iswap(q, q + 1);
      }
      return c;
    }
    case AnsatzKind::SingletPair: {
      if (spec.n != 2)
        throw std::invalid_argument("build_ansatz: SingletPair requires 2 qubits");
      // X + sqrt-iSWAP interferometer: one angle t sweeps every real
      // combination of |01> and |10| (up to global phase); t = -pi/4 gives
      // the singlet (|01>+|10>)/sqrt2.
      Circuit c(2);
      c.x(1);
      c.sqrt_iswap(0, 1);
      c.rz(0, "t0");
      c.append({GateKind::RZ, {1}, "t0", 0.0, true});  // RZ(-t0)
      c.sqrt_iswap(0, 1);
      return c;
    }
    case AnsatzKind::TwoAngleCO: {
      const std::int64_t dim = std::int64_t(1) << spec.n;
      if (spec.basis_a < 0 || spec.basis_a >= dim || spec.basis_b < 0 || spec.basis_b >= dim)
        throw std::invalid_argument("build_ansatz: designated basis state out of range");
      if (spec.basis_a == spec.basis_b)
        throw std::invalid_argument("build_ansatz: designated basis states must differ");
      const std::int64_t diff = spec.basis_a ^ spec.basis_b;
      int pivot = -1;
      for (int q = 0; q < spec.n; ++q)
        if ((diff >> (spec.n - 1 - q)) & 1) { pivot = q; break; }
      Circuit c(spec.n);
      c.ry(pivot, "theta");
      c.rz(pivot, "phi");
      for (int q = pivot + 1; q < spec.n; ++q)
        if ((diff >> (spec.n - 1 - q)) & 1) c.cnot(pivot, q);
      for (int q = 0; q < spec.n; ++q)
        if ((spec.basis_a >> (spec.n - 1 - q)) & 1) c.x(q);
      return c;
    }
    case AnsatzKind::Custom:
      if (!spec.custom) throw std::invalid_argument("build_ansatz: missing custom circuit");
      return *spec.custom;
    case AnsatzKind::OracleSpan:
      throw std::logic_error("build_ansatz: OracleSpan is anchored per frequency by the solver");
  }
  throw std::logic_error("build_ansatz: unknown kind");
}

/// Natural starting bindings: the singlet point for SingletPair, zero angles
/// otherwise.
inline Bindings default_bindings(const Circuit& c, const AnsatzSpec& spec) {
  Bindings b;
  for (const auto& name : c.parameters())
    b[name] = (spec.kind == AnsatzKind::SingletPair) ? -M_PI / 4 : 0.0;
  return b;
}

}  // namespace respq
