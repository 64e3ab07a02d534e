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
#include <stdexcept>
#include <vector>

#include "respq/circuit.hpp"

namespace respq {

/// Uniformly controlled rotation (RY or RZ) on `target`.
///
/// `angles[j]` is the rotation angle for the control pattern where bit l of j
/// gives the state of controls[l].  Realized with the Gray-code walk: 2^k
/// plain rotations interleaved with CNOTs, using the Walsh-type angle
/// transform phi = 2^{-k} M^T theta with M[j][i] = (-1)^popcount(gray(i)&j).
inline void append_multiplexed_rotation(Circuit& c, GateKind axis, int target,
                                        const std::vector<int>& controls,
                                        const std::vector<double>& angles) {
  if (axis != GateKind::RY && axis != GateKind::RZ)
    throw std::invalid_argument("append_multiplexed_rotation: axis must be RY or RZ");
  const std::size_t k = controls.size();
  if (angles.size() != (std::size_t(1) << k))
    throw std::invalid_argument("append_multiplexed_rotation: need 2^k angles");
  if (k == 0) {
    c.append({axis, {target}, "", angles[0]});
    return;
  }
  const std::size_t m = angles.size();
  auto gray = [](std::size_t i) { return i ^ (i >> 1); };
  std::vector<double> phi(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const int sign = __builtin_popcountll(gray(i) & j) & 1 ? -1 : 1;
      acc += sign * angles[j];
    }
    phi[i] = acc / static_cast<double>(m);
  }
  for (std::size_t i = 0; i < m; ++i) {
    c.append({axis, {target}, "", phi[i]});
    // Bit flipped between gray(i) and gray(i+1); the final step wraps to
    // gray(0) and flips the top bit, returning all controls to their state.
    const std::size_t next = (i + 1 == m) ? 0 : i + 1;
    const std::size_t diff = gray(i) ^ gray(next);
    int bit = 0;
    while (!((diff >> bit) & 1)) ++bit;
    c.cnot(controls[bit], target);
  }
}

/// Exact preparation circuit for an arbitrary normalized state: returns C
/// with C|0...0> = v (including global phase).  Qubits are disentangled last
/// to first with multiplexed ZYZ rotations; the returned circuit is the
/// inverse of that walk.  Gate count is O(2^n).
inline Circuit prepare_state(const Eigen::VectorXcd& v) {
  int n = 0;
  while ((std::int64_t(1) << n) < v.size()) ++n;
  if ((std::int64_t(1) << n) != v.size())
    throw std::invalid_argument("prepare_state: size is not a power of two");
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("prepare_state: vector is not normalized");

  Circuit disentangle(n);
  Eigen::VectorXcd work = v;
  for (int q = n - 1; q >= 0; --q) {
    const std::int64_t branches = std::int64_t(1) << q;
    std::vector<double> alphas(branches, 0.0), betas(branches, 0.0), gammas(branches, 0.0);
    for (std::int64_t p = 0; p < branches; ++p) {
      const std::int64_t i0 = (2 * p) << (n - 1 - q);
      const std::int64_t i1 = (2 * p + 1) << (n - 1 - q);
      const cplx a = work(i0), b = work(i1);
      const double r = std::sqrt(std::norm(a) + std::norm(b));
      if (r < 1e-15) continue;
      // U = [[conj(a), conj(b)], [-b, a]] / r sends (a,b) to (r,0); decompose
      // U = RZ(alpha) RY(beta) RZ(gamma) in SU(2).
      const cplx u00 = std::conj(a) / r;
      const cplx u10 = -b / r;
      const double cos_h = std::abs(u00);
      const double sin_h = std::abs(u10);
      const double beta = 2.0 * std::atan2(sin_h, cos_h);
      double alpha = 0.0, gamma = 0.0;
      if (sin_h < 1e-15) {
        alpha = -2.0 * std::arg(u00);
      } else if (cos_h < 1e-15) {
        alpha = 2.0 * std::arg(u10);
      } else {
        alpha = std::arg(u10) - std::arg(u00);
        gamma = -std::arg(u00) - std::arg(u10);
      }
      alphas[p] = alpha;
      betas[p] = beta;
      gammas[p] = gamma;
      work(i0) = r;
      work(i1) = 0.0;
    }
    // Controls listed high-to-low qubit so branch bit l matches controls[l].
    std::vector<int> controls;
    for (int cq = q - 1; cq >= 0; --cq) controls.push_back(cq);
    auto any_nonzero = [](const std::vector<double>& a) {
      for (double x : a)
        if (x != 0.0) return true;
      return false;
    };
    if (any_nonzero(gammas))
      append_multiplexed_rotation(disentangle, GateKind::RZ, q, controls, gammas);
    if (any_nonzero(betas))
      append_multiplexed_rotation(disentangle, GateKind::RY, q, controls, betas);
    if (any_nonzero(alphas))
      append_multiplexed_rotation(disentangle, GateKind::RZ, q, controls, alphas);
  }
  return disentangle.inverse();
}

}  // namespace respq
