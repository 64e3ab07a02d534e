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
#include <string>
#include <vector>

#include "respq/statevector.hpp"

namespace respq {

inline constexpr int kDensityCap = 10;

/// Representative sqrt-iSWAP processor fidelities used as named presets.
inline constexpr double kGateFidelity2Q = 0.9806;
inline constexpr double kGateFidelity4Q = 0.9651;

/// Depolarizing noise attached to gate applications plus optional classical
/// readout bit flips.  `p1` acts on the support of one-qubit gates, `p2` on
/// the full support of multi-qubit gates.  A channel with strength p replaces
/// the support with the maximally mixed state:
///   rho -> (1-p) rho + p (I/2^k) (x) tr_supp(rho),
/// implemented as the uniform twirl over all 4^k support Paulis.  At p = 1 a
/// single qubit is driven exactly to I/2.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  std::vector<double> readout_flip;  // per-qubit; empty = no readout error

  bool trivial() const {
    if (p1 != 0.0 || p2 != 0.0) return false;
    for (double f : readout_flip)
      if (f != 0.0) return false;
    return true;
  }

  static NoiseModel preset(const std::string& name) {
    NoiseModel m;
    if (name == "2q") {
      m.p2 = 1.0 - kGateFidelity2Q;
    } else if (name == "4q") {
      m.p2 = 1.0 - kGateFidelity4Q;
    } else {
      throw std::invalid_argument("NoiseModel::preset: unknown preset '" + name +
                                  "' (expected '2q' or '4q')");
    }
    return m;
  }
};

/// Mixed n-qubit state, same index convention as Statevector.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("DensityMatrix: qubit count must be positive");
    if (n > kDensityCap)
      throw std::runtime_error("DensityMatrix: qubit count exceeds cap of 10");
    const std::int64_t dim = std::int64_t(1) << n;
    r_ = Eigen::MatrixXcd::Zero(dim, dim);
    r_(0, 0) = 1.0;
  }

  static DensityMatrix from_statevector(const Statevector& s) {
    DensityMatrix d(s.n());
    d.r_ = s.vector() * s.vector().adjoint();
    return d;
  }

  int n() const { return n_; }
  std::int64_t dim() const { return r_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return r_; }
  Eigen::MatrixXcd& matrix() { return r_; }

  double trace_real() const { return r_.trace().real(); }
  double purity() const { return r_.squaredNorm(); }
  double hermiticity_defect() const { return (r_ - r_.adjoint()).cwiseAbs().maxCoeff(); }

  /// rho -> U rho U†.
  void apply(const Gate& g, double angle) {
    for (std::int64_t c = 0; c < r_.cols(); ++c)
      detail::apply_gate_kernel(r_.col(c), n_, g, angle, false);
    for (std::int64_t rw = 0; rw < r_.rows(); ++rw)
      detail::apply_gate_kernel(r_.row(rw), n_, g, angle, true);
  }

  /// Uniform depolarizing channel on `support` with strength p.
  void depolarize(const std::vector<int>& support, double p) {
    if (p == 0.0) return;
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("depolarize: probability out of [0,1]");
    const int k = static_cast<int>(support.size());
    if (k == 0) return;
    const int words = 1 << (2 * k);
    const Eigen::MatrixXcd rho0 = r_;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(r_.rows(), r_.cols());
    std::string w(k, 'I');
    for (int code = 0; code < words; ++code) {
      for (int j = 0; j < k; ++j) w[j] = "IXYZ"[(code >> (2 * j)) & 3];
      Eigen::MatrixXcd tmp = rho0;
      const detail::PauliMask pm = detail::pauli_mask(w, support, n_);
      for (std::int64_t c = 0; c < tmp.cols(); ++c)
        detail::apply_pauli_kernel(tmp.col(c), n_, pm, 0, false);
      for (std::int64_t rw = 0; rw < tmp.rows(); ++rw)
        detail::apply_pauli_kernel(tmp.row(rw), n_, pm, 0, true);
      acc += tmp;
    }
    r_ = (1.0 - p) * rho0 + (p / static_cast<double>(words)) * acc;
  }

 private:
  int n_;
  Eigen::MatrixXcd r_;
};

/// Runs `c` as a noisy circuit: each gate is followed by a depolarizing
/// channel on its support (p1 for one-qubit gates, p2 otherwise).  Controlled
/// Pauli words count as multi-qubit gates over control plus word support.
inline DensityMatrix run_noisy(const Circuit& c, const Bindings& b, const NoiseModel& nm) {
  DensityMatrix rho(c.n());
  for (const auto& g : c.gates()) {
    rho.apply(g, c.resolve_angle(g, b));
    const double p = (g.targets.size() == 1) ? nm.p1 : nm.p2;
    if (p != 0.0) rho.depolarize(g.targets, p);
  }
  if (std::abs(rho.trace_real() - 1.0) > 1e-10)
    throw std::runtime_error("run_noisy: trace drifted beyond 1e-10");
  return rho;
}

/// tr(rho O).  Each word touches one skew diagonal of rho.
inline cplx expect(const DensityMatrix& rho, const PauliSum& o) {
  if (rho.n() != o.n()) throw std::invalid_argument("expect: dimension mismatch");
  std::vector<int> qs(o.n());
  for (int q = 0; q < o.n(); ++q) qs[q] = q;
  cplx acc(0.0, 0.0);
  const auto& m = rho.matrix();
  for (const auto& [w, coeff] : o.terms()) {
    const detail::PauliMask pm = detail::pauli_mask(w, qs, o.n());
    cplx t(0.0, 0.0);
    for (std::int64_t i = 0; i < m.rows(); ++i)
      t += m(i, i ^ pm.flip) * detail::pauli_phase(pm, i);
    acc += coeff * t;
  }
  return acc;
}

/// Diagonal of rho in the computational basis.
inline std::vector<double> probabilities(const DensityMatrix& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.dim()));
  for (std::int64_t i = 0; i < rho.dim(); ++i) p[i] = rho.matrix()(i, i).real();
  return p;
}

}  // namespace respq
