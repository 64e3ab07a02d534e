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
#include <iostream>
#include <stdexcept>
#include <vector>

#include "respq/pauli.hpp"
#include "respq/statevector.hpp"

namespace respq {

/// Dense spectral data: energies ascending, eigenvectors as matrix columns.
struct EigenDecomposition {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd states;
};

/// Full diagonalization of a Hermitian Pauli sum.
inline EigenDecomposition exact_diag(const PauliSum& h) {
  if (!h.is_hermitian(1e-10))
    throw std::invalid_argument("exact_diag: operator is not Hermitian");
  const Eigen::MatrixXcd m = h.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("exact_diag: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Sum-over-states response function at one frequency:
///   chi(w) = sum_m |<m|V|0>|^2 / (E_m - E_0 - w - i*gamma),
/// including the m = 0 term.  Im chi >= 0 for gamma > 0.
inline cplx chi_sos(const EigenDecomposition& eig, const PauliSum& v, double omega,
                    double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("chi_sos: gamma must be positive");
  const Eigen::MatrixXcd vd = v.to_dense();
  const Eigen::VectorXcd ground = eig.states.col(0);
  const Eigen::VectorXcd vpsi = vd * ground;
  const double e0 = eig.energies(0);
  cplx acc(0.0, 0.0);
  for (Eigen::Index m = 0; m < eig.energies.size(); ++m) {
    const cplx t = eig.states.col(m).dot(vpsi);  // <m|V|0>
    const double w2 = std::norm(t);
    if (w2 == 0.0) continue;
    acc += w2 / cplx(eig.energies(m) - e0 - omega, -gamma);
  }
  return acc;
}

/// Linear-solve route: chi(w) = <psi0|V† y> with (H0 - E0 - w - i*gamma) y =
/// V|psi0>.  Independent of diagonalization.  Throws if the shifted system
/// looks numerically singular (only possible for gamma ~ 0 at machine scale).
inline cplx chi_solve(const PauliSum& h0, double e0, const PauliSum& v,
                      const Statevector& ground, double omega, double gamma) {
  if (gamma <= 0.0) throw std::invalid_argument("chi_solve: gamma must be positive");
  if (h0.n() != v.n() || h0.n() != ground.n())
    throw std::invalid_argument("chi_solve: dimension mismatch");
  const Eigen::MatrixXcd hd = h0.to_dense();
  const Eigen::MatrixXcd vd = v.to_dense();
  const Eigen::Index dim = hd.rows();
  Eigen::MatrixXcd a = hd;
  a.diagonal().array() -= cplx(e0 + omega, gamma);
  const Eigen::VectorXcd rhs = vd * ground.vector();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::VectorXcd y = lu.solve(rhs);
  const double resid = (a * y - rhs).norm();
  const double scale = rhs.norm();
  if (scale > 0.0 && resid > 1e-8 * scale) {
    // Residual growth signals conditioning trouble; report a cheap bound.
    const double cond_bound = a.norm() / gamma;
    throw std::runtime_error("chi_solve: ill-conditioned shifted system, condition bound ~" +
                             std::to_string(cond_bound));
  }
  (void)dim;
  return (vd * ground.vector()).dot(y);  // <V psi0 | y> = <psi0|V† y>
}

/// Time-domain route.  The damped autocorrelation
///   C(t) = <psi0| V† e^{-i (H0 - E0) t} V |psi0> = sum_m |t_m|^2 e^{-i w_m0 t}
/// is propagated spectrally on the grid t_j = j*dt and transformed by
///   chi(w) = i * int_0^tmax e^{i (w + i*gamma) t} C(t) dt,
/// which reproduces the sum-over-states form mode by mode as tmax grows
/// (each mode integrates to 1/(w_m0 - w - i*gamma)).  The quadrature is the
/// composite trapezoid rule plus the h^2 Euler-Maclaurin endpoint correction
/// evaluated exactly from the spectral data, leaving an O(h^4) error.
///
/// Errors: throws on a Nyquist violation (dt * max|w_m0| >= pi); warns on
/// stderr when the damping window is too short (e^{-gamma tmax} > 1e-8).
inline std::vector<cplx> chi_timedomain(const PauliSum& h0, double e0, const PauliSum& v,
                                        const Statevector& ground,
                                        const std::vector<double>& omega_grid, double gamma,
                                        double t_max, double dt) {
  if (gamma <= 0.0) throw std::invalid_argument("chi_timedomain: gamma must be positive");
  if (dt <= 0.0 || t_max <= 0.0)
    throw std::invalid_argument("chi_timedomain: dt and t_max must be positive");
  const EigenDecomposition eig = exact_diag(h0);
  const Eigen::MatrixXcd vd = v.to_dense();
  const Eigen::VectorXcd vpsi = vd * ground.vector();

  std::vector<double> freq;
  std::vector<double> weight;
  for (Eigen::Index m = 0; m < eig.energies.size(); ++m) {
    const cplx t = eig.states.col(m).dot(vpsi);
    const double w2 = std::norm(t);
    if (w2 == 0.0) continue;
    freq.push_back(eig.energies(m) - e0);
    weight.push_back(w2);
  }
  double wmax = 0.0;
  for (double f : freq) wmax = std::max(wmax, std::abs(f));
  if (dt * wmax >= M_PI)
    throw std::runtime_error("chi_timedomain: Nyquist violation, dt too coarse for the spectrum");
  if (std::exp(-gamma * t_max) > 1e-8)
    std::cerr << "chi_timedomain: warning: e^{-gamma t_max} = "
              << std::exp(-gamma * t_max) << " > 1e-8, truncation error may dominate\n";

  const long steps = static_cast<long>(std::llround(t_max / dt));
  std::vector<cplx> corr(steps + 1);
  for (long j = 0; j <= steps; ++j) {
    const double t = j * dt;
    cplx c(0.0, 0.0);
    for (std::size_t m = 0; m < freq.size(); ++m)
      c += weight[m] * std::exp(cplx(0.0, -freq[m] * t));
    corr[j] = c;
  }

  std::vector<cplx> chi(omega_grid.size());
  for (std::size_t wi = 0; wi < omega_grid.size(); ++wi) {
    const double omega = omega_grid[wi];
    cplx integral(0.0, 0.0);
    for (long j = 0; j <= steps; ++j) {
      const double t = j * dt;
      const cplx g = std::exp(cplx(-gamma * t, omega * t)) * corr[j];
      integral += (j == 0 || j == steps) ? 0.5 * g : g;
    }
    integral *= dt;
    // Endpoint derivative correction: g'(t) = sum_m w_m lam_m e^{lam_m t}
    // with lam_m = i(omega - w_m) - gamma.
    cplx g0(0.0, 0.0), gT(0.0, 0.0);
    for (std::size_t m = 0; m < freq.size(); ++m) {
      const cplx lam(-gamma, omega - freq[m]);
      g0 += weight[m] * lam;
      gT += weight[m] * lam * std::exp(lam * t_max);
    }
    integral -= (dt * dt / 12.0) * (gT - g0);
    chi[wi] = cplx(0.0, 1.0) * integral;
  }
  return chi;
}

}  // namespace respq
