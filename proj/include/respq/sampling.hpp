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
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "respq/density.hpp"
#include "respq/rng.hpp"
#include "respq/statevector.hpp"

namespace respq {

namespace detail {

// Basis-change gates bringing a Pauli word to Z form: H for X, RZ(-pi/2)
// then H for Y (phases are irrelevant for the sampled distribution).
template <typename State>
void rotate_to_z_basis(State& st, const PauliTerm& t) {
  for (int q = 0; q < t.n(); ++q) {
    if (t.word[q] == 'X') {
      st.apply({GateKind::H, {q}}, 0.0);
    } else if (t.word[q] == 'Y') {
      st.apply({GateKind::RZ, {q}}, -M_PI / 2);
      st.apply({GateKind::H, {q}}, 0.0);
    }
  }
}

inline std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i] < 0.0 ? 0.0 : p[i];
    cdf[i] = acc;
  }
  // Guard against rounding: force the last entry to cover [0,1).
  if (!cdf.empty() && cdf.back() < 1.0) cdf.back() = 1.0;
  return cdf;
}

inline double sample_parity_mean(const std::vector<double>& probs, std::int64_t mask, int n,
                                 long shots, std::uint64_t seed) {
  (void)n;
  const std::vector<double> cdf = cumulative(probs);
  RandomStream rng(seed);
  double acc = 0.0;
  for (long s = 0; s < shots; ++s) {
    const std::int64_t idx = static_cast<std::int64_t>(rng.pick(cdf));
    const int parity = __builtin_popcountll(static_cast<unsigned long long>(idx & mask)) & 1;
    acc += parity ? -1.0 : 1.0;
  }
  return acc / static_cast<double>(shots);
}

inline std::int64_t support_mask(const PauliTerm& t) {
  std::int64_t mask = 0;
  for (int q = 0; q < t.n(); ++q)
    if (t.word[q] != 'I') mask |= std::int64_t(1) << (t.n() - 1 - q);
  return mask;
}

}  // namespace detail

/// Shot-sampled estimate of <P> on a pure state.  Rotates the support of the
/// word to the Z basis, samples bitstrings, and averages the ±1 parities.
/// Unbiased; standard error is at most 1/sqrt(shots).  `readout_flip`
/// applies per-qubit classical bit-flip error to the measured distribution.
inline double sample_expect(const Statevector& s, const PauliTerm& t, long shots,
                            std::uint64_t seed,
                            const std::vector<double>& readout_flip = {}) {
  if (s.n() != t.n()) throw std::invalid_argument("sample_expect: dimension mismatch");
  if (shots <= 0) throw std::domain_error("sample_expect: shots must be positive");
  if (t.is_identity()) return 1.0;
  Statevector rot = s;
  detail::rotate_to_z_basis(rot, t);
  std::vector<double> p = probabilities(rot);
  apply_readout_flips(p, readout_flip, s.n());
  return detail::sample_parity_mean(p, detail::support_mask(t), s.n(), shots, seed);
}

/// Density-matrix overload (noisy states).
inline double sample_expect(const DensityMatrix& rho, const PauliTerm& t, long shots,
                            std::uint64_t seed,
                            const std::vector<double>& readout_flip = {}) {
  if (rho.n() != t.n()) throw std::invalid_argument("sample_expect: dimension mismatch");
  if (shots <= 0) throw std::domain_error("sample_expect: shots must be positive");
  if (t.is_identity()) return 1.0;
  DensityMatrix rot = rho;
  detail::rotate_to_z_basis(rot, t);
  std::vector<double> p = probabilities(rot);
  apply_readout_flips(p, readout_flip, rho.n());
  return detail::sample_parity_mean(p, detail::support_mask(t), rho.n(), shots, seed);
}

// ---------------------------------------------------------------------------
// Cross-term estimation.
//
// The quantity W(l,k) = <x|P_l|psi0><psi0|P_k|x> with |psi0> = U0|0> and
// |x> = U1|0> is measured by one ancilla-assisted interference circuit:
//
//   ancilla: |0> -- H --o(anti)---o------- R -- measure
//   main:    |0> -- U0 -[P_l]----[P_k]-- U1† -- measure all
//
// With amplitudes A_l = <x|P_l|psi0>, A_k = <x|P_k|psi0>, the signed
// indicator s = (±1 on the ancilla) * [main register reads all zero] has
//   E[s] = Re W(l,k)  for readout rotation R = H,
//   E[s] = -Im W(l,k) for R = X_{pi/2},
// so the estimator stays hardware-shaped: controlled Pauli words only, no
// controlled state preparation, depth ~ depth(U0) + depth(U1).

enum class CrossReadout { Real, Imag };

/// Builds the interference circuit on n+1 qubits (ancilla is qubit n).
inline Circuit cross_circuit(const Circuit& u0, const Circuit& u1, const PauliTerm& l,
                             const PauliTerm& k, CrossReadout readout) {
  if (u0.n() != u1.n()) throw std::invalid_argument("cross_circuit: width mismatch");
  const int n = u0.n();
  if (l.n() != n || k.n() != n) throw std::invalid_argument("cross_circuit: word width mismatch");
  Circuit c(n + 1);
  const int anc = n;
  c.h(anc);
  c.extend(u0);
  auto controlled_word = [&](const PauliTerm& t) {
    std::string w;
    std::vector<int> qs;
    for (int q = 0; q < n; ++q)
      if (t.word[q] != 'I') {
        w.push_back(t.word[q]);
        qs.push_back(q);
      }
    if (!w.empty()) c.cpauli(anc, w, qs);
  };
  // P_l on the ancilla-0 branch, P_k on the ancilla-1 branch.
  c.x(anc);
  controlled_word(l);
  c.x(anc);
  controlled_word(k);
  c.extend(u1.inverse());
  if (readout == CrossReadout::Real)
    c.h(anc);
  else
    c.xhalf(anc);
  return c;
}

namespace detail {

// E[s] for the interference circuit: +1 on (main=0, anc=0), -1 on
// (main=0, anc=1), 0 elsewhere.  With the ancilla as qubit n, those are
// global indices 0 and 1.
inline double cross_signed_mean_exact(const std::vector<double>& p) {
  return p[0] - p[1];
}

inline double cross_signed_mean_sampled(const std::vector<double>& p, long shots,
                                        std::uint64_t seed) {
  const std::vector<double> cdf = cumulative(p);
  RandomStream rng(seed);
  double acc = 0.0;
  for (long s = 0; s < shots; ++s) {
    const std::size_t idx = rng.pick(cdf);
    if (idx == 0)
      acc += 1.0;
    else if (idx == 1)
      acc -= 1.0;
  }
  return acc / static_cast<double>(shots);
}

inline std::vector<double> cross_distribution(const Circuit& c, const Bindings& b,
                                              const NoiseModel* noise) {
  std::vector<double> p;
  int n_total = c.n();
  if (noise == nullptr || noise->trivial()) {
    p = probabilities(run_circuit(c, b));
  } else {
    p = probabilities(run_noisy(c, b, *noise));
  }
  if (noise != nullptr && !noise->readout_flip.empty()) {
    // Configured flips cover the main register; the ancilla appends with an
    // ideal readout unless a rate is supplied for it too.
    std::vector<double> flips = noise->readout_flip;
    flips.resize(static_cast<std::size_t>(n_total), 0.0);
    apply_readout_flips(p, flips, n_total);
  }
  return p;
}

}  // namespace detail

/// Cross term W(l,k) = <x|P_l|psi0><psi0|P_k|x>.
///
/// shots == 0: exact ancilla-free evaluation from the prepared states
/// (still honoring `noise` by forming both brackets on the interference
/// circuit's distribution).  shots > 0: the sampled ancilla estimator; each
/// readout basis (real/imag) consumes `shots` samples from its own derived
/// stream.  Both modes converge to the same value as shots grow.
inline cplx estimate_cross(const Circuit& u0, const Circuit& u1, const Bindings& b,
                           const PauliTerm& l, const PauliTerm& k, long shots,
                           std::uint64_t seed, const NoiseModel* noise = nullptr) {
  if (shots == 0 && (noise == nullptr || noise->trivial())) {
    const Statevector psi0 = run_circuit(u0, b);
    const Statevector x = run_circuit(u1, b);
    return pauli_bracket(x, l, psi0) * pauli_bracket(psi0, k, x);
  }
  const Circuit cre = cross_circuit(u0, u1, l, k, CrossReadout::Real);
  const Circuit cim = cross_circuit(u0, u1, l, k, CrossReadout::Imag);
  const std::vector<double> pre = detail::cross_distribution(cre, b, noise);
  const std::vector<double> pim = detail::cross_distribution(cim, b, noise);
  double re, im;
  if (shots == 0) {
    re = detail::cross_signed_mean_exact(pre);
    im = -detail::cross_signed_mean_exact(pim);
  } else {
    if (shots < 0) throw std::domain_error("estimate_cross: shots must be non-negative");
    re = detail::cross_signed_mean_sampled(pre, shots, derive_seed(seed, 0x7e51));
    im = -detail::cross_signed_mean_sampled(pim, shots, derive_seed(seed, 0x7e52));
  }
  return {re, im};
}

}  // namespace respq
