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
#include <string>

#include "respq/density.hpp"
#include "respq/pauli.hpp"
#include "respq/sampling.hpp"
#include "respq/statevector.hpp"

namespace respq {

/// Projected weight below which the mitigated ratio is considered undefined.
inline constexpr double kSectorDepletionTol = 1e-6;

/// Commutator norm above which an observable is rejected for mitigation.
inline constexpr double kCommutatorTol = 1e-10;

/// Largest Pauli coefficient of [a, b].  Computed algebraically, so it is
/// exact and does not require building dense matrices.
inline double commutator_defect(const PauliSum& a, const PauliSum& b) {
  PauliSum d = a * b;
  d -= b * a;
  double worst = 0.0;
  for (const auto& [word, coeff] : d.terms()) worst = std::max(worst, std::abs(coeff));
  return worst;
}

/// Checks that p is a Hermitian idempotent (p^2 = p, p = p†) to within tol.
/// Throws std::invalid_argument describing the violated property otherwise.
inline void validate_projector(const PauliSum& p, double tol = 1e-10) {
  if (!p.is_hermitian(tol))
    throw std::invalid_argument("projector validation failed: operator is not Hermitian");
  PauliSum d = p * p;
  d -= p;
  for (const auto& [word, coeff] : d.terms())
    if (std::abs(coeff) > tol)
      throw std::invalid_argument("projector validation failed: operator is not idempotent");
}

/// (I + sector * Z...Z) / 2, projecting onto global Z-parity `sector` (+1/-1).
inline PauliSum parity_projector(int n, int sector) {
  if (sector != 1 && sector != -1)
    throw std::invalid_argument("parity_projector: sector must be +1 or -1");
  PauliSum p(n);
  p.add(std::string(n, 'I'), 0.5);
  p.add(std::string(n, 'Z'), 0.5 * sector);
  return p;
}

/// Projector onto the span of computational basis states with exactly
/// `particles` ones, expanded in Z-words.  The coefficient of a Z-word on a
/// qubit subset S is 2^-n * sum over admissible bitstrings of the parity of
/// the string restricted to S; that sum depends only on |S| and is
/// sum_j (-1)^j C(|S|, j) C(n - |S|, particles - j).
inline PauliSum number_projector(int n, int particles) {
  if (particles < 0 || particles > n)
    throw std::invalid_argument("number_projector: particle count outside [0, n]");
  auto choose = [](int a, int b) -> double {
    if (b < 0 || b > a) return 0.0;
    double r = 1.0;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  std::vector<double> weight_by_size(n + 1, 0.0);
  for (int s = 0; s <= n; ++s) {
    double acc = 0.0;
    for (int j = 0; j <= s; ++j)
      acc += (j % 2 == 0 ? 1.0 : -1.0) * choose(s, j) * choose(n - s, particles - j);
    weight_by_size[s] = acc / std::pow(2.0, n);
  }
  PauliSum p(n);
  for (std::uint64_t subset = 0; subset < (1ull << n); ++subset) {
    std::string word(n, 'I');
    int size = 0;
    for (int q = 0; q < n; ++q)
      if (subset >> q & 1ull) {
        word[q] = 'Z';
        ++size;
      }
    p.add(word, weight_by_size[size]);
  }
  return p;
}

/// Symmetry-projected expectation <O P> / <P>, the ratio estimator that
/// discards the part of the state outside the symmetry sector.  Requires
/// [O, P] = 0 so that the projected numerator is well defined; throws if the
/// commutator defect exceeds kCommutatorTol or if the projected weight falls
/// below kSectorDepletionTol (the state has decayed out of the sector and no
/// meaningful ratio exists).
template <class State>
double mitigated_expect(const State& state, const PauliSum& obs, const PauliSum& proj) {
  const double defect = commutator_defect(obs, proj);
  if (defect > kCommutatorTol)
    throw std::invalid_argument(
        "mitigated_expect: observable does not commute with the projector (defect " +
        std::to_string(defect) + ")");
  const double den = std::real(expect(state, proj));
  if (den < kSectorDepletionTol)
    throw std::runtime_error("mitigated_expect: symmetry sector depleted (projected weight " +
                             std::to_string(den) + " below 1e-6)");
  const double num = std::real(expect(state, obs * proj));
  return num / den;
}

/// Shot-based version of the ratio estimator: numerator and denominator are
/// both measured term-by-term with derived seeds, then divided.  The same
/// commutation and depletion guards apply; depletion is judged on the
/// sampled denominator.
template <class State>
double mitigated_sample_expect(const State& state, const PauliSum& obs, const PauliSum& proj,
                               long shots, std::uint64_t seed,
                               const std::vector<double>& readout_flip = {}) {
  const double defect = commutator_defect(obs, proj);
  if (defect > kCommutatorTol)
    throw std::invalid_argument(
        "mitigated_sample_expect: observable does not commute with the projector (defect " +
        std::to_string(defect) + ")");
  const PauliSum op = obs * proj;
  double num = 0.0;
  double den = 0.0;
  std::uint64_t tag = 0;
  for (const auto& [word, coeff] : op.terms()) {
    num += std::real(coeff) * sample_expect(state, PauliTerm(word), shots,
                                            derive_seed(seed, 0x9a01, tag++), readout_flip);
  }
  tag = 0;
  for (const auto& [word, coeff] : proj.terms()) {
    den += std::real(coeff) * sample_expect(state, PauliTerm(word), shots,
                                            derive_seed(seed, 0x9a02, tag++), readout_flip);
  }
  if (den < kSectorDepletionTol)
    throw std::runtime_error(
        "mitigated_sample_expect: symmetry sector depleted (projected weight " +
        std::to_string(den) + " below 1e-6)");
  return num / den;
}

}  // namespace respq
