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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "respq/pauli.hpp"

namespace respq {

/// Speed of light in Hartree atomic units.
inline constexpr double kSpeedOfLightAU = 137.035999;

/// One hartree in electron volts.
inline constexpr double kHartreePerEV = 27.211386;

inline double ev_to_hartree(double ev) { return ev / kHartreePerEV; }
inline double hartree_to_ev(double hartree) { return hartree * kHartreePerEV; }

/// Orientation-averaged response: the pointwise mean over the diagonal
/// polarizability components (typically x, y, z dipole directions).
struct IsotropicAverage {
  std::vector<cplx> chi;
  int components = 0;  // 1 means the input was passed through unaveraged
};

inline IsotropicAverage isotropic_average(const std::vector<std::vector<cplx>>& components) {
  if (components.empty())
    throw std::invalid_argument("isotropic_average: no components given");
  const std::size_t npts = components.front().size();
  for (const auto& c : components)
    if (c.size() != npts)
      throw std::invalid_argument("isotropic_average: component grids differ in length");
  IsotropicAverage out;
  out.components = static_cast<int>(components.size());
  out.chi.assign(npts, cplx(0.0, 0.0));
  for (const auto& c : components)
    for (std::size_t i = 0; i < npts; ++i) out.chi[i] += c[i] / double(components.size());
  return out;
}

/// Photoabsorption cross-section sigma(omega) = 4 pi omega Im chi(omega) / c
/// in atomic units, from the imaginary part of the (averaged) response.
inline double absorption_cross_section(double omega, double im_chi) {
  return 4.0 * M_PI * omega * im_chi / kSpeedOfLightAU;
}

/// Rigid spectral shift: every frequency moves by `shift_ev` electron volts
/// (negative values move the spectrum down).  Grid values are in hartree.
inline std::vector<double> apply_shift(const std::vector<double>& omega, double shift_ev) {
  std::vector<double> out;
  out.reserve(omega.size());
  const double delta = ev_to_hartree(shift_ev);
  for (double w : omega) out.push_back(w + delta);
  return out;
}

/// Index of the largest sample.
inline std::size_t peak_index(const std::vector<double>& y) {
  if (y.empty()) throw std::invalid_argument("peak_index: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (y[i] > y[best]) best = i;
  return best;
}

/// Full width at half maximum of a single-peaked trace, with linear
/// interpolation of the half-height crossings on both flanks.  Throws when a
/// flank never drops below half height inside the grid.
inline double full_width_half_max(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("full_width_half_max: need matching grids of at least 3 points");
  const std::size_t p = peak_index(y);
  const double half = 0.5 * y[p];
  double left = 0.0, right = 0.0;
  bool found_left = false, found_right = false;
  for (std::size_t i = p; i-- > 0;) {
    if (y[i] <= half) {
      const double t = (half - y[i]) / (y[i + 1] - y[i]);
      left = x[i] + t * (x[i + 1] - x[i]);
      found_left = true;
      break;
    }
  }
  for (std::size_t i = p + 1; i < y.size(); ++i) {
    if (y[i] <= half) {
      const double t = (half - y[i - 1]) / (y[i] - y[i - 1]);
      right = x[i - 1] + t * (x[i] - x[i - 1]);
      found_right = true;
      break;
    }
  }
  if (!found_left || !found_right)
    throw std::runtime_error("full_width_half_max: peak is not resolved inside the grid");
  return right - left;
}

}  // namespace respq
