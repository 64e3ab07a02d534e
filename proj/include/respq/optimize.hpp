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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "respq/rng.hpp"

namespace respq {

struct OptimizerSpec {
  enum class Kind { GridScan, SimplexDescent };
  Kind kind = Kind::GridScan;
  int resolution = 256;   // GridScan: points per angle over [0, 2pi)
  long max_iters = 400;   // SimplexDescent: Nelder-Mead iteration budget
  double tol = 1e-8;      // SimplexDescent: stop when cost spread < tol
  std::uint64_t seed = 0; // SimplexDescent: random starts in high dimension

  static OptimizerSpec grid(int resolution = 256) {
    OptimizerSpec s;
    s.kind = Kind::GridScan;
    s.resolution = resolution;
    return s;
  }
  static OptimizerSpec simplex(long max_iters = 400, double tol = 1e-8) {
    OptimizerSpec s;
    s.kind = Kind::SimplexDescent;
    s.max_iters = max_iters;
    s.tol = tol;
    return s;
  }
};

/// Angle-count-driven default: full grid for up to two angles, simplex
/// descent beyond that.
inline OptimizerSpec default_optimizer(int dim) {
  return dim <= 2 ? OptimizerSpec::grid(256) : OptimizerSpec::simplex(400 * std::max(dim, 1));
}

struct OptResult {
  std::vector<double> x;
  double value = 0.0;
  long evals = 0;
  bool improved = true;
  std::string note;
};

using Objective = std::function<double(const std::vector<double>&)>;

namespace detail {

struct SimplexVertex {
  std::vector<double> x;
  double f;
};

inline OptResult nelder_mead(const Objective& f, std::vector<double> start, double step,
                             long max_iters, double tol, long* evals) {
  const std::size_t d = start.size();
  std::vector<SimplexVertex> s(d + 1);
  s[0] = {start, f(start)};
  ++*evals;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> x = start;
    x[i] += step;
    s[i + 1] = {x, f(x)};
    ++*evals;
  }
  auto order = [&] {
    std::sort(s.begin(), s.end(),
              [](const SimplexVertex& a, const SimplexVertex& b) { return a.f < b.f; });
  };
  order();
  for (long it = 0; it < max_iters; ++it) {
    if (s.back().f - s.front().f < tol) break;
    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) centroid[j] += s[i].x[j] / static_cast<double>(d);
    auto combine = [&](double coef) {
      std::vector<double> x(d);
      for (std::size_t j = 0; j < d; ++j)
        x[j] = centroid[j] + coef * (centroid[j] - s.back().x[j]);
      return x;
    };
    const std::vector<double> xr = combine(1.0);
    const double fr = f(xr);
    ++*evals;
    if (fr < s.front().f) {
      const std::vector<double> xe = combine(2.0);
      const double fe = f(xe);
      ++*evals;
      s.back() = fe < fr ? SimplexVertex{xe, fe} : SimplexVertex{xr, fr};
    } else if (fr < s[d - 1].f) {
      s.back() = {xr, fr};
    } else {
      const bool outside = fr < s.back().f;
      const std::vector<double> xc = combine(outside ? 0.5 : -0.5);
      const double fc = f(xc);
      ++*evals;
      if (fc < std::min(fr, s.back().f)) {
        s.back() = {xc, fc};
      } else {
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t j = 0; j < d; ++j)
            s[i].x[j] = s[0].x[j] + 0.5 * (s[i].x[j] - s[0].x[j]);
          s[i].f = f(s[i].x);
          ++*evals;
        }
      }
    }
    order();
  }
  OptResult r;
  r.x = s.front().x;
  r.value = s.front().f;
  return r;
}

}  // namespace detail

/// Minimizes a periodic objective over [0, 2pi)^dim.
///
/// GridScan evaluates the full lattice and returns the best lattice point.
/// SimplexDescent seeds Nelder-Mead from the best points of a coarse scan
/// (deterministic lattice up to 3 angles, seeded random probes beyond).
/// `hints` are extra warm-start points evaluated alongside the scan; an
/// ansatz family with a known good region passes its canonical angles here.
inline OptResult minimize(const Objective& f, int dim, const OptimizerSpec& spec,
                          const std::vector<std::vector<double>>& hints = {}) {
  for (const auto& h : hints)
    if (static_cast<int>(h.size()) != dim)
      throw std::invalid_argument("minimize: hint dimension mismatch");
  if (dim == 0) {
    OptResult r;
    r.value = f({});
    r.evals = 1;
    return r;
  }
  const double two_pi = 2.0 * M_PI;
  if (spec.kind == OptimizerSpec::Kind::GridScan) {
    if (spec.resolution < 8)
      throw std::invalid_argument("GridScan: resolution must be at least 8 points per angle");
    double total = 1.0;
    for (int i = 0; i < dim; ++i) total *= spec.resolution;
    if (total > 2e7)
      throw std::invalid_argument("GridScan: grid too large; use SimplexDescent");
    OptResult r;
    r.x.assign(dim, 0.0);
    r.value = 0.0;
    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim, 0.0);
    bool first = true;
    double f_first = 0.0;
    while (true) {
      for (int i = 0; i < dim; ++i) x[i] = two_pi * idx[i] / spec.resolution;
      const double v = f(x);
      ++r.evals;
      if (first) f_first = v;
      if (first || v < r.value) {
        r.value = v;
        r.x = x;
        first = false;
      }
      int carry = dim - 1;
      while (carry >= 0 && ++idx[carry] == spec.resolution) idx[carry--] = 0;
      if (carry < 0) break;
    }
    for (const auto& h : hints) {
      const double v = f(h);
      ++r.evals;
      if (v < r.value) {
        r.value = v;
        r.x = h;
      }
    }
    r.improved = r.value <= f_first;
    return r;
  }

  // SimplexDescent: coarse probe stage.
  std::vector<std::pair<double, std::vector<double>>> probes;
  if (dim <= 3) {
    const int res = 8;
    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim, 0.0);
    while (true) {
      for (int i = 0; i < dim; ++i) x[i] = two_pi * idx[i] / res;
      probes.emplace_back(f(x), x);
      int carry = dim - 1;
      while (carry >= 0 && ++idx[carry] == res) idx[carry--] = 0;
      if (carry < 0) break;
    }
  } else {
    RandomStream rng(derive_seed(spec.seed, 0x51a7));
    std::vector<double> x(dim);
    probes.emplace_back(f(std::vector<double>(dim, 0.0)), std::vector<double>(dim, 0.0));
    for (int k = 1; k < 64; ++k) {
      for (int i = 0; i < dim; ++i) x[i] = two_pi * rng.uniform();
      probes.emplace_back(f(x), x);
    }
  }
  const double f_first = probes.front().first;
  for (const auto& h : hints) probes.emplace_back(f(h), h);
  long evals = static_cast<long>(probes.size());
  std::sort(probes.begin(), probes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  OptResult best;
  bool have = false;
  const int starts = std::min<std::size_t>(3, probes.size());
  for (int k = 0; k < starts; ++k) {
    OptResult r = detail::nelder_mead(f, probes[k].second, two_pi / 16.0, spec.max_iters,
                                      spec.tol, &evals);
    if (!have || r.value < best.value) {
      best = r;
      have = true;
    }
  }
  best.evals = evals;
  best.improved = best.value <= f_first;
  if (!best.improved) best.note = "no improvement beyond the initial probe point";
  return best;
}

}  // namespace respq
