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

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace respq {

/// Splittable pseudo-random stream built on the SplitMix64 update.
///
/// Every stochastic estimator in the library owns an independent stream
/// derived from a root seed plus integer tags, so results are reproducible
/// regardless of evaluation order or thread count.  Uniform doubles are
/// produced directly from the top 53 bits, which keeps byte-identical output
/// across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Draws an index from the cumulative distribution `cdf` (nondecreasing,
  /// last entry ~1).  Values beyond the last entry clamp to the final index.
  std::size_t pick(const std::vector<double>& cdf) {
    if (cdf.empty()) throw std::invalid_argument("pick: empty distribution");
    const double u = uniform();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  std::uint64_t state_;
};

/// Mixes a root seed with stream tags into a child seed.  Used to hand each
/// frequency point and each estimator its own decorrelated stream.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag_a,
                                 std::uint64_t tag_b = 0,
                                 std::uint64_t tag_c = 0) {
  RandomStream s(root ^ 0x6a09e667f3bcc909ULL);
  std::uint64_t x = s.next_u64();
  x ^= tag_a * 0x9e3779b97f4a7c15ULL;
  RandomStream s2(x);
  x = s2.next_u64() ^ (tag_b * 0xbf58476d1ce4e5b9ULL);
  RandomStream s3(x);
  return s3.next_u64() ^ (tag_c * 0x94d049bb133111ebULL);
}

}  // namespace respq
