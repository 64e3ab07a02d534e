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

// Independent dense-matrix reference implementations used by the tests.
// Everything here is built from first principles (explicit 2x2 matrices and
// Kronecker products) so library results are checked against a second,
// structurally different code path.

#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "respq/pauli.hpp"
#include "respq/rng.hpp"

namespace testref {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli1(char c) {
  Mat m(2, 2);
  const cplx i(0.0, 1.0);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli1: bad letter");
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// Dense matrix of a Pauli word with qubit 0 as the leftmost (most
/// significant) tensor factor.
inline Mat dense_word(const std::string& word) {
  Mat m = pauli1(word.empty() ? 'I' : word[0]);
  for (std::size_t q = 1; q < word.size(); ++q) m = kron(m, pauli1(word[q]));
  return m;
}

inline Mat dense_sum(const respq::PauliSum& s, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [word, coeff] : s.terms()) m += coeff * dense_word(word);
  return m;
}

inline std::string random_word(respq::RandomStream& rng, int n,
                               bool allow_identity = false) {
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::string w;
  do {
    w.clear();
    for (int q = 0; q < n; ++q)
      w.push_back(letters[rng.next_u64() & 3u]);
  } while (!allow_identity && w.find_first_not_of('I') == std::string::npos);
  return w;
}

/// Random Hermitian operator: real coefficients on random words.
inline respq::PauliSum random_hermitian(respq::RandomStream& rng, int n,
                                        int num_terms) {
  respq::PauliSum s(n);
  for (int t = 0; t < num_terms; ++t)
    s.add(random_word(rng, n), cplx(2.0 * rng.uniform() - 1.0, 0.0));
  return s;
}

/// Random sum with complex coefficients (generally non-Hermitian).
inline respq::PauliSum random_sum(respq::RandomStream& rng, int n,
                                  int num_terms) {
  respq::PauliSum s(n);
  for (int t = 0; t < num_terms; ++t)
    s.add(random_word(rng, n, true),
          cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0));
  return s;
}

inline Vec random_state(respq::RandomStream& rng, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Vec v(dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    v[k] = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  v.normalize();
  return v;
}

}  // namespace testref
