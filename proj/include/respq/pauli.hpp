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
#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace respq {

using cplx = std::complex<double>;

/// Coefficients with magnitude below this are dropped after arithmetic.
inline constexpr double kCoeffTol = 1e-12;

/// Default qubit-count cap for dense materialization (2^n x 2^n matrices).
inline constexpr int kDenseCap = 14;

/// A single Pauli word such as "XIZ".  One character per qubit drawn from
/// {I, X, Y, Z}; qubit 0 is the leftmost character and the leftmost tensor
/// factor (most significant bit of a basis-state index).
struct PauliTerm {
  std::string word;

  PauliTerm() = default;
  explicit PauliTerm(std::string w) : word(std::move(w)) { check(word); }

  int n() const { return static_cast<int>(word.size()); }

  bool is_identity() const {
    return word.find_first_not_of('I') == std::string::npos;
  }

  /// Number of non-identity positions.
  int weight() const {
    int w = 0;
    for (char c : word)
      if (c != 'I') ++w;
    return w;
  }

  static PauliTerm identity(int n) { return PauliTerm(std::string(n, 'I')); }

  /// Single-qubit operator `op` on qubit `q`, identity elsewhere.
  static PauliTerm single(int n, int q, char op) {
    if (q < 0 || q >= n) throw std::invalid_argument("PauliTerm: qubit index out of range");
    std::string w(n, 'I');
    w[q] = op;
    return PauliTerm(std::move(w));
  }

  static void check(const std::string& w) {
    if (w.empty()) throw std::invalid_argument("PauliTerm: empty word");
    for (char c : w)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw std::invalid_argument(std::string("PauliTerm: invalid letter '") + c + "'");
  }

  bool operator==(const PauliTerm& o) const { return word == o.word; }
  bool operator<(const PauliTerm& o) const { return word < o.word; }
};

namespace detail {

// Single-qubit products. Letters are encoded I=0, X=1, Y=2, Z=3; the product
// of two distinct non-identity letters is the third (a XOR b), with phase +i
// for cyclic order X->Y->Z->X and -i otherwise.
inline int pauli_code(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw std::invalid_argument("pauli_code: invalid letter");
  }
}

inline char pauli_char(int code) { return "IXYZ"[code]; }

inline void single_mul(char a, char b, cplx& phase, char& out) {
  const int ca = pauli_code(a), cb = pauli_code(b);
  if (ca == 0) { out = b; return; }
  if (cb == 0) { out = a; return; }
  if (ca == cb) { out = 'I'; return; }
  out = pauli_char(ca ^ cb);
  // Cyclic pairs (X,Y), (Y,Z), (Z,X) pick up +i; the reversed order -i.
  const bool cyclic = (ca == 1 && cb == 2) || (ca == 2 && cb == 3) || (ca == 3 && cb == 1);
  phase *= cyclic ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
}

}  // namespace detail

/// Product of two Pauli words: a * b = phase * word with phase in {±1, ±i}.
inline std::pair<cplx, PauliTerm> pauli_mul(const PauliTerm& a, const PauliTerm& b) {
  if (a.n() != b.n()) throw std::invalid_argument("pauli_mul: dimension mismatch");
  cplx phase(1.0, 0.0);
  std::string w(a.word.size(), 'I');
  for (std::size_t q = 0; q < a.word.size(); ++q)
    detail::single_mul(a.word[q], b.word[q], phase, w[q]);
  return {phase, PauliTerm(std::move(w))};
}

/// A complex-weighted sum of Pauli words over a fixed qubit count.
///
/// Terms are stored keyed by word in lexicographic order, so iteration order
/// (and every derived artifact: dense matrices, file output, expectation
/// sums) is deterministic.  Coefficients below kCoeffTol are pruned.
class PauliSum {
 public:
  explicit PauliSum(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("PauliSum: qubit count must be positive");
  }

  static PauliSum identity(int n, cplx c = cplx(1.0, 0.0)) {
    PauliSum s(n);
    s.add(PauliTerm::identity(n), c);
    return s;
  }

  static PauliSum from_term(const PauliTerm& t, cplx c = cplx(1.0, 0.0)) {
    PauliSum s(t.n());
    s.add(t, c);
    return s;
  }

  int n() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  const std::map<std::string, cplx>& terms() const { return terms_; }

  cplx coefficient(const PauliTerm& t) const {
    auto it = terms_.find(t.word);
    return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
  }

  void add(const PauliTerm& t, cplx c) {
    if (t.n() != n_) throw std::invalid_argument("PauliSum::add: dimension mismatch");
    auto it = terms_.find(t.word);
    if (it == terms_.end()) {
      if (std::abs(c) >= kCoeffTol) terms_.emplace(t.word, c);
    } else {
      it->second += c;
      if (std::abs(it->second) < kCoeffTol) terms_.erase(it);
    }
  }

  void add(const std::string& word, cplx c) { add(PauliTerm(word), c); }

  PauliSum& operator+=(const PauliSum& o) {
    if (o.n_ != n_) throw std::invalid_argument("PauliSum: dimension mismatch");
    for (const auto& [w, c] : o.terms_) add(PauliTerm(w), c);
    return *this;
  }

  PauliSum& operator-=(const PauliSum& o) {
    if (o.n_ != n_) throw std::invalid_argument("PauliSum: dimension mismatch");
    for (const auto& [w, c] : o.terms_) add(PauliTerm(w), -c);
    return *this;
  }

  PauliSum& operator*=(cplx s) {
    std::map<std::string, cplx> out;
    for (const auto& [w, c] : terms_) {
      const cplx v = c * s;
      if (std::abs(v) >= kCoeffTol) out.emplace(w, v);
    }
    terms_ = std::move(out);
    return *this;
  }

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { a += b; return a; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { a -= b; return a; }
  friend PauliSum operator*(PauliSum a, cplx s) { a *= s; return a; }
  friend PauliSum operator*(cplx s, PauliSum a) { a *= s; return a; }

  /// Operator product expanded term by term through pauli_mul.
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("PauliSum: dimension mismatch");
    PauliSum out(a.n_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        auto [phase, w] = pauli_mul(PauliTerm(wa), PauliTerm(wb));
        out.add(w, phase * ca * cb);
      }
    return out;
  }

  /// Hermitian conjugate: Pauli words are self-adjoint, so only coefficients
  /// conjugate.
  PauliSum adjoint() const {
    PauliSum out(n_);
    for (const auto& [w, c] : terms_) out.add(PauliTerm(w), std::conj(c));
    return out;
  }

  bool is_hermitian(double tol = 1e-12) const {
    for (const auto& [w, c] : terms_)
      if (std::abs(c.imag()) > tol) return false;
    return true;
  }

  /// Dense 2^n x 2^n matrix.  Each word contributes one nonzero per column:
  /// W|c> = phase(c) |c ^ flip>, with flips from X/Y letters and phases from
  /// Y/Z letters.
  Eigen::MatrixXcd to_dense(int cap = kDenseCap) const {
    if (n_ > cap)
      throw std::runtime_error("PauliSum::to_dense: qubit count exceeds dense cap");
    const std::int64_t dim = std::int64_t(1) << n_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [w, coeff] : terms_) {
      std::int64_t flip = 0;
      for (int q = 0; q < n_; ++q)
        if (w[q] == 'X' || w[q] == 'Y') flip |= std::int64_t(1) << (n_ - 1 - q);
      for (std::int64_t col = 0; col < dim; ++col) {
        cplx phase(1.0, 0.0);
        for (int q = 0; q < n_; ++q) {
          const int bit = (col >> (n_ - 1 - q)) & 1;
          if (w[q] == 'Z' && bit) phase = -phase;
          if (w[q] == 'Y') phase *= bit ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
        }
        m(col ^ flip, col) += coeff * phase;
      }
    }
    return m;
  }

 private:
  int n_;
  std::map<std::string, cplx> terms_;
};

inline PauliSum adjoint(const PauliSum& a) { return a.adjoint(); }
inline PauliSum sum_mul(const PauliSum& a, const PauliSum& b) { return a * b; }

// ---------------------------------------------------------------------------
// Fermionic operators and the Jordan-Wigner mapping.

/// One ladder operator: creation (dagger) or annihilation on a mode.
struct FermionOp {
  int mode = 0;
  bool creation = false;
};

/// An ordered product of ladder operators with a complex coefficient, e.g.
/// c * a†_p a_q.
struct FermionTerm {
  std::vector<FermionOp> ops;
  cplx coefficient{1.0, 0.0};
};

/// Jordan-Wigner transform.  Mode p maps to
///   a_p  -> Z_0 .. Z_{p-1} (X_p + iY_p)/2,
///   a†_p -> Z_0 .. Z_{p-1} (X_p - iY_p)/2,
/// so occupation n_p = a†_p a_p becomes (I - Z_p)/2.
inline PauliSum jordan_wigner(const std::vector<FermionTerm>& terms, int n_modes) {
  if (n_modes <= 0) throw std::invalid_argument("jordan_wigner: mode count must be positive");
  PauliSum out(n_modes);
  for (const auto& term : terms) {
    PauliSum acc = PauliSum::identity(n_modes, term.coefficient);
    for (const auto& op : term.ops) {
      if (op.mode < 0 || op.mode >= n_modes)
        throw std::invalid_argument("jordan_wigner: mode index out of range");
      std::string zx(n_modes, 'I'), zy(n_modes, 'I');
      for (int j = 0; j < op.mode; ++j) { zx[j] = 'Z'; zy[j] = 'Z'; }
      zx[op.mode] = 'X';
      zy[op.mode] = 'Y';
      PauliSum ladder(n_modes);
      ladder.add(PauliTerm(zx), cplx(0.5, 0.0));
      ladder.add(PauliTerm(zy), op.creation ? cplx(0.0, -0.5) : cplx(0.0, 0.5));
      acc = acc * ladder;
    }
    out += acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format: one term per line as "<re> <im> <word>".  '#' starts a
// comment; blank lines are skipped; every word must have the same length.

inline PauliSum parse_pauli_text(std::istream& in, const std::string& origin = "<stream>") {
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::pair<cplx, std::string>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re, im;
    std::string word;
    if (!(ls >> re)) {
      // Blank or comment-only line.
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok)
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": expected '<re> <im> <word>'");
      continue;
    }
    if (!(ls >> im >> word))
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected '<re> <im> <word>'");
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": trailing content '" + extra + "'");
    try {
      PauliTerm::check(word);
    } catch (const std::exception& e) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (n < 0) n = static_cast<int>(word.size());
    if (static_cast<int>(word.size()) != n)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": word length differs from previous terms");
    rows.emplace_back(cplx(re, im), word);
  }
  if (n < 0) throw std::runtime_error(origin + ": no terms found");
  PauliSum s(n);
  for (auto& [c, w] : rows) s.add(PauliTerm(w), c);
  return s;
}

inline PauliSum read_pauli_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open operator file: " + path);
  return parse_pauli_text(in, path);
}

inline void write_pauli_text(std::ostream& out, const PauliSum& s) {
  char buf[128];
  for (const auto& [w, c] : s.terms()) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %s\n", c.real(), c.imag(), w.c_str());
    out << buf;
  }
}

inline void write_pauli_file(const std::string& path, const PauliSum& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  write_pauli_text(out, s);
}

}  // namespace respq
