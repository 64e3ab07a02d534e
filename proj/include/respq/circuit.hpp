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
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "respq/pauli.hpp"

namespace respq {

enum class GateKind {
  X,
  H,
  XHalf,          // rotation about X by +pi/2
  RY,
  RZ,
  CNOT,           // targets[0] control, targets[1] target
  CZ,
  SqrtISwap,      // identity on |00>,|11>; [[1,i],[i,1]]/sqrt2 on {|01>,|10>}
  ControlledPauli // targets[0] control; applies `word` to the remaining targets
};

struct Gate {
  GateKind kind;
  std::vector<int> targets;
  std::string param;   // named angle; empty means the fixed `angle` is used
  double angle = 0.0;
  bool dagger = false; // apply the adjoint (internal use, e.g. inverted circuits)
  std::string word;    // ControlledPauli only

  bool parameterized() const { return !param.empty(); }
};

namespace detail {

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::XHalf: return "XHALF";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SqrtISwap: return "SQRTISWAP";
    case GateKind::ControlledPauli: return "CPAULI";
  }
  return "?";
}

inline int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::XHalf:
    case GateKind::RY:
    case GateKind::RZ:
      return 1;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SqrtISwap:
      return 2;
    case GateKind::ControlledPauli:
      return -1;  // variable
  }
  return -1;
}

}  // namespace detail

/// Single-qubit matrix for `g` with the angle already resolved.
inline Eigen::Matrix2cd gate_matrix_1q(const Gate& g, double angle) {
  using std::cos;
  using std::sin;
  Eigen::Matrix2cd m;
  const cplx i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::H:
      m << 1, 1, 1, -1;
      m /= std::sqrt(2.0);
      break;
    case GateKind::XHalf: {
      const double c = std::sqrt(0.5);
      m << c, -i * c, -i * c, c;
      break;
    }
    case GateKind::RY:
      m << cos(angle / 2), -sin(angle / 2), sin(angle / 2), cos(angle / 2);
      break;
    case GateKind::RZ:
      m << std::exp(-i * (angle / 2)), 0, 0, std::exp(i * (angle / 2));
      break;
    default:
      throw std::logic_error("gate_matrix_1q: not a single-qubit gate");
  }
  // Inverted rotations already arrive with their resolved angle negated, so
  // the explicit adjoint covers only the fixed gates.
  if (g.dagger && g.kind != GateKind::RY && g.kind != GateKind::RZ)
    m = m.adjoint().eval();
  return m;
}

/// Two-qubit matrix in the basis |t0 t1> = {00, 01, 10, 11}.
inline Eigen::Matrix4cd gate_matrix_2q(const Gate& g) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  const cplx i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::CNOT:
      m.setZero();
      m(0, 0) = m(1, 1) = 1;
      m(2, 3) = m(3, 2) = 1;
      break;
    case GateKind::CZ:
      m(3, 3) = -1;
      break;
    case GateKind::SqrtISwap: {
      const double c = std::sqrt(0.5);
      m(1, 1) = c;
      m(1, 2) = i * c;
      m(2, 1) = i * c;
      m(2, 2) = c;
      break;
    }
    default:
      throw std::logic_error("gate_matrix_2q: not a fixed two-qubit gate");
  }
  if (g.dagger) m = m.adjoint().eval();
  return m;
}

using Bindings = std::map<std::string, double>;

/// A gate list over n qubits with named angle parameters.
///
/// Parameters live in an ordered table; binding happens at execution time.
/// The order of first appearance defines the canonical parameter vector used
/// by the optimizers.
class Circuit {
 public:
  explicit Circuit(int n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("Circuit: qubit count must be positive");
  }

  int n() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::string>& parameters() const { return params_; }

  void append(Gate g) {
    const int arity = detail::gate_arity(g.kind);
    if (arity > 0 && static_cast<int>(g.targets.size()) != arity)
      throw std::invalid_argument("Circuit::append: wrong target count");
    if (g.kind == GateKind::ControlledPauli) {
      if (g.targets.size() != g.word.size() + 1)
        throw std::invalid_argument("Circuit::append: controlled word/target mismatch");
      PauliTerm::check(g.word.empty() ? std::string("I") : g.word);
    }
    std::vector<int> seen;
    for (int t : g.targets) {
      if (t < 0 || t >= n_)
        throw std::invalid_argument("Circuit::append: target index out of range");
      if (std::find(seen.begin(), seen.end(), t) != seen.end())
        throw std::invalid_argument("Circuit::append: duplicate target index");
      seen.push_back(t);
    }
    if (g.parameterized() &&
        std::find(params_.begin(), params_.end(), g.param) == params_.end())
      params_.push_back(g.param);
    gates_.push_back(std::move(g));
  }

  void x(int q) { append({GateKind::X, {q}}); }
  void h(int q) { append({GateKind::H, {q}}); }
  void xhalf(int q) { append({GateKind::XHalf, {q}}); }
  void ry(int q, double angle) { append({GateKind::RY, {q}, "", angle}); }
  void ry(int q, const std::string& name) { append({GateKind::RY, {q}, name}); }
  void rz(int q, double angle) { append({GateKind::RZ, {q}, "", angle}); }
  void rz(int q, const std::string& name) { append({GateKind::RZ, {q}, name}); }
  void cnot(int c, int t) { append({GateKind::CNOT, {c, t}}); }
  void cz(int a, int b) { append({GateKind::CZ, {a, b}}); }
  void sqrt_iswap(int a, int b) { append({GateKind::SqrtISwap, {a, b}}); }

  /// Controlled Pauli word: `word[j]` acts on `qubits[j]` when `control` is 1.
  void cpauli(int control, const std::string& word, const std::vector<int>& qubits) {
    Gate g{GateKind::ControlledPauli, {}, "", 0.0, false, word};
    g.targets.push_back(control);
    g.targets.insert(g.targets.end(), qubits.begin(), qubits.end());
    append(std::move(g));
  }

  /// Appends all gates of `other` (same width required).
  void extend(const Circuit& other) {
    if (other.n_ > n_) throw std::invalid_argument("Circuit::extend: width mismatch");
    for (const auto& g : other.gates_) append(g);
  }

  /// The inverse circuit: gates reversed, each replaced by its adjoint.
  /// Parameterized gates keep their names; their angles are negated at
  /// execution through the dagger flag.
  Circuit inverse() const {
    Circuit inv(n_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      Gate g = *it;
      g.dagger = !g.dagger;
      inv.append(std::move(g));
    }
    return inv;
  }

  double resolve_angle(const Gate& g, const Bindings& b) const {
    double a = g.angle;
    if (g.parameterized()) {
      auto it = b.find(g.param);
      if (it == b.end())
        throw std::runtime_error("unbound circuit parameter: " + g.param);
      a = it->second;
    }
    return g.dagger ? -a : a;
  }

  /// One line per gate: "KIND target... [angle|name]"; inverted gates carry a
  /// "DAG" prefix.  Debug/diagnostic format.
  std::string dump() const {
    std::ostringstream os;
    for (const auto& g : gates_) {
      if (g.dagger) os << "DAG ";
      os << detail::gate_name(g.kind);
      if (g.kind == GateKind::ControlledPauli) os << ' ' << g.targets[0] << ' ' << g.word;
      for (std::size_t j = (g.kind == GateKind::ControlledPauli ? 1 : 0); j < g.targets.size(); ++j)
        os << ' ' << g.targets[j];
      if (g.kind == GateKind::RY || g.kind == GateKind::RZ) {
        if (g.parameterized())
          os << ' ' << g.param;
        else
          os << ' ' << g.angle;
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  int n_;
  std::vector<Gate> gates_;
  std::vector<std::string> params_;
};

/// Resolves every parameterized rotation of `c` against `b`, returning an
/// equivalent circuit with no free parameters.  Useful when a fixed circuit
/// must be composed with another parameterized one without name clashes.
inline Circuit freeze(const Circuit& c, const Bindings& b) {
  Circuit out(c.n());
  for (const auto& g : c.gates()) {
    Gate fixed = g;
    if (g.kind == GateKind::RY || g.kind == GateKind::RZ) {
      fixed.angle = c.resolve_angle(g, b);
      fixed.param.clear();
      fixed.dagger = false;
    }
    out.append(std::move(fixed));
  }
  return out;
}

/// Bindings from an ordered value vector following circuit parameter order.
inline Bindings bind_values(const Circuit& c, const std::vector<double>& values) {
  const auto& names = c.parameters();
  if (values.size() != names.size())
    throw std::invalid_argument("bind_values: size mismatch");
  Bindings b;
  for (std::size_t i = 0; i < names.size(); ++i) b[names[i]] = values[i];
  return b;
}

}  // namespace respq
