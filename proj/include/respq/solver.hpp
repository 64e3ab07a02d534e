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

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "respq/ansatz.hpp"
#include "respq/circuit.hpp"
#include "respq/density.hpp"
#include "respq/mitigation.hpp"
#include "respq/optimize.hpp"
#include "respq/pauli.hpp"
#include "respq/rng.hpp"
#include "respq/sampling.hpp"
#include "respq/statevector.hpp"

namespace respq {

/// Smallest |<x|A†A|x>| the response formula will divide by.
inline constexpr double kDenominatorGuard = 1e-12;

/// <V†V> below which the response is identically zero (V annihilates the
/// ground state) and the solver skips optimization entirely.
inline constexpr double kDegenerateTol = 1e-20;

/// Near-resonance detector threshold: with the response state a quarter turn
/// away from the optimum, a cost smaller than 10 gamma^2 times its natural
/// scale signals a gamma^2-degenerate landscape (a nearby eigenstate is
/// almost dark to the stopping criterion).
inline constexpr double kNearResonanceFactor = 10.0;

/// How expectation values are produced: exact, finite-shot, and/or through a
/// depolarizing noise model, optionally wrapped in the symmetry-ratio
/// estimator.
struct ExecConfig {
  long shots = 0;                     // 0 = infinite-shot expectation values
  std::optional<NoiseModel> noise;    // engaged: density-matrix propagation
  std::optional<PauliSum> projector;  // symmetry-projected ratios on prepared states
  std::optional<PauliSum> ground_projector;  // separate sector for |psi0> estimators;
                                             // needed when V maps between sectors
  std::uint64_t seed = 0;
  int threads = 1;                    // used by sweep() only
};

/// Everything that defines one linear-response computation.
struct ResponseProblem {
  PauliSum h0;                     // system Hamiltonian
  PauliSum v;                      // perturbation operator
  double e0 = 0.0;                 // ground-state energy fed to the shift
  Circuit ground;                  // preparation circuit for |psi0>
  Bindings ground_bindings;        // fixed angles for the ground circuit
  AnsatzSpec response;             // ansatz family for the response state
  std::vector<double> omega_grid;  // probe frequencies
  double gamma = 0.0;              // Lorentzian broadening, must be > 0
};

struct ResponsePoint {
  double omega = 0.0;
  cplx chi{0.0, 0.0};
  double residual = 0.0;         // optimized cost value (exactly 0 at the ideal solution)
  double norm_ratio = 0.0;       // <V†V> / <x|A†A|x>, the response amplitude factor
  Bindings theta;                // optimized response-ansatz angles
  long evals = 0;                // cost evaluations spent
  bool near_resonance = false;   // quarter-turn probe cost below 10*gamma^2 scale
  bool degenerate = false;       // V|psi0> = 0, response identically zero
  bool failed = false;
  std::string error;
};

/// A(omega) = H0 - (e0 + omega + i*gamma) * I, the shifted operator whose
/// linear system defines the response state.
inline PauliSum build_A(const PauliSum& h0, double e0, double omega, double gamma) {
  PauliSum a = h0;
  a.add(std::string(h0.n(), 'I'), cplx(-e0 - omega, -gamma));
  return a;
}

namespace detail {

/// A circuit output under the active execution mode: pure state when
/// noiseless, density matrix when a noise model is engaged.
struct PreparedState {
  std::optional<Statevector> sv;
  std::optional<DensityMatrix> dm;
};

inline PreparedState prepare_state_for(const Circuit& c, const Bindings& b,
                                       const ExecConfig& exec) {
  PreparedState st;
  if (exec.noise && !exec.noise->trivial())
    st.dm = run_noisy(c, b, *exec.noise);
  else
    st.sv = run_circuit(c, b);
  return st;
}

inline double plain_real_expect(const PreparedState& st, const PauliSum& o, long shots,
                                std::uint64_t seed, const std::vector<double>& flip) {
  if (shots <= 0) return st.sv ? std::real(expect(*st.sv, o)) : std::real(expect(*st.dm, o));
  double acc = 0.0;
  std::uint64_t tag = 0;
  for (const auto& [word, coeff] : o.terms()) {
    const PauliTerm t(word);
    const double mean =
        st.sv ? sample_expect(*st.sv, t, shots, derive_seed(seed, 0xe3, tag), flip)
              : sample_expect(*st.dm, t, shots, derive_seed(seed, 0xe3, tag), flip);
    acc += std::real(coeff) * mean;
    ++tag;
  }
  return acc;
}

}  // namespace detail

/// Solves one frequency point: builds the shifted operator, anchors the
/// ansatz if required, minimizes the variational cost, and converts the
/// optimum into a response-function value.
///
/// The cost of a candidate state |x> is
///   L = <V†V> * <x|A†A|x> - |<psi0|V†A|x>|^2  >= 0,
/// which vanishes exactly when A|x> is proportional to V|psi0>.  At the
/// optimum the response value follows from expectation values alone:
///   chi = <x|A†|x> * <V†V> / <x|A†A|x>.
class FrequencySolver {
 public:
  FrequencySolver(const ResponseProblem& prob, double omega, const ExecConfig& exec)
      : prob_(prob), exec_(exec), omega_(omega), u0_(freeze(prob.ground, prob.ground_bindings)),
        a_(prob.h0.n()), ada_(prob.h0.n()), m_(prob.h0.n()), hs_(prob.h0.n()),
        vdv_(prob.h0.n()), x_circuit_(prob.h0.n() > 0 ? prob.h0.n() : 1) {
    const int n = prob.h0.n();
    if (prob.v.n() != n || prob.ground.n() != n)
      throw std::invalid_argument("FrequencySolver: operator/circuit width mismatch");
    if (!(prob.gamma > 0.0))
      throw std::invalid_argument("FrequencySolver: gamma must be positive");
    if (!prob.h0.is_hermitian(1e-10))
      throw std::invalid_argument("FrequencySolver: Hamiltonian must be Hermitian");

    psi0_ = run_circuit(u0_);
    const Eigen::VectorXcd vpsi = apply_sum(prob.v, psi0_);
    t1_exact_ = vpsi.squaredNorm();
    degenerate_ = t1_exact_ < kDegenerateTol;
    if (degenerate_) return;

    a_ = build_A(prob.h0, prob.e0, omega, prob.gamma);
    ada_ = adjoint(a_) * a_;
    m_ = adjoint(prob.v) * a_;
    vdv_ = adjoint(prob.v) * prob.v;
    hs_ = prob.h0;
    hs_.add(std::string(n, 'I'), cplx(-prob.e0 - omega, 0.0));
    for (const auto& [word, coeff] : m_.terms()) m_terms_.emplace_back(PauliTerm(word), coeff);

    if (exec_.projector) {
      const PauliSum& p = *exec_.projector;
      if (p.n() != n)
        throw std::invalid_argument("FrequencySolver: projector width mismatch");
      // [H0, P] = 0 implies every shifted observable below commutes as well,
      // so one algebraic check covers the whole frequency sweep.
      const double dh = commutator_defect(prob.h0, p);
      if (dh > kCommutatorTol)
        throw std::invalid_argument(
            "FrequencySolver: Hamiltonian does not commute with the projector (defect " +
            std::to_string(dh) + ")");
      ada_p_ = ada_ * p;
      hs_p_ = hs_ * p;
    }
    if (exec_.ground_projector) {
      const PauliSum& pg = *exec_.ground_projector;
      if (pg.n() != n)
        throw std::invalid_argument("FrequencySolver: ground projector width mismatch");
      const double dv = commutator_defect(vdv_, pg);
      if (dv > kCommutatorTol)
        throw std::invalid_argument(
            "FrequencySolver: V†V does not commute with the ground projector (defect " +
            std::to_string(dv) + ")");
      vdv_p_ = vdv_ * pg;
    }

    if (exec_.noise) flip_ = exec_.noise->readout_flip;

    if (prob.response.kind == AnsatzKind::OracleSpan) {
      // Anchor the two-angle span family on the dense solution of
      // A y = V|psi0>, displaced so the optimizer still has work to do.
      const Eigen::MatrixXcd ad = a_.to_dense();
      const Eigen::VectorXcd y = Eigen::PartialPivLU<Eigen::MatrixXcd>(ad).solve(vpsi);
      if (y.norm() < 1e-300)
        throw std::runtime_error("FrequencySolver: anchored solve produced a null state");
      Statevector anchor = Statevector::from_vector(y.normalized());
      x_circuit_ =
          build_span_ansatz(anchor, prob.response.span_theta0, prob.response.span_phi0);
    } else {
      AnsatzSpec spec = prob.response;
      spec.n = n;
      x_circuit_ = build_ansatz(spec);
    }

    ground_prepared_ = detail::prepare_state_for(u0_, {}, exec_);
    t1_ = observe(ground_prepared_, vdv_, vdv_p_, exec_.ground_projector,
                  derive_seed(exec_.seed, 0xa110));
  }

  const Circuit& response_circuit() const { return x_circuit_; }
  double ground_weight() const { return t1_; }
  bool degenerate() const { return degenerate_; }

  /// One evaluation of the variational cost at the given angles.  In
  /// finite-shot modes successive calls draw from consecutive derived
  /// streams, so an optimization run is reproducible end to end.
  double cost(const Bindings& theta) {
    if (degenerate_) return 0.0;
    return cost_inner(theta, derive_seed(exec_.seed, 0xc057, ++eval_counter_));
  }

  ResponsePoint solve(const OptimizerSpec& opt) {
    ResponsePoint pt;
    pt.omega = omega_;
    if (degenerate_) {
      pt.degenerate = true;
      return pt;
    }
    const int dim = static_cast<int>(x_circuit_.parameters().size());
    OptResult best;
    if (dim == 0) {
      best.value = cost({});
      best.evals = 1;
    } else {
      // The anchored span family names its canonical displacement, so feed
      // it to the optimizer as a warm start; other families search cold.
      std::vector<std::vector<double>> hints;
      if (prob_.response.kind == AnsatzKind::OracleSpan) {
        std::vector<double> h;
        for (const std::string& name : x_circuit_.parameters())
          h.push_back(name == "theta" ? prob_.response.span_theta0
                                      : prob_.response.span_phi0);
        hints.push_back(std::move(h));
      }
      best = minimize(
          [this](const std::vector<double>& vals) {
            return cost_inner(bind_values(x_circuit_, vals),
                              derive_seed(exec_.seed, 0xc057, ++eval_counter_));
          },
          dim, opt, hints);
    }
    pt.theta = bind_values(x_circuit_, best.x);
    pt.residual = best.value;
    pt.evals = static_cast<long>(eval_counter_);

    const std::uint64_t fin = derive_seed(exec_.seed, 0xf17a);
    const detail::PreparedState x = detail::prepare_state_for(x_circuit_, pt.theta, exec_);
    const double t2 = observe(x, ada_, ada_p_, exec_.projector, derive_seed(fin, 1));
    if (std::abs(t2) < kDenominatorGuard) {
      pt.failed = true;
      pt.error = "near-singular response denominator: |<x|A†A|x>| below 1e-12";
      pt.chi = cplx(std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN());
      return pt;
    }
    const double hshift = observe(x, hs_, hs_p_, exec_.projector, derive_seed(fin, 2));
    pt.norm_ratio = t1_ / t2;
    pt.chi = cplx(hshift, prob_.gamma) * pt.norm_ratio;

    if (dim >= 1) {
      Bindings probe = pt.theta;
      const std::string& lead = x_circuit_.parameters().front();
      probe[lead] = pt.theta.at(lead) + M_PI / 2.0;
      const std::uint64_t ps = derive_seed(exec_.seed, 0x9b0b);
      const detail::PreparedState xp = detail::prepare_state_for(x_circuit_, probe, exec_);
      const double t2p = observe(xp, ada_, ada_p_, exec_.projector, derive_seed(ps, 1));
      const double scale = t1_ * t2p;
      if (scale > 0.0) {
        const double lp = scale - cross_squared(xp, probe, derive_seed(ps, 2));
        pt.near_resonance = lp < kNearResonanceFactor * prob_.gamma * prob_.gamma * scale;
      }
    }
    return pt;
  }

 private:
  bool analytic() const {
    return exec_.shots == 0 && (!exec_.noise || exec_.noise->trivial());
  }

  double observe(const detail::PreparedState& st, const PauliSum& plain,
                 const std::optional<PauliSum>& projected,
                 const std::optional<PauliSum>& projector, std::uint64_t seed) const {
    if (projector && projected) {
      const double den = detail::plain_real_expect(st, *projector, exec_.shots,
                                                   derive_seed(seed, 0xd0), flip_);
      if (den < kSectorDepletionTol)
        throw std::runtime_error("FrequencySolver: symmetry sector depleted (projected weight " +
                                 std::to_string(den) + " below 1e-6)");
      const double num =
          detail::plain_real_expect(st, *projected, exec_.shots, derive_seed(seed, 0xd1), flip_);
      return num / den;
    }
    return detail::plain_real_expect(st, plain, exec_.shots, seed, flip_);
  }

  /// |<psi0|V†A|x>|^2.  Noiseless infinite-shot mode contracts the states
  /// directly; otherwise the value is assembled from the pairwise ancilla
  /// interference estimators W(l,k), using W(k,l) = conj(W(l,k)).
  double cross_squared(const detail::PreparedState& x, const Bindings& theta,
                       std::uint64_t seed) const {
    if (analytic() && x.sv) {
      const Eigen::VectorXcd mx = apply_sum(m_, *x.sv);
      const cplx c = psi0_.vector().dot(mx);
      return std::norm(c);
    }
    const NoiseModel* nm = exec_.noise ? &*exec_.noise : nullptr;
    cplx acc(0.0, 0.0);
    std::uint64_t tag = 0;
    for (std::size_t l = 0; l < m_terms_.size(); ++l) {
      for (std::size_t k = l; k < m_terms_.size(); ++k) {
        const cplx w =
            estimate_cross(u0_, x_circuit_, theta, m_terms_[l].first, m_terms_[k].first,
                           exec_.shots, derive_seed(seed, 0xcc, tag++), nm);
        const cplx pair = std::conj(m_terms_[l].second) * m_terms_[k].second * w;
        acc += (k == l) ? pair : pair + std::conj(pair);
      }
    }
    return std::real(acc);
  }

  double cost_inner(const Bindings& theta, std::uint64_t seed) {
    const detail::PreparedState x = detail::prepare_state_for(x_circuit_, theta, exec_);
    const double t2 = observe(x, ada_, ada_p_, exec_.projector, derive_seed(seed, 1));
    const double c2 = cross_squared(x, theta, derive_seed(seed, 2));
    return t1_ * t2 - c2;
  }

  const ResponseProblem& prob_;
  ExecConfig exec_;
  double omega_;
  Circuit u0_;
  Statevector psi0_{1};
  double t1_exact_ = 0.0;
  double t1_ = 0.0;
  bool degenerate_ = false;
  PauliSum a_, ada_, m_, hs_, vdv_;
  std::vector<std::pair<PauliTerm, cplx>> m_terms_;
  std::optional<PauliSum> ada_p_, hs_p_, vdv_p_;
  std::vector<double> flip_;
  Circuit x_circuit_;
  detail::PreparedState ground_prepared_;
  std::uint64_t eval_counter_ = 0;
};

/// The variational cost at one frequency and binding, built fresh.  For
/// repeated evaluations construct a FrequencySolver once and call cost().
inline double cost_L(const ResponseProblem& prob, double omega, const Bindings& theta,
                     const ExecConfig& exec = {}) {
  FrequencySolver s(prob, omega, exec);
  return s.cost(theta);
}

inline ResponsePoint solve_frequency(const ResponseProblem& prob, double omega,
                                     const OptimizerSpec& opt, const ExecConfig& exec = {}) {
  FrequencySolver s(prob, omega, exec);
  return s.solve(opt);
}

/// Runs every frequency of the problem grid.  Each point derives its own
/// seed from (root seed, point index), so results are bit-identical for any
/// thread count; failures are captured per point instead of aborting the
/// whole sweep.
inline std::vector<ResponsePoint> sweep(const ResponseProblem& prob, const OptimizerSpec& opt,
                                        const ExecConfig& exec = {}) {
  const std::size_t npts = prob.omega_grid.size();
  std::vector<ResponsePoint> out(npts);

  // Degenerate perturbations short-circuit the entire sweep.
  {
    const Circuit u0 = freeze(prob.ground, prob.ground_bindings);
    const Statevector psi0 = run_circuit(u0);
    if (apply_sum(prob.v, psi0).squaredNorm() < kDegenerateTol) {
      for (std::size_t i = 0; i < npts; ++i) {
        out[i].omega = prob.omega_grid[i];
        out[i].degenerate = true;
      }
      return out;
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= npts) break;
      ExecConfig point_exec = exec;
      point_exec.seed = derive_seed(exec.seed, 0xf4e9, i);
      point_exec.threads = 1;
      try {
        out[i] = solve_frequency(prob, prob.omega_grid[i], opt, point_exec);
      } catch (const std::exception& ex) {
        out[i] = ResponsePoint{};
        out[i].omega = prob.omega_grid[i];
        out[i].failed = true;
        out[i].error = ex.what();
        out[i].chi = cplx(std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN());
      }
    }
  };

  const int threads = std::max(1, exec.threads);
  if (threads == 1 || npts <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int k = static_cast<int>(std::min<std::size_t>(threads, npts));
    pool.reserve(k);
    for (int t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

struct VqeResult {
  double energy = 0.0;
  Bindings theta;
  long evals = 0;
  bool improved = true;
  std::string note;
};

/// Minimizes <H> over the ansatz angles under the active execution mode,
/// with the symmetry-ratio estimator when a projector is engaged.
inline VqeResult vqe_minimize(const PauliSum& h, const Circuit& ansatz,
                              const OptimizerSpec& opt, const ExecConfig& exec = {}) {
  if (h.n() != ansatz.n())
    throw std::invalid_argument("vqe_minimize: operator/circuit width mismatch");
  if (!h.is_hermitian(1e-10))
    throw std::invalid_argument("vqe_minimize: Hamiltonian must be Hermitian");
  std::optional<PauliSum> hp;
  if (exec.projector) {
    const double d = commutator_defect(h, *exec.projector);
    if (d > kCommutatorTol)
      throw std::invalid_argument(
          "vqe_minimize: Hamiltonian does not commute with the projector (defect " +
          std::to_string(d) + ")");
    hp = h * *exec.projector;
  }
  std::uint64_t counter = 0;
  std::vector<double> flip = exec.noise ? exec.noise->readout_flip : std::vector<double>{};
  auto energy_at = [&](const std::vector<double>& vals) {
    const Bindings b = bind_values(ansatz, vals);
    const detail::PreparedState st = detail::prepare_state_for(ansatz, b, exec);
    const std::uint64_t seed = derive_seed(exec.seed, 0xe0e0, ++counter);
    if (exec.projector) {
      const double den = detail::plain_real_expect(st, *exec.projector, exec.shots,
                                                   derive_seed(seed, 0xd0), flip);
      if (den < kSectorDepletionTol)
        throw std::runtime_error("vqe_minimize: symmetry sector depleted (projected weight " +
                                 std::to_string(den) + " below 1e-6)");
      return detail::plain_real_expect(st, *hp, exec.shots, derive_seed(seed, 0xd1), flip) / den;
    }
    return detail::plain_real_expect(st, h, exec.shots, seed, flip);
  };
  const int dim = static_cast<int>(ansatz.parameters().size());
  VqeResult r;
  if (dim == 0) {
    r.energy = energy_at({});
    r.evals = 1;
    return r;
  }
  const OptResult o = minimize(energy_at, dim, opt);
  r.energy = o.value;
  r.theta = bind_values(ansatz, o.x);
  r.evals = o.evals;
  r.improved = o.improved;
  r.note = o.note;
  return r;
}

}  // namespace respq
