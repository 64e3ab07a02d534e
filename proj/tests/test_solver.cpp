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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "respq/mitigation.hpp"
#include "respq/oracle.hpp"
#include "respq/solver.hpp"
#include "test_helpers.hpp"

using respq::AnsatzKind;
using respq::AnsatzSpec;
using respq::Bindings;
using respq::Circuit;
using respq::cplx;
using respq::DensityMatrix;
using respq::ExecConfig;
using respq::NoiseModel;
using respq::PauliSum;
using respq::ResponseProblem;
using respq::Statevector;
using testref::Mat;
using testref::Vec;

namespace {

PauliSum splitting_1q() {
  PauliSum h(1);
  h.add("I", cplx(0.5, 0.0));
  h.add("Z", cplx(-0.5, 0.0));  // diag(0, 1)
  return h;
}

PauliSum coupling_x_1q() {
  PauliSum v(1);
  v.add("X", cplx(1.0, 0.0));
  return v;
}

ResponseProblem two_level_problem(std::vector<double> grid, double gamma = 0.1) {
  AnsatzSpec spec;
  spec.kind = AnsatzKind::HardwareEfficient;
  spec.n = 1;
  return ResponseProblem{splitting_1q(), coupling_x_1q(), 0.0,
                         respq::hf_reference(1, {}),     {},
                         spec,                           std::move(grid),
                         gamma};
}

cplx two_level_chi(double w, double gamma) { return 1.0 / cplx(1.0 - w, -gamma); }

}  // namespace

// ---------------------------------------------------------------------------
// Symmetry projection.

TEST_CASE("parity projectors have the dense form (I +- Z..Z)/2") {
  for (int n : {1, 2, 3}) {
    for (int sector : {+1, -1}) {
      const PauliSum p = respq::parity_projector(n, sector);
      const Mat zz = testref::dense_word(std::string(n, 'Z'));
      const Mat want =
          0.5 * (Mat::Identity(zz.rows(), zz.cols()) + double(sector) * zz);
      INFO("n=" << n << " sector=" << sector);
      REQUIRE((testref::dense_sum(p, n) - want).cwiseAbs().maxCoeff() < 1e-14);
      CHECK_NOTHROW(respq::validate_projector(p));
    }
  }
  CHECK_THROWS_AS(respq::parity_projector(2, 0), std::invalid_argument);
}

TEST_CASE("occupation projectors select exactly the right basis states") {
  const int n = 3;
  for (int particles = 0; particles <= n; ++particles) {
    const PauliSum p = respq::number_projector(n, particles);
    const Mat d = testref::dense_sum(p, n);
    for (int i = 0; i < (1 << n); ++i) {
      const int pop = __builtin_popcount(unsigned(i));
      INFO("particles=" << particles << " basis=" << i);
      REQUIRE(std::abs(d(i, i) - (pop == particles ? 1.0 : 0.0)) < 1e-12);
    }
    CHECK((d - d.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK_NOTHROW(respq::validate_projector(p));
  }
  CHECK_THROWS_AS(respq::number_projector(2, 5), std::invalid_argument);
}

TEST_CASE("projector validation rejects non-idempotent or non-hermitian input") {
  const PauliSum p = respq::parity_projector(2, +1);
  CHECK_THROWS_WITH(respq::validate_projector(p * cplx(0.6, 0.0)),
                    Catch::Matchers::ContainsSubstring("projector validation failed"));
  PauliSum skew(2);
  skew.add("XI", cplx(0.0, 1.0));
  CHECK_THROWS_WITH(respq::validate_projector(skew),
                    Catch::Matchers::ContainsSubstring("projector validation failed"));
}

TEST_CASE("commutator defect is exact on commuting and anticommuting pairs") {
  PauliSum x(1), z(1);
  x.add("X", cplx(1.0, 0.0));
  z.add("Z", cplx(1.0, 0.0));
  CHECK(respq::commutator_defect(x, x) == 0.0);
  CHECK(respq::commutator_defect(x, z) == Catch::Approx(2.0));  // [X,Z] = -2iY

  PauliSum tfim(2);
  tfim.add("ZZ", cplx(-1.0, 0.0));
  tfim.add("XX", cplx(0.4, 0.0));
  CHECK(respq::commutator_defect(tfim, respq::parity_projector(2, +1)) < 1e-15);
}

TEST_CASE("ratio estimator is the identity on states inside the sector") {
  // State in the odd-parity sector, observable commuting with parity.
  Circuit c(2);
  c.x(1);
  c.ry(0, 0.4);
  c.cnot(0, 1);
  const Statevector s = respq::run_circuit(c);
  PauliSum obs(2);
  obs.add("ZI", cplx(0.7, 0.0));
  obs.add("XX", cplx(0.3, 0.0));
  const PauliSum proj = respq::parity_projector(2, -1);
  const double plain = std::real(respq::expect(s, obs));
  CHECK(respq::mitigated_expect(s, obs, proj) == Catch::Approx(plain).margin(1e-12));
}

TEST_CASE("ratio estimator removes pure sector leakage exactly") {
  // Convex mixture of a target in-sector state and an orthogonal-sector
  // state; any observable that is block diagonal in the symmetry must come
  // back to its in-sector value exactly, whatever the leakage weight.
  respq::RandomStream rng(150);
  const PauliSum proj = respq::parity_projector(2, -1);
  PauliSum obs(2);
  obs.add("ZI", cplx(0.8, 0.0));
  obs.add("IZ", cplx(-0.5, 0.0));
  obs.add("XX", cplx(0.45, 0.0));
  obs.add("YY", cplx(0.2, 0.0));

  for (double eps : {1e-3, 0.2, 0.7}) {
    // In-sector: combination of |01> and |10>; out-of-sector: of |00>, |11>.
    Vec in = Vec::Zero(4), out = Vec::Zero(4);
    in(1) = cplx(rng.uniform(), rng.uniform());
    in(2) = cplx(rng.uniform(), rng.uniform());
    in.normalize();
    out(0) = cplx(rng.uniform(), rng.uniform());
    out(3) = cplx(rng.uniform(), rng.uniform());
    out.normalize();

    DensityMatrix rho(2);
    rho.matrix() =
        (1.0 - eps) * (in * in.adjoint()) + eps * (out * out.adjoint());
    const double want =
        std::real((in.adjoint() * testref::dense_sum(obs, 2) * in)(0));
    INFO("leakage " << eps);
    REQUIRE(respq::mitigated_expect(rho, obs, proj) ==
            Catch::Approx(want).margin(1e-12));
  }
}

TEST_CASE("ratio estimator guards against depleted sectors and bad pairs") {
  Circuit c(2);  // |00>: even parity only
  const Statevector s = respq::run_circuit(c);
  PauliSum obs(2);
  obs.add("ZI", cplx(1.0, 0.0));
  CHECK_THROWS_WITH(
      respq::mitigated_expect(s, obs, respq::parity_projector(2, -1)),
      Catch::Matchers::ContainsSubstring("sector depleted"));

  PauliSum bad(2);
  bad.add("XI", cplx(1.0, 0.0));  // does not commute with parity
  CHECK_THROWS_WITH(
      respq::mitigated_expect(s, bad, respq::parity_projector(2, +1)),
      Catch::Matchers::ContainsSubstring("does not commute"));
}

TEST_CASE("sampled ratio estimator converges to the exact ratio") {
  NoiseModel nm;
  nm.p1 = 0.01;
  Circuit c(2);
  c.x(1);
  c.ry(0, 0.9);
  c.cnot(0, 1);
  const DensityMatrix rho = respq::run_noisy(c, {}, nm);
  PauliSum obs(2);
  obs.add("ZI", cplx(0.6, 0.0));
  obs.add("YY", cplx(0.4, 0.0));
  const PauliSum proj = respq::parity_projector(2, -1);
  const double exact = respq::mitigated_expect(rho, obs, proj);
  const double sampled =
      respq::mitigated_sample_expect(rho, obs, proj, 400000, 77);
  CHECK(sampled == Catch::Approx(exact).margin(0.02));
}

// ---------------------------------------------------------------------------
// Frequency solver.

TEST_CASE("shifted operator subtracts the reference energy and probe") {
  respq::RandomStream rng(151);
  const PauliSum h = testref::random_hermitian(rng, 2, 4);
  const double e0 = -0.3, w = 0.8, g = 0.05;
  const PauliSum a = respq::build_A(h, e0, w, g);
  const Mat want = testref::dense_sum(h, 2) -
                   cplx(e0 + w, g) * Mat::Identity(4, 4);
  CHECK((testref::dense_sum(a, 2) - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("variational cost is non-negative and vanishes at the solution") {
  const ResponseProblem prob = two_level_problem({0.6});
  respq::RandomStream rng(152);
  for (int k = 0; k < 25; ++k) {
    const double c = respq::cost_L(prob, 0.6, {{"t0_0", 2 * M_PI * rng.uniform()}});
    REQUIRE(c >= -1e-12);
  }
  // theta = pi prepares |1>, the exact response direction for this model.
  CHECK(respq::cost_L(prob, 0.6, {{"t0_0", M_PI}}) ==
        Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("exact-mode solve reproduces the closed two-level response") {
  const ResponseProblem prob = two_level_problem({0.5, 0.8, 1.25});
  const auto pts = respq::sweep(prob, respq::OptimizerSpec::grid(256), {});
  REQUIRE(pts.size() == 3);
  for (const auto& pt : pts) {
    INFO("omega " << pt.omega);
    REQUIRE_FALSE(pt.failed);
    CHECK(pt.residual < 1e-10);
    CHECK(std::abs(pt.chi - two_level_chi(pt.omega, 0.1)) < 1e-9);
    CHECK(pt.chi.imag() > 0.0);
    CHECK_FALSE(pt.degenerate);
    CHECK_FALSE(pt.near_resonance);
    CHECK(pt.evals >= 256);
  }
}

TEST_CASE("weightless resonances raise the near-resonance flag") {
  // At omega = 0 the shifted operator is nearly singular on the ground state
  // itself, which carries no transition weight: the quarter-turn probe dips
  // below the 10*gamma^2 scale and the flag must fire, while chi stays
  // accurate.
  const double gamma = 0.1;
  const ResponseProblem prob = two_level_problem({0.0, 0.5}, gamma);
  const auto pts = respq::sweep(prob, respq::OptimizerSpec::grid(256), {});
  CHECK(pts[0].near_resonance);
  CHECK(std::abs(pts[0].chi - two_level_chi(0.0, gamma)) < 1e-9);
  CHECK_FALSE(pts[1].near_resonance);
}

TEST_CASE("a perturbation annihilating the ground state is reported degenerate") {
  PauliSum v(1);
  v.add("I", cplx(0.5, 0.0));
  v.add("Z", cplx(-0.5, 0.0));  // |1><1| sends |0> to zero
  ResponseProblem prob = two_level_problem({0.4, 0.9});
  prob.v = v;
  const auto pts = respq::sweep(prob, respq::OptimizerSpec::grid(256), {});
  for (const auto& pt : pts) {
    CHECK(pt.degenerate);
    CHECK_FALSE(pt.failed);
    CHECK(pt.chi == cplx(0.0, 0.0));
    CHECK(pt.residual == 0.0);
  }
}

TEST_CASE("sweeps are deterministic across repetition and thread count") {
  ResponseProblem prob = two_level_problem({0.3, 0.7, 1.0, 1.4});
  ExecConfig exec;
  exec.shots = 64;  // finite-shot path exercises every derived stream
  exec.seed = 2026;

  exec.threads = 1;
  const auto a = respq::sweep(prob, respq::OptimizerSpec::grid(16), exec);
  const auto b = respq::sweep(prob, respq::OptimizerSpec::grid(16), exec);
  exec.threads = 3;
  const auto c = respq::sweep(prob, respq::OptimizerSpec::grid(16), exec);

  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].chi.real() == b[i].chi.real());
    CHECK(a[i].chi.imag() == b[i].chi.imag());
    CHECK(a[i].residual == b[i].residual);
    CHECK(a[i].chi.real() == c[i].chi.real());
    CHECK(a[i].chi.imag() == c[i].chi.imag());
    CHECK(a[i].residual == c[i].residual);
    CHECK(a[i].theta == c[i].theta);
  }
}

TEST_CASE("anchored span ansatz drives the residual to machine scale") {
  respq::RandomStream rng(153);
  const PauliSum h = testref::random_hermitian(rng, 2, 4);
  const PauliSum v = testref::random_hermitian(rng, 2, 2);
  const auto eig = respq::exact_diag(h);
  const Statevector ground = Statevector::from_vector(eig.states.col(0));

  AnsatzSpec spec;
  spec.kind = AnsatzKind::OracleSpan;
  spec.n = 2;
  ResponseProblem prob{h,    v,
                       eig.energies(0), respq::prepare_state(ground.vector()),
                       {},   spec,
                       {0.45, 1.2},     0.15};
  const auto pts =
      respq::sweep(prob, respq::OptimizerSpec::simplex(600, 1e-13), {});
  for (const auto& pt : pts) {
    INFO("omega " << pt.omega);
    REQUIRE_FALSE(pt.failed);
    CHECK(pt.residual < 1e-10);
    const cplx want = respq::chi_sos(eig, v, pt.omega, 0.15);
    CHECK(std::abs(pt.chi - want) < 1e-8);
  }
}

TEST_CASE("projected estimators cancel depolarizing leakage in the solve") {
  // V = X maps between the parity sectors, so the response state is measured
  // in the odd sector while the ground-state weight is measured in the even
  // one.  Depolarizing noise is block diagonal in this symmetry; the ratio
  // estimator recovers the exact response.
  ResponseProblem prob = two_level_problem({0.5, 1.0});
  ExecConfig exec;
  NoiseModel nm;
  nm.p1 = 0.002;
  exec.noise = nm;
  exec.projector = respq::parity_projector(1, -1);
  exec.ground_projector = respq::parity_projector(1, +1);

  const auto pts = respq::sweep(prob, respq::OptimizerSpec::grid(256), exec);
  for (const auto& pt : pts) {
    INFO("omega " << pt.omega);
    REQUIRE_FALSE(pt.failed);
    CHECK(std::abs(pt.chi - two_level_chi(pt.omega, 0.1)) < 1e-10);
  }
}

TEST_CASE("sector depletion inside a sweep surfaces as a failed point") {
  // Projecting the response onto the even sector while the response state
  // lives in the odd one must not crash the sweep; the point is marked
  // failed with a NaN response.
  ResponseProblem prob = two_level_problem({0.9});
  ExecConfig exec;
  exec.projector = respq::parity_projector(1, +1);
  const auto pts = respq::sweep(prob, respq::OptimizerSpec::grid(256), exec);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].failed);
  CHECK(pts[0].error.find("depleted") != std::string::npos);
  CHECK(std::isnan(pts[0].chi.real()));
}

TEST_CASE("solver construction validates inputs up front") {
  ResponseProblem ok = two_level_problem({0.5});

  ResponseProblem bad_gamma = ok;
  bad_gamma.gamma = 0.0;
  CHECK_THROWS_WITH(respq::solve_frequency(bad_gamma, 0.5, respq::OptimizerSpec::grid(), {}),
                    Catch::Matchers::ContainsSubstring("gamma must be positive"));

  ResponseProblem bad_width = ok;
  bad_width.v = respq::parity_projector(2, +1);
  CHECK_THROWS_AS(respq::solve_frequency(bad_width, 0.5, respq::OptimizerSpec::grid(), {}),
                  std::invalid_argument);

  PauliSum soft(1);
  soft.add("X", cplx(0.3, 0.0));
  ResponseProblem bad_h = ok;
  bad_h.h0 = soft;
  bad_h.h0.add("Y", cplx(0.0, 0.4));  // imaginary weight: not Hermitian
  CHECK_THROWS_WITH(respq::solve_frequency(bad_h, 0.5, respq::OptimizerSpec::grid(), {}),
                    Catch::Matchers::ContainsSubstring("Hermitian"));

  // Response projector must commute with H0.
  ResponseProblem flip = ok;
  flip.h0 = soft;          // X Hamiltonian
  ExecConfig exec;
  exec.projector = respq::parity_projector(1, +1);
  CHECK_THROWS_WITH(respq::solve_frequency(flip, 0.5, respq::OptimizerSpec::grid(), exec),
                    Catch::Matchers::ContainsSubstring("does not commute"));

  // Ground projector must commute with V†V.
  PauliSum vmix(2);
  vmix.add("XI", cplx(1.0, 0.0));
  vmix.add("XZ", cplx(0.5, 0.0));  // V†V picks up an IZ word
  PauliSum h2(2);
  h2.add("ZI", cplx(0.5, 0.0));
  h2.add("IZ", cplx(0.25, 0.0));
  AnsatzSpec spec2;
  spec2.kind = AnsatzKind::HardwareEfficient;
  spec2.n = 2;
  ResponseProblem p2{h2, vmix, 0.0, respq::hf_reference(2, {}), {}, spec2, {0.5}, 0.1};
  PauliSum pg(2);
  pg.add("II", cplx(0.5, 0.0));
  pg.add("XX", cplx(0.5, 0.0));
  ExecConfig exec2;
  exec2.ground_projector = pg;
  CHECK_THROWS_WITH(respq::solve_frequency(p2, 0.5, respq::OptimizerSpec::grid(), exec2),
                    Catch::Matchers::ContainsSubstring("ground projector"));
}

// ---------------------------------------------------------------------------
// Variational ground state.

TEST_CASE("variational minimization lands on simple exact ground energies") {
  AnsatzSpec he1;
  he1.kind = AnsatzKind::HardwareEfficient;
  he1.n = 1;
  const Circuit c1 = respq::build_ansatz(he1);
  const auto r1 = respq::vqe_minimize(splitting_1q(), c1, respq::OptimizerSpec::grid(256));
  CHECK(r1.energy == Catch::Approx(0.0).margin(1e-12));
  CHECK(r1.improved);

  // The one-angle pair family holds <ZZ> = -1 everywhere on its manifold.
  PauliSum zz(2);
  zz.add("ZZ", cplx(1.0, 0.0));
  AnsatzSpec pair;
  pair.kind = AnsatzKind::SingletPair;
  pair.n = 2;
  const Circuit c2 = respq::build_ansatz(pair);
  const auto r2 = respq::vqe_minimize(zz, c2, respq::OptimizerSpec::grid(64));
  CHECK(r2.energy == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("projected variational search stays above the sector ground energy") {
  PauliSum tfim(2);
  tfim.add("ZZ", cplx(-1.0, 0.0));
  tfim.add("XI", cplx(-0.7, 0.0));
  tfim.add("IX", cplx(-0.7, 0.0));
  const auto eig = respq::exact_diag(tfim);

  AnsatzSpec he;
  he.kind = AnsatzKind::HardwareEfficient;
  he.n = 2;
  he.layers = 2;
  const Circuit c = respq::build_ansatz(he);

  // The chain's symmetry is the spin flip (I + XX)/2, not the Z parity.
  PauliSum xflip(2);
  xflip.add("II", cplx(0.5, 0.0));
  xflip.add("XX", cplx(0.5, 0.0));
  respq::validate_projector(xflip);

  ExecConfig exec;
  exec.projector = xflip;
  const auto r = respq::vqe_minimize(tfim, c, respq::OptimizerSpec::simplex(1200, 1e-10), exec);
  CHECK(r.energy >= eig.energies(0) - 1e-9);
  CHECK(r.energy < 0.0);
  CHECK(r.evals > 0);
}

TEST_CASE("variational search rejects mismatched or non-hermitian input") {
  AnsatzSpec he;
  he.kind = AnsatzKind::HardwareEfficient;
  he.n = 2;
  const Circuit c = respq::build_ansatz(he);
  CHECK_THROWS_AS(respq::vqe_minimize(splitting_1q(), c, respq::OptimizerSpec::grid()),
                  std::invalid_argument);
  PauliSum skew(2);
  skew.add("XY", cplx(0.0, 1.0));
  CHECK_THROWS_AS(respq::vqe_minimize(skew, c, respq::OptimizerSpec::grid()),
                  std::invalid_argument);
}
