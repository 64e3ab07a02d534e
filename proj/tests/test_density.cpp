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

#include "respq/ansatz.hpp"
#include "respq/density.hpp"
#include "respq/sampling.hpp"
#include "respq/statevector.hpp"
#include "test_helpers.hpp"

using respq::Bindings;
using respq::Circuit;
using respq::cplx;
using respq::DensityMatrix;
using respq::NoiseModel;
using respq::PauliSum;
using respq::PauliTerm;
using respq::Statevector;
using testref::Mat;
using testref::Vec;

namespace {

Circuit simple_random_circuit(respq::RandomStream& rng, int n, int depth) {
  Circuit c(n);
  for (int d = 0; d < depth; ++d) {
    const int q = int(rng.next_u64() % n);
    switch (rng.next_u64() % 5) {
      case 0: c.h(q); break;
      case 1: c.ry(q, 2 * M_PI * rng.uniform()); break;
      case 2: c.rz(q, 2 * M_PI * rng.uniform()); break;
      case 3: if (n > 1) c.cnot(q, (q + 1) % n); break;
      default: if (n > 1) c.sqrt_iswap(q, (q + 1) % n); break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("noise models expose presets tied to the published gate fidelities") {
  CHECK(NoiseModel{}.trivial());
  const NoiseModel two = NoiseModel::preset("2q");
  CHECK(two.p2 == Catch::Approx(1.0 - 0.9806).epsilon(1e-12));
  CHECK_FALSE(two.trivial());
  const NoiseModel four = NoiseModel::preset("4q");
  CHECK(four.p2 == Catch::Approx(1.0 - 0.9651).epsilon(1e-12));
  CHECK_THROWS_AS(NoiseModel::preset("8q"), std::invalid_argument);

  NoiseModel readout_only;
  readout_only.readout_flip = {0.01, 0.0};
  CHECK_FALSE(readout_only.trivial());
}

TEST_CASE("pure density matrices match their statevector origin") {
  respq::RandomStream rng(61);
  const Vec v = testref::random_state(rng, 3);
  const DensityMatrix rho = DensityMatrix::from_statevector(Statevector::from_vector(v));
  CHECK(rho.purity() == Catch::Approx(1.0).margin(1e-13));
  CHECK(rho.trace_real() == Catch::Approx(1.0).margin(1e-13));
  const PauliSum o = testref::random_sum(rng, 3, 5);
  const cplx via_rho = respq::expect(rho, o);
  const cplx via_sv = respq::expect(Statevector::from_vector(v), o);
  CHECK(std::abs(via_rho - via_sv) < 1e-12);
}

TEST_CASE("gates act on density matrices as U rho U-dagger") {
  respq::RandomStream rng(62);
  const Circuit c = simple_random_circuit(rng, 3, 20);
  // Mixed input: blend of two pure states evolved two ways.
  const Vec v1 = testref::random_state(rng, 3);
  const Vec v2 = testref::random_state(rng, 3);
  DensityMatrix rho(3);
  rho.matrix() = 0.3 * (v1 * v1.adjoint()) + 0.7 * (v2 * v2.adjoint());
  for (const auto& g : c.gates()) rho.apply(g, c.resolve_angle(g, {}));

  auto evolve = [&](const Vec& v) {
    Statevector s = Statevector::from_vector(v);
    for (const auto& g : c.gates()) s.apply(g, c.resolve_angle(g, {}));
    return s.vector();
  };
  const Vec w1 = evolve(v1), w2 = evolve(v2);
  const Mat want = 0.3 * (w1 * w1.adjoint()) + 0.7 * (w2 * w2.adjoint());
  CHECK((rho.matrix() - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("full-strength depolarizing on one qubit leaves the maximally mixed factor") {
  respq::RandomStream rng(63);
  const Vec v = testref::random_state(rng, 2);
  DensityMatrix rho = DensityMatrix::from_statevector(Statevector::from_vector(v));
  rho.depolarize({0}, 1.0);

  // Partial trace over qubit 0 (high bit) of the input.
  Mat reduced = Mat::Zero(2, 2);
  const Mat full = v * v.adjoint();
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) reduced(i, j) += full(b * 2 + i, b * 2 + j);
  const Mat want = testref::kron(0.5 * Mat::Identity(2, 2), reduced);
  CHECK((rho.matrix() - want).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("depolarizing equals its explicit pauli-twirl form on any support") {
  respq::RandomStream rng(64);
  const int n = 3;
  const Vec v = testref::random_state(rng, n);
  const Mat rho0 = v * v.adjoint();

  auto twirl = [&](const std::vector<int>& support, double p) {
    const int k = int(support.size());
    Mat acc = Mat::Zero(rho0.rows(), rho0.cols());
    const int words = 1 << (2 * k);
    for (int code = 0; code < words; ++code) {
      std::string full(n, 'I');
      for (int j = 0; j < k; ++j) full[support[j]] = "IXYZ"[(code >> (2 * j)) & 3];
      const Mat w = testref::dense_word(full);
      acc += w * rho0 * w;
    }
    return ((1.0 - p) * rho0 + (p / double(words)) * acc).eval();
  };

  for (const auto& support : std::vector<std::vector<int>>{{1}, {0, 2}}) {
    const double p = 0.23;
    DensityMatrix rho = DensityMatrix::from_statevector(Statevector::from_vector(v));
    rho.depolarize(support, p);
    INFO("support size " << support.size());
    CHECK((rho.matrix() - twirl(support, p)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("depolarizing preserves trace and hermiticity and lowers purity") {
  respq::RandomStream rng(65);
  DensityMatrix rho =
      DensityMatrix::from_statevector(Statevector::from_vector(testref::random_state(rng, 3)));
  const double purity0 = rho.purity();
  rho.depolarize({0, 1}, 0.3);
  CHECK(rho.trace_real() == Catch::Approx(1.0).margin(1e-13));
  CHECK(rho.hermiticity_defect() < 1e-13);
  CHECK(rho.purity() < purity0);
  CHECK_THROWS_AS(rho.depolarize({0}, 1.5), std::invalid_argument);
}

TEST_CASE("noisy execution at zero strength reproduces the pure state") {
  respq::RandomStream rng(66);
  const Circuit c = simple_random_circuit(rng, 2, 15);
  const DensityMatrix rho = respq::run_noisy(c, {}, NoiseModel{});
  const Statevector s = respq::run_circuit(c);
  const Mat want = s.vector() * s.vector().adjoint();
  CHECK((rho.matrix() - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("noisy execution applies channel strength by gate arity") {
  // One- and two-qubit gates pick up p1 and p2 respectively; verify against a
  // hand-rolled evolution using the twirl identity.
  NoiseModel nm;
  nm.p1 = 0.05;
  nm.p2 = 0.2;
  Circuit c(2);
  c.h(0);
  c.cnot(0, 1);

  DensityMatrix got = respq::run_noisy(c, {}, nm);

  DensityMatrix ref(2);
  for (const auto& g : c.gates()) {
    ref.apply(g, 0.0);
    ref.depolarize(g.targets, g.targets.size() == 1 ? nm.p1 : nm.p2);
  }
  CHECK((got.matrix() - ref.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(got.purity() < 1.0);
}

TEST_CASE("density diagonals are measurement probabilities") {
  respq::RandomStream rng(67);
  const Vec v = testref::random_state(rng, 2);
  const DensityMatrix rho = DensityMatrix::from_statevector(Statevector::from_vector(v));
  const std::vector<double> p = respq::probabilities(rho);
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    CHECK(p[i] == Catch::Approx(std::norm(v(i))).margin(1e-13));
    total += p[i];
  }
  CHECK(total == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("sampled expectations converge to the exact value") {
  respq::RandomStream rng(68);
  const Vec v = testref::random_state(rng, 2);
  const Statevector s = Statevector::from_vector(v);
  const PauliTerm t("XY");
  const double exact =
      std::real((v.adjoint() * testref::dense_word("XY") * v)(0));
  const double est = respq::sample_expect(s, t, 200000, 99);
  // 200k shots: standard error < 0.0023, allow 5 sigma.
  CHECK(est == Catch::Approx(exact).margin(0.012));

  CHECK(respq::sample_expect(s, PauliTerm::identity(2), 10, 1) == 1.0);
  CHECK_THROWS_AS(respq::sample_expect(s, t, 0, 1), std::domain_error);
}

TEST_CASE("sampling is reproducible for a fixed seed") {
  respq::RandomStream rng(69);
  const Statevector s = Statevector::from_vector(testref::random_state(rng, 2));
  const PauliTerm t("ZX");
  const double a = respq::sample_expect(s, t, 500, 1234);
  const double b = respq::sample_expect(s, t, 500, 1234);
  const double c = respq::sample_expect(s, t, 500, 1235);
  CHECK(a == b);
  CHECK(a != c);  // astronomically unlikely to collide
}

TEST_CASE("readout flips bias sampled single-qubit expectations as (1-2f)") {
  Circuit c(1);
  c.ry(0, 0.9);
  const Statevector s = respq::run_circuit(c);
  const double z = std::cos(0.9);
  const double f = 0.08;
  const double est = respq::sample_expect(s, PauliTerm("Z"), 200000, 5, {f});
  CHECK(est == Catch::Approx((1 - 2 * f) * z).margin(0.012));
}

TEST_CASE("noisy sampled expectations track the density-matrix value") {
  NoiseModel nm;
  nm.p1 = 0.05;
  Circuit c(2);
  c.h(0);
  c.cnot(0, 1);
  const DensityMatrix rho = respq::run_noisy(c, {}, nm);
  PauliSum zz(2);
  zz.add("ZZ", cplx(1.0, 0.0));
  const double exact = std::real(respq::expect(rho, zz));
  const double est = respq::sample_expect(rho, PauliTerm("ZZ"), 200000, 11);
  CHECK(est == Catch::Approx(exact).margin(0.012));
}

TEST_CASE("interference estimator reduces to bracket products when exact") {
  respq::RandomStream rng(70);
  const int n = 2;
  const Circuit u0 = simple_random_circuit(rng, n, 10);
  const Circuit u1 = simple_random_circuit(rng, n, 10);
  const Statevector psi0 = respq::run_circuit(u0);
  const Statevector x = respq::run_circuit(u1);
  for (int trial = 0; trial < 8; ++trial) {
    const PauliTerm l(testref::random_word(rng, n, true));
    const PauliTerm k(testref::random_word(rng, n, true));
    const cplx want = respq::pauli_bracket(x, l, psi0) * respq::pauli_bracket(psi0, k, x);
    const cplx got = respq::estimate_cross(u0, u1, {}, l, k, 0, 0);
    INFO(l.word << "," << k.word);
    REQUIRE(std::abs(got - want) < 1e-13);
  }
}

TEST_CASE("interference circuit spans the system plus one ancilla") {
  const Circuit u0 = respq::hf_reference(2, {});
  const Circuit u1 = respq::hf_reference(2, {0});
  const Circuit c = respq::cross_circuit(u0, u1, PauliTerm("XI"), PauliTerm("ZI"),
                                         respq::CrossReadout::Real);
  CHECK(c.n() == 3);
}

TEST_CASE("sampled interference estimates converge to the exact cross term") {
  respq::RandomStream rng(71);
  const Circuit u0 = simple_random_circuit(rng, 2, 8);
  const Circuit u1 = simple_random_circuit(rng, 2, 8);
  const PauliTerm l("XI"), k("IZ");
  const cplx exact = respq::estimate_cross(u0, u1, {}, l, k, 0, 0);
  const cplx est = respq::estimate_cross(u0, u1, {}, l, k, 60000, 321);
  CHECK(std::abs(est - exact) < 0.03);
  CHECK_THROWS_AS(respq::estimate_cross(u0, u1, {}, l, k, -5, 0), std::domain_error);
}

TEST_CASE("noisy interference estimates approach the clean value at weak noise") {
  respq::RandomStream rng(72);
  const Circuit u0 = simple_random_circuit(rng, 2, 6);
  const Circuit u1 = simple_random_circuit(rng, 2, 6);
  const PauliTerm l("ZI"), k("XI");
  const cplx clean = respq::estimate_cross(u0, u1, {}, l, k, 0, 0);
  NoiseModel weak;
  weak.p1 = 1e-3;
  weak.p2 = 1e-3;
  const cplx noisy = respq::estimate_cross(u0, u1, {}, l, k, 0, 0, &weak);
  CHECK(std::abs(noisy - clean) < 0.05);
  // Vanishing strength drives the interference-circuit path onto the
  // bracket-product shortcut continuously.
  NoiseModel faint;
  faint.p1 = 1e-9;
  faint.p2 = 1e-9;
  const cplx via_circuit = respq::estimate_cross(u0, u1, {}, l, k, 0, 0, &faint);
  CHECK(std::abs(via_circuit - clean) < 1e-6);
}
