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

#include <complex>
#include <sstream>

#include "respq/pauli.hpp"
#include "respq/rng.hpp"
#include "test_helpers.hpp"

using respq::cplx;
using respq::FermionOp;
using respq::FermionTerm;
using respq::PauliSum;
using respq::PauliTerm;

TEST_CASE("random stream reproduces the reference SplitMix64 sequence") {
  respq::RandomStream s(0);
  CHECK(s.next_u64() == 0xe220a8397b1dcdafULL);
  CHECK(s.next_u64() == 0x6e789e6aa1b965f4ULL);
  CHECK(s.next_u64() == 0x06c45d188009454fULL);
  CHECK(s.next_u64() == 0xf88bb8a8724c81ecULL);
  CHECK(s.next_u64() == 0x1b39896a51a8749bULL);

  respq::RandomStream t(0xdeadbeefULL);
  CHECK(t.next_u64() == 0x4adfb90f68c9eb9bULL);
  CHECK(t.next_u64() == 0xde586a3141a10922ULL);
}

TEST_CASE("uniform draws use the top 53 bits and stay inside [0,1)") {
  respq::RandomStream s(0);
  CHECK(s.uniform() == Catch::Approx(0.8833108082136426).epsilon(0).margin(0));
  respq::RandomStream t(123);
  for (int k = 0; k < 2000; ++k) {
    const double u = t.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("identical seeds give identical streams, different seeds diverge") {
  respq::RandomStream a(99), b(99), c(100);
  bool all_equal = true, any_equal_to_c = false;
  for (int k = 0; k < 64; ++k) {
    const auto va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    any_equal_to_c = any_equal_to_c || (va == c.next_u64());
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal_to_c);
}

TEST_CASE("derive_seed matches its documented mixing chain") {
  CHECK(respq::derive_seed(42, 7) == 0xaadb85fa3e7c156dULL);
  CHECK(respq::derive_seed(42, 8) == 0xfa729de340d0292eULL);
  CHECK(respq::derive_seed(42, 7, 1) == 0x4a32e537476b7da1ULL);
  CHECK(respq::derive_seed(42, 7, 0, 1) == 0x3e0bcc412d4d0486ULL);
}

TEST_CASE("derive_seed decorrelates neighbouring tags") {
  // A weak smoke test for independence: child streams from adjacent tags
  // should not share leading outputs.
  for (std::uint64_t tag = 0; tag < 32; ++tag) {
    respq::RandomStream a(respq::derive_seed(5, tag));
    respq::RandomStream b(respq::derive_seed(5, tag + 1));
    CHECK(a.next_u64() != b.next_u64());
  }
}

TEST_CASE("pick draws indices proportional to the supplied distribution") {
  const std::vector<double> cdf{0.25, 0.75, 1.0};
  respq::RandomStream s(7);
  std::vector<int> counts(3, 0);
  const int draws = 40000;
  for (int k = 0; k < draws; ++k) counts[s.pick(cdf)]++;
  CHECK(counts[0] / double(draws) == Catch::Approx(0.25).margin(0.02));
  CHECK(counts[1] / double(draws) == Catch::Approx(0.50).margin(0.02));
  CHECK(counts[2] / double(draws) == Catch::Approx(0.25).margin(0.02));
  CHECK_THROWS_AS(s.pick({}), std::invalid_argument);
}

TEST_CASE("pauli terms validate their letters and report weight") {
  CHECK_THROWS_AS(PauliTerm("XQ"), std::invalid_argument);
  CHECK(PauliTerm("IXYZ").weight() == 3);
  CHECK(PauliTerm::identity(3).is_identity());
  CHECK(PauliTerm::single(4, 2, 'Y').word == "IIYI");
  CHECK_THROWS_AS(PauliTerm::single(2, 5, 'X'), std::invalid_argument);
}

TEST_CASE("single-qubit products match the dense multiplication table") {
  const std::string letters = "IXYZ";
  for (char a : letters) {
    for (char b : letters) {
      const auto [phase, term] =
          respq::pauli_mul(PauliTerm(std::string(1, a)), PauliTerm(std::string(1, b)));
      const testref::Mat expect = testref::pauli1(a) * testref::pauli1(b);
      const testref::Mat got = phase * testref::pauli1(term.word[0]);
      INFO(a << " * " << b);
      CHECK((expect - got).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
}

TEST_CASE("multi-qubit word products match dense kronecker products") {
  respq::RandomStream rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string wa = testref::random_word(rng, 3, true);
    const std::string wb = testref::random_word(rng, 3, true);
    const auto [phase, term] = respq::pauli_mul(PauliTerm(wa), PauliTerm(wb));
    const testref::Mat expect = testref::dense_word(wa) * testref::dense_word(wb);
    const testref::Mat got = phase * testref::dense_word(term.word);
    INFO(wa << " * " << wb);
    REQUIRE((expect - got).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("sum arithmetic agrees with dense matrix arithmetic") {
  respq::RandomStream rng(11);
  const int n = 3;
  for (int trial = 0; trial < 10; ++trial) {
    const PauliSum a = testref::random_sum(rng, n, 5);
    const PauliSum b = testref::random_sum(rng, n, 4);
    const testref::Mat da = testref::dense_sum(a, n);
    const testref::Mat db = testref::dense_sum(b, n);

    CHECK((testref::dense_sum(a + b, n) - (da + db)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((testref::dense_sum(a - b, n) - (da - db)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((testref::dense_sum(a * b, n) - da * db).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((testref::dense_sum(a * cplx(0.5, -2.0), n) - cplx(0.5, -2.0) * da)
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    CHECK((testref::dense_sum(a.adjoint(), n) - da.adjoint().eval())
              .cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("to_dense places qubit 0 as the most significant tensor factor") {
  PauliSum s(2);
  s.add("XI", cplx(1.0, 0.0));
  const Eigen::MatrixXcd m = s.to_dense();
  // X on qubit 0 flips the high bit: |00> -> |10>, i.e. column 0 has its
  // amplitude in row 2.
  CHECK(std::abs(m(2, 0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(m(0, 2) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(m(1, 0)) < 1e-15);

  PauliSum y(2);
  y.add("IY", cplx(1.0, 0.0));
  const Eigen::MatrixXcd my = y.to_dense();
  // Y on qubit 1 (low bit): Y|0> = i|1>, so |00> -> i|01>.
  CHECK(std::abs(my(1, 0) - cplx(0.0, 1.0)) < 1e-15);

  PauliSum z(2);
  z.add("ZI", cplx(1.0, 0.0));
  const Eigen::MatrixXcd mz = z.to_dense();
  CHECK(mz(0, 0) == cplx(1.0, 0.0));
  CHECK(mz(1, 1) == cplx(1.0, 0.0));
  CHECK(mz(2, 2) == cplx(-1.0, 0.0));
  CHECK(mz(3, 3) == cplx(-1.0, 0.0));
}

TEST_CASE("near-zero coefficients are pruned from sums") {
  PauliSum s(2);
  s.add("XY", cplx(0.75, 0.0));
  s.add("XY", cplx(-0.75, 0.0));
  CHECK(s.empty());
  s.add("ZZ", cplx(1e-15, 0.0));
  CHECK(s.empty());
}

TEST_CASE("hermiticity check accepts real-weighted words and flags others") {
  respq::RandomStream rng(5);
  const PauliSum h = testref::random_hermitian(rng, 3, 6);
  CHECK(h.is_hermitian());
  PauliSum g = h;
  g.add("XII", cplx(0.0, 0.3));
  CHECK_FALSE(g.is_hermitian());
}

TEST_CASE("jordan-wigner occupation operator is (I - Z)/2") {
  const PauliSum n0 =
      respq::jordan_wigner({{{{0, true}, {0, false}}, cplx(1.0, 0.0)}}, 2);
  PauliSum expect(2);
  expect.add("II", cplx(0.5, 0.0));
  expect.add("ZI", cplx(-0.5, 0.0));
  CHECK((testref::dense_sum(n0 - expect, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("jordan-wigner ladder operators match dense fermion matrices") {
  // Dense reference: on two modes with mode 0 as the high bit,
  //   a_0 = s ⊗ I,  a_1 = Z ⊗ s  with s = |0><1|.
  testref::Mat s(2, 2), z(2, 2), id(2, 2);
  s << 0, 1, 0, 0;
  z << 1, 0, 0, -1;
  id << 1, 0, 0, 1;
  const testref::Mat a0 = testref::kron(s, id);
  const testref::Mat a1 = testref::kron(z, s);

  const PauliSum ja0 = respq::jordan_wigner({{{{0, false}}, cplx(1.0, 0.0)}}, 2);
  const PauliSum ja1 = respq::jordan_wigner({{{{1, false}}, cplx(1.0, 0.0)}}, 2);
  CHECK((testref::dense_sum(ja0, 2) - a0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((testref::dense_sum(ja1, 2) - a1).cwiseAbs().maxCoeff() < 1e-15);

  // Anticommutation {a_p, a†_q} = δ_pq on the dense images.
  const testref::Mat ad1 = a1.adjoint();
  const testref::Mat anti = a0 * ad1 + ad1 * a0;
  CHECK(anti.cwiseAbs().maxCoeff() < 1e-15);
  const testref::Mat anti00 = a0 * a0.adjoint().eval() + a0.adjoint().eval() * a0;
  CHECK((anti00 - testref::Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("jordan-wigner hopping term is hermitian with the right action") {
  const cplx t(0.3, 0.0);
  const PauliSum hop = respq::jordan_wigner(
      {{{{0, true}, {1, false}}, t}, {{{1, true}, {0, false}}, t}}, 2);
  CHECK(hop.is_hermitian());
  // <01| hop |10> = t  (mode 0 occupied -> mode 1 occupied transfer).
  const testref::Mat m = testref::dense_sum(hop, 2);
  CHECK(std::abs(m(2, 1) - t) < 1e-15);
  CHECK(std::abs(m(1, 2) - t) < 1e-15);
}

TEST_CASE("operator text round-trips through write and parse") {
  respq::RandomStream rng(31);
  const PauliSum s = testref::random_sum(rng, 3, 6);
  std::ostringstream out;
  respq::write_pauli_text(out, s);
  std::istringstream in(out.str());
  const PauliSum back = respq::parse_pauli_text(in);
  REQUIRE(back.n() == 3);
  CHECK((testref::dense_sum(back - s, 3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("operator text accepts comments and reports malformed lines") {
  std::istringstream ok("# two-level splitting\n0.5 0 I\n\n-0.5 0 Z\n");
  const PauliSum s = respq::parse_pauli_text(ok);
  CHECK(s.size() == 2);
  CHECK(s.coefficient(PauliTerm("Z")) == cplx(-0.5, 0.0));

  std::istringstream bad_word("1 0 XQ\n");
  CHECK_THROWS_WITH(respq::parse_pauli_text(bad_word, "ops.txt"),
                    Catch::Matchers::ContainsSubstring("ops.txt:1"));

  std::istringstream bad_width("1 0 XX\n1 0 XXX\n");
  CHECK_THROWS_WITH(respq::parse_pauli_text(bad_width),
                    Catch::Matchers::ContainsSubstring("length"));

  std::istringstream bad_number("one 0 X\n");
  CHECK_THROWS(respq::parse_pauli_text(bad_number));

  std::istringstream empty("# nothing here\n");
  CHECK_THROWS(respq::parse_pauli_text(empty));
}

TEST_CASE("reading a missing operator file names the path") {
  CHECK_THROWS_WITH(respq::read_pauli_file("/nonexistent/ops.pauli"),
                    Catch::Matchers::ContainsSubstring("/nonexistent/ops.pauli"));
}
