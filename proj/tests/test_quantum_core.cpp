#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qnet/quantum_core.hpp"
#include "test_helpers.hpp"

using namespace qnet;
using qnet::test::max_abs_diff;
using qnet::test::random_state;

namespace {
const double kS = 1.0 / std::sqrt(2.0);

// Direct dense-matrix oracle for gates: builds the full 2^n unitary.
Eigen::MatrixXcd embed(int n, int qubit, const Eigen::Matrix2cd& u) {
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::MatrixXcd f = q == qubit ? Eigen::MatrixXcd(u) : Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd next(full.rows() * 2, full.cols() * 2);
    for (Eigen::Index i = 0; i < full.rows(); ++i)
      for (Eigen::Index j = 0; j < full.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = full(i, j) * f;
    full = next;
  }
  return full;
}
}  // namespace

TEST_CASE("basis states") {
  const auto s = new_basis_state(2, 0);
  CHECK(s.dim() == 4);
  CHECK(s[0] == complex(1.0));
  CHECK(std::abs(s[1]) == 0.0);
  CHECK(new_basis_state(1, 1)[1] == complex(1.0));
  CHECK(new_basis_state(3, 7)[7] == complex(1.0));
  CHECK_THROWS_AS(new_basis_state(2, 4), std::out_of_range);
  CHECK_THROWS_AS(new_basis_state(21, 0), CapExceeded);
  Limits small{.max_vector_qubits = 3};
  CHECK_THROWS_AS(new_basis_state(4, 0, small), CapExceeded);
}

TEST_CASE("hadamard follows the |0><0| - |1><1| + |0><1| + |1><0| convention") {
  const auto h0 = apply_hadamard(new_basis_state(1, 0), 0);
  CHECK(std::abs(h0[0] - kS) < 1e-15);
  CHECK(std::abs(h0[1] - kS) < 1e-15);
  const auto h1 = apply_hadamard(new_basis_state(1, 1), 0);
  CHECK(std::abs(h1[0] - kS) < 1e-15);
  CHECK(std::abs(h1[1] + kS) < 1e-15);
  CHECK_THROWS_AS(apply_hadamard(new_basis_state(1, 0), 1), std::out_of_range);

  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = random_state(3, rng);
    for (int q = 0; q < 3; ++q) {
      const auto back = apply_hadamard(apply_hadamard(psi, q), q);
      CHECK(max_abs_diff(back.amplitudes(), psi.amplitudes()) < 1e-12);
    }
  }
}

TEST_CASE("phase gate") {
  const auto z = apply_phase(new_basis_state(1, 0), 0, 0.7);
  CHECK(z[0] == complex(1.0));
  const auto one = apply_phase(new_basis_state(1, 1), 0, std::numbers::pi);
  CHECK(std::abs(one[1] + 1.0) < 1e-15);
  const double phi = 0.3;
  const auto plus = apply_phase(apply_hadamard(new_basis_state(1, 0), 0), 0, phi);
  CHECK(std::abs(plus[0] - kS) < 1e-15);
  CHECK(std::abs(plus[1] - std::polar(kS, phi)) < 1e-15);
}

TEST_CASE("cnot and not") {
  CHECK(apply_cnot(new_basis_state(2, 0b10), 0, 1)[0b11] == complex(1.0));
  CHECK(apply_cnot(new_basis_state(2, 0b00), 0, 1)[0b00] == complex(1.0));
  CHECK(apply_cnot(new_basis_state(2, 0b01), 0, 1)[0b01] == complex(1.0));
  CHECK_THROWS_AS(apply_cnot(new_basis_state(2, 0), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(apply_cnot(new_basis_state(2, 0), 0, 2), std::out_of_range);

  CHECK(apply_not(new_basis_state(1, 0), 0)[1] == complex(1.0));
  CHECK(apply_not(new_basis_state(1, 1), 0)[0] == complex(1.0));
  Rng rng(2);
  const auto psi = random_state(3, rng);
  CHECK(max_abs_diff(apply_not(apply_not(psi, 2), 2).amplitudes(), psi.amplitudes()) == 0.0);

  // Bell pair plus a fresh |0>, CNOT from qubit 0 onto it: (|000> + |111>)/sqrt2.
  StateVector bell = apply_cnot(apply_hadamard(new_basis_state(2, 0), 0), 0, 1);
  StateVector three = apply_cnot(kron(bell, new_basis_state(1, 0)), 0, 2);
  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(8);
  expected[0] = kS;
  expected[7] = kS;
  CHECK(max_abs_diff(three.amplitudes(), expected) < 1e-15);
}

TEST_CASE("gates agree with the dense-matrix oracle and preserve norm") {
  Rng rng(3);
  Eigen::Matrix2cd h;
  h << kS, kS, kS, -kS;
  for (int trial = 0; trial < 10; ++trial) {
    const auto psi = random_state(4, rng);
    for (int q = 0; q < 4; ++q) {
      const Eigen::VectorXcd want = embed(4, q, h) * psi.amplitudes();
      const auto got = apply_hadamard(psi, q);
      CHECK(max_abs_diff(got.amplitudes(), want) < 1e-12);
      CHECK(std::abs(got.norm() - 1.0) < 1e-12);
      CHECK(std::abs(apply_phase(psi, q, 1.1).norm() - 1.0) < 1e-12);
      CHECK(std::abs(apply_cnot(psi, q, (q + 1) % 4).norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("density-matrix gates match U rho U^dagger") {
  Rng rng(4);
  const auto psi = random_state(3, rng);
  const DensityMatrix rho(psi);
  auto check = [&](const StateVector& out, const DensityMatrix& out_rho) {
    CHECK(max_abs_diff(DensityMatrix(out).elements(), out_rho.elements()) < 1e-12);
    CHECK(out_rho.is_physical());
  };
  check(apply_hadamard(psi, 1), apply_hadamard(rho, 1));
  check(apply_phase(psi, 2, 0.4), apply_phase(rho, 2, 0.4));
  check(apply_cnot(psi, 2, 0), apply_cnot(rho, 2, 0));
  check(apply_not(psi, 0), apply_not(rho, 0));
}

TEST_CASE("measurement") {
  Rng rng(5);
  CHECK(measure_qubit(new_basis_state(1, 0), 0, rng).bit == 0);
  CHECK(probability_of_one(apply_hadamard(new_basis_state(1, 0), 0), 0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(project(new_basis_state(1, 0), 0, 1), std::domain_error);

  Eigen::VectorXcd amps(2);
  amps << std::sqrt(0.3), std::sqrt(0.7);
  const StateVector psi(amps);
  long long ones = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ones += measure_qubit(psi, 0, rng).bit;
  CHECK(qnet::test::within_binomial(ones, draws, 0.7));

  // Post-measurement state collapses.
  const auto out = measure_qubit(apply_hadamard(new_basis_state(2, 0), 0), 0, rng);
  CHECK(std::abs(out.post_state[out.bit ? 0b10 : 0b00]) == doctest::Approx(1.0));
  const auto dm_out = measure_qubit(DensityMatrix(psi), 0, rng);
  CHECK(dm_out.post_state.is_physical());
}

TEST_CASE("measurement passes chi-square against Born probabilities") {
  // Two-qubit state, both qubits measured; chi-square with 3 dof at
  // significance 0.001 has critical value 16.266.
  Rng rng(6);
  const auto psi = random_state(2, rng);
  std::array<long long, 4> counts{};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto first = measure_qubit(psi, 0, rng);
    const auto second = measure_qubit(first.post_state, 1, rng);
    ++counts[static_cast<std::size_t>(first.bit * 2 + second.bit)];
  }
  double chi2 = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double expected = draws * std::norm(psi[k]);
    chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
  }
  CHECK(chi2 < 16.266);
}

TEST_CASE("werner pairs") {
  Eigen::VectorXcd phi(4);
  phi << kS, 0, 0, kS;
  const StateVector phi_plus(phi);
  const auto pure = werner_pair(1.0);
  CHECK(max_abs_diff(pure.elements(), DensityMatrix(phi_plus).elements()) < 1e-15);
  CHECK(max_abs_diff(werner_pair(0.25).elements(), DensityMatrix::maximally_mixed(2).elements()) <
        1e-15);
  const auto w = werner_pair(0.9);
  // x = (4 * 0.9 - 1) / 3 = 0.8666...; <Phi+|rho|Phi+> = x + (1 - x)/4.
  CHECK(std::abs(w(0, 3).real() - 0.5 * (2.6 / 3.0)) < 1e-15);
  CHECK(std::abs(fidelity(w, phi_plus) - 0.9) < 1e-12);
  CHECK(w.is_physical());
  CHECK_THROWS_AS(werner_pair(0.2), std::invalid_argument);
  CHECK_THROWS_AS(werner_pair(1.01), std::invalid_argument);
}

TEST_CASE("global mixture fidelity relation") {
  Rng rng(7);
  for (int n = 1; n <= 5; ++n) {
    const auto psi = random_state(n, rng);
    for (double x : {0.0, 0.2, 0.8, 1.0}) {
      const auto rho = global_mixture(psi, x);
      CHECK(rho.is_physical());
      CHECK(std::abs(fidelity(rho, psi) - (x + (1.0 - x) / std::ldexp(1.0, n))) < 1e-12);
    }
  }
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(8);
  g[0] = kS;
  g[7] = kS;
  CHECK(std::abs(fidelity(global_mixture(StateVector(g), 0.8), StateVector(g)) - 0.825) < 1e-12);
  CHECK(std::abs(fidelity(DensityMatrix::maximally_mixed(3), StateVector(g)) - 0.125) < 1e-15);
  CHECK_THROWS_AS(global_mixture(StateVector(g), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(global_mixture(new_basis_state(9, 0), 0.5), CapExceeded);
}

TEST_CASE("dephasing") {
  const DensityMatrix plus(apply_hadamard(new_basis_state(1, 0), 0));
  CHECK(max_abs_diff(dephase(plus, 0, 1.0).elements(), plus.elements()) == 0.0);
  const auto full = dephase(plus, 0, 0.0);
  CHECK(std::abs(full(0, 1)) == 0.0);
  CHECK(full(0, 0).real() == doctest::Approx(0.5));
  CHECK(full(1, 1).real() == doctest::Approx(0.5));
  const auto half = dephase(plus, 0, 0.3);
  CHECK(std::abs(half(0, 1) - 0.15) < 1e-15);
  CHECK(half.is_physical());
  CHECK_THROWS_AS(dephase(plus, 0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(dephase(plus, 1, 0.5), std::out_of_range);

  // Repeated channels keep the matrix physical.
  Rng rng(8);
  DensityMatrix rho = global_mixture(random_state(4, rng), 0.7);
  for (int round = 0; round < 50; ++round) {
    rho = dephase(apply_hadamard(apply_phase(rho, round % 4, 0.37), (round + 1) % 4), round % 4, 0.97);
  }
  CHECK(rho.is_physical());
}

TEST_CASE("fidelity dimension mismatch and partial trace") {
  CHECK_THROWS_AS(fidelity(DensityMatrix(2), new_basis_state(1, 0)), std::invalid_argument);
  const auto bell = DensityMatrix(apply_cnot(apply_hadamard(new_basis_state(2, 0), 0), 0, 1));
  CHECK(max_abs_diff(trace_out(bell, 1).elements(), DensityMatrix::maximally_mixed(1).elements()) <
        1e-15);
  const auto psi = kron(new_basis_state(1, 1), apply_hadamard(new_basis_state(1, 0), 0));
  const auto dropped = drop_qubit(psi, 0);
  CHECK(std::abs(dropped[0] - kS) < 1e-15);
  CHECK_THROWS_AS(drop_qubit(psi, 1), std::domain_error);
}
