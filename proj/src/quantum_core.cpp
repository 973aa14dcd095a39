#include "qnet/quantum_core.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qnet {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t mask_of(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

void check_qubit(int n_qubits, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(n_qubits) + " qubits");
  }
}

void check_pair(int n_qubits, int control, int target) {
  check_qubit(n_qubits, control);
  check_qubit(n_qubits, target);
  if (control == target) {
    throw std::invalid_argument("control and target must differ");
  }
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw std::invalid_argument("dimension must be a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

struct Gate2 {
  complex u00, u01, u10, u11;
};

const Gate2 kHadamard{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};

Gate2 phase_gate(double angle) {
  return {1.0, 0.0, 0.0, std::polar(1.0, angle)};
}

void apply_gate(Eigen::VectorXcd& v, int n, int qubit, const Gate2& g) {
  const std::size_t mask = mask_of(n, qubit);
  const auto dim = static_cast<std::size_t>(v.size());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(i | mask);
    const complex x = v[a], y = v[b];
    v[a] = g.u00 * x + g.u01 * y;
    v[b] = g.u10 * x + g.u11 * y;
  }
}

// rho -> U rho U^dagger.
void apply_gate(Eigen::MatrixXcd& rho, int n, int qubit, const Gate2& g) {
  const std::size_t mask = mask_of(n, qubit);
  const auto dim = static_cast<std::size_t>(rho.rows());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(i | mask);
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      const complex x = rho(a, c), y = rho(b, c);
      rho(a, c) = g.u00 * x + g.u01 * y;
      rho(b, c) = g.u10 * x + g.u11 * y;
    }
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
      const complex x = rho(r, a), y = rho(r, b);
      rho(r, a) = x * std::conj(g.u00) + y * std::conj(g.u01);
      rho(r, b) = x * std::conj(g.u10) + y * std::conj(g.u11);
    }
  }
}

template <class Perm>
Eigen::VectorXcd permute(const Eigen::VectorXcd& v, Perm sigma) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(sigma(static_cast<std::size_t>(i)))] = v[i];
  }
  return out;
}

template <class Perm>
Eigen::MatrixXcd permute(const Eigen::MatrixXcd& m, Perm sigma) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto si = static_cast<Eigen::Index>(sigma(static_cast<std::size_t>(i)));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(si, static_cast<Eigen::Index>(sigma(static_cast<std::size_t>(j)))) = m(i, j);
    }
  }
  return out;
}

// Inserts `bit` at position `mask` into an index of the reduced space.
std::size_t insert_bit(std::size_t reduced, std::size_t mask, int bit) {
  const std::size_t high = (reduced & ~(mask - 1)) << 1;
  const std::size_t low = reduced & (mask - 1);
  return high | (bit ? mask : 0) | low;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 62) {
    throw std::invalid_argument("n_qubits must be >= 1");
  }
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps_[0] = 1.0;
}

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : n_qubits_(qubits_for_dim(amplitudes.size())), amps_(std::move(amplitudes)) {
  if (std::abs(amps_.squaredNorm() - 1.0) > 1e-9) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::normalized(Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  return StateVector(Eigen::VectorXcd(amplitudes / norm));
}

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kHardMaxDensityQubits) {
    throw CapExceeded("density matrix of " + std::to_string(n_qubits) + " qubits exceeds hard cap",
                      kHardMaxDensityQubits);
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  rho_ = Eigen::MatrixXcd::Zero(dim, dim);
  rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd elements)
    : n_qubits_(qubits_for_dim(elements.rows())), rho_(std::move(elements)) {
  if (rho_.rows() != rho_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
}

DensityMatrix::DensityMatrix(const StateVector& psi)
    : n_qubits_(psi.n_qubits()), rho_(psi.amplitudes() * psi.amplitudes().adjoint()) {
  if (n_qubits_ > kHardMaxDensityQubits) {
    throw CapExceeded("density matrix exceeds hard cap", kHardMaxDensityQubits);
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  DensityMatrix rho(n_qubits);
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  rho.rho_ = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  return rho;
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Eigen::MatrixXcd h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical(double tol, double pos_tol) const {
  const complex tr = trace();
  return hermiticity_error() <= tol && std::abs(tr.real() - 1.0) <= tol &&
         std::abs(tr.imag()) <= tol && min_eigenvalue() >= -pos_tol;
}

StateVector new_basis_state(int n, std::uint64_t index, const Limits& limits) {
  if (n < 1) {
    throw std::invalid_argument("n must be >= 1");
  }
  if (n > limits.max_vector_qubits) {
    throw CapExceeded("state vector of " + std::to_string(n) + " qubits exceeds cap " +
                          std::to_string(limits.max_vector_qubits),
                      limits.max_vector_qubits);
  }
  if (index >= (std::uint64_t{1} << n)) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range");
  }
  StateVector s(n);
  s[0] = 0.0;
  s[index] = 1.0;
  return s;
}

StateVector apply_hadamard(StateVector state, int qubit) {
  check_qubit(state.n_qubits(), qubit);
  apply_gate(state.amplitudes(), state.n_qubits(), qubit, kHadamard);
  return state;
}

StateVector apply_phase(StateVector state, int qubit, double angle) {
  check_qubit(state.n_qubits(), qubit);
  apply_gate(state.amplitudes(), state.n_qubits(), qubit, phase_gate(angle));
  return state;
}

StateVector apply_cnot(StateVector state, int control, int target) {
  const int n = state.n_qubits();
  check_pair(n, control, target);
  const std::size_t cm = mask_of(n, control), tm = mask_of(n, target);
  state.amplitudes() =
      permute(state.amplitudes(), [&](std::size_t i) { return (i & cm) ? i ^ tm : i; });
  return state;
}

StateVector apply_not(StateVector state, int qubit) {
  const int n = state.n_qubits();
  check_qubit(n, qubit);
  const std::size_t m = mask_of(n, qubit);
  state.amplitudes() = permute(state.amplitudes(), [&](std::size_t i) { return i ^ m; });
  return state;
}

DensityMatrix apply_hadamard(DensityMatrix rho, int qubit) {
  check_qubit(rho.n_qubits(), qubit);
  apply_gate(rho.elements(), rho.n_qubits(), qubit, kHadamard);
  return rho;
}

DensityMatrix apply_phase(DensityMatrix rho, int qubit, double angle) {
  check_qubit(rho.n_qubits(), qubit);
  apply_gate(rho.elements(), rho.n_qubits(), qubit, phase_gate(angle));
  return rho;
}

DensityMatrix apply_cnot(DensityMatrix rho, int control, int target) {
  const int n = rho.n_qubits();
  check_pair(n, control, target);
  const std::size_t cm = mask_of(n, control), tm = mask_of(n, target);
  rho.elements() = permute(rho.elements(), [&](std::size_t i) { return (i & cm) ? i ^ tm : i; });
  return rho;
}

DensityMatrix apply_not(DensityMatrix rho, int qubit) {
  const int n = rho.n_qubits();
  check_qubit(n, qubit);
  const std::size_t m = mask_of(n, qubit);
  rho.elements() = permute(rho.elements(), [&](std::size_t i) { return i ^ m; });
  return rho;
}

double probability_of_one(const StateVector& state, int qubit) {
  check_qubit(state.n_qubits(), qubit);
  const std::size_t m = mask_of(state.n_qubits(), qubit);
  double p = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (i & m) p += std::norm(state[i]);
  }
  return p;
}

double probability_of_one(const DensityMatrix& rho, int qubit) {
  check_qubit(rho.n_qubits(), qubit);
  const std::size_t m = mask_of(rho.n_qubits(), qubit);
  double p = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (i & m) p += rho(i, i).real();
  }
  return p;
}

std::pair<double, StateVector> project(const StateVector& state, int qubit, int bit) {
  check_qubit(state.n_qubits(), qubit);
  const std::size_t m = mask_of(state.n_qubits(), qubit);
  Eigen::VectorXcd amps = state.amplitudes();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (((i & m) != 0) != (bit != 0)) amps[static_cast<Eigen::Index>(i)] = 0.0;
  }
  const double p = amps.squaredNorm();
  if (p <= 0.0) {
    throw std::domain_error("projection onto a zero-probability branch");
  }
  return {p, StateVector(Eigen::VectorXcd(amps / std::sqrt(p)))};
}

std::pair<double, DensityMatrix> project(const DensityMatrix& rho, int qubit, int bit) {
  check_qubit(rho.n_qubits(), qubit);
  const std::size_t m = mask_of(rho.n_qubits(), qubit);
  Eigen::MatrixXcd out = rho.elements();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (((i & m) != 0) == (bit != 0)) continue;
    out.row(static_cast<Eigen::Index>(i)).setZero();
    out.col(static_cast<Eigen::Index>(i)).setZero();
  }
  const double p = out.trace().real();
  if (p <= 0.0) {
    throw std::domain_error("projection onto a zero-probability branch");
  }
  return {p, DensityMatrix(Eigen::MatrixXcd(out / p))};
}

Outcome<StateVector> measure_qubit(const StateVector& state, int qubit, Rng& rng) {
  const double p1 = probability_of_one(state, qubit);
  const int bit = uniform01(rng) < p1 ? 1 : 0;
  return {bit, project(state, qubit, bit).second};
}

Outcome<DensityMatrix> measure_qubit(const DensityMatrix& rho, int qubit, Rng& rng) {
  const double p1 = probability_of_one(rho, qubit);
  const int bit = uniform01(rng) < p1 ? 1 : 0;
  return {bit, project(rho, qubit, bit).second};
}

DensityMatrix werner_pair(double fidelity) {
  if (!(fidelity >= 0.25 && fidelity <= 1.0)) {
    throw std::invalid_argument("Werner fidelity must lie in [1/4, 1]");
  }
  const double x = (4.0 * fidelity - 1.0) / 3.0;
  Eigen::VectorXcd phi_plus = Eigen::VectorXcd::Zero(4);
  phi_plus[0] = kInvSqrt2;
  phi_plus[3] = kInvSqrt2;
  Eigen::MatrixXcd rho =
      x * (phi_plus * phi_plus.adjoint()) + (1.0 - x) * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix global_mixture(const StateVector& ideal, double weight, const Limits& limits) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  }
  if (ideal.n_qubits() > limits.max_density_qubits) {
    throw CapExceeded("density matrix of " + std::to_string(ideal.n_qubits()) +
                          " qubits exceeds cap " + std::to_string(limits.max_density_qubits),
                      limits.max_density_qubits);
  }
  const auto dim = static_cast<Eigen::Index>(ideal.dim());
  Eigen::MatrixXcd rho = weight * (ideal.amplitudes() * ideal.amplitudes().adjoint()) +
                         (1.0 - weight) * Eigen::MatrixXcd::Identity(dim, dim) /
                             static_cast<double>(dim);
  return DensityMatrix(std::move(rho));
}

DensityMatrix dephase(DensityMatrix rho, int qubit, double decay) {
  check_qubit(rho.n_qubits(), qubit);
  if (!(decay >= 0.0 && decay <= 1.0)) {
    throw std::invalid_argument("decay factor must lie in [0, 1]");
  }
  const std::size_t m = mask_of(rho.n_qubits(), qubit);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      if ((i & m) != (j & m)) rho(i, j) *= decay;
    }
  }
  return rho;
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const complex f = psi.amplitudes().dot(rho.elements() * psi.amplitudes());
  return f.real();
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n_qubits() + b.n_qubits() > kHardMaxDensityQubits) {
    throw CapExceeded("tensor product exceeds hard density cap", kHardMaxDensityQubits);
  }
  const auto da = static_cast<Eigen::Index>(a.dim()), db = static_cast<Eigen::Index>(b.dim());
  Eigen::MatrixXcd out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.elements()(i, j) * b.elements();
    }
  }
  return DensityMatrix(std::move(out));
}

StateVector kron(const StateVector& a, const StateVector& b) {
  const auto da = static_cast<Eigen::Index>(a.dim()), db = static_cast<Eigen::Index>(b.dim());
  Eigen::VectorXcd out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out.segment(i * db, db) = a.amplitudes()[i] * b.amplitudes();
  }
  return StateVector(std::move(out));
}

DensityMatrix trace_out(const DensityMatrix& rho, int qubit) {
  const int n = rho.n_qubits();
  check_qubit(n, qubit);
  if (n == 1) {
    throw std::invalid_argument("cannot trace out the only qubit");
  }
  const std::size_t m = mask_of(n, qubit);
  const std::size_t half = rho.dim() / 2;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(half), static_cast<Eigen::Index>(half));
  for (std::size_t i = 0; i < half; ++i) {
    for (std::size_t j = 0; j < half; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rho(insert_bit(i, m, 0), insert_bit(j, m, 0)) +
          rho(insert_bit(i, m, 1), insert_bit(j, m, 1));
    }
  }
  return DensityMatrix(std::move(out));
}

StateVector drop_qubit(const StateVector& state, int qubit) {
  const int n = state.n_qubits();
  check_qubit(n, qubit);
  if (n == 1) {
    throw std::invalid_argument("cannot drop the only qubit");
  }
  const double p1 = probability_of_one(state, qubit);
  int bit;
  if (p1 < 1e-12) {
    bit = 0;
  } else if (p1 > 1.0 - 1e-12) {
    bit = 1;
  } else {
    throw std::domain_error("qubit is not in a definite basis state");
  }
  const std::size_t m = mask_of(n, qubit);
  const std::size_t half = state.dim() / 2;
  Eigen::VectorXcd out(static_cast<Eigen::Index>(half));
  for (std::size_t i = 0; i < half; ++i) {
    out[static_cast<Eigen::Index>(i)] = state[insert_bit(i, m, bit)];
  }
  return StateVector::normalized(std::move(out));
}

double odd_parity_probability(const StateVector& state) {
  double p = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (std::popcount(i) & 1) p += std::norm(state[i]);
  }
  return p;
}

double odd_parity_probability(const DensityMatrix& rho) {
  double p = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (std::popcount(i) & 1) p += rho(i, i).real();
  }
  return p;
}

}  // namespace qnet
