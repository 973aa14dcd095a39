// quantum_core.hpp
// Small exact state-vector and density-matrix simulator used by the
// distribution protocol and the estimation cross-checks.
//
// Qubit ordering: qubit 0 is the most significant bit of the basis index,
// so for n qubits the mask of qubit q is 1 << (n - 1 - q).

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qnet {

using complex = std::complex<double>;
using Rng = std::mt19937_64;

/// Thrown when a requested state exceeds the configured qubit cap.
class CapExceeded : public std::length_error {
 public:
  CapExceeded(const std::string& what, int cap)
      : std::length_error(what), cap_(cap) {}
  int cap() const { return cap_; }

 private:
  int cap_;
};

struct Limits {
  int max_vector_qubits = 20;
  int max_density_qubits = 8;
};

// Absolute ceiling for density matrices built internally (4^12 amplitudes).
inline constexpr int kHardMaxDensityQubits = 12;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
/// Used instead of std::uniform_real_distribution so sampled output is
/// identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);
  /// Takes amplitudes as given; the length must be a power of two and the
  /// norm must be 1 within 1e-9.
  explicit StateVector(Eigen::VectorXcd amplitudes);
  /// Rescales arbitrary non-zero amplitudes to unit norm.
  static StateVector normalized(Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const complex& operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
  complex& operator[](std::size_t i) { return amps_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  int n_qubits_;
  Eigen::VectorXcd amps_;
};

class DensityMatrix {
 public:
  /// |0...0><0...0| on n qubits.
  explicit DensityMatrix(int n_qubits);
  explicit DensityMatrix(Eigen::MatrixXcd elements);
  /// Pure-state projector |psi><psi|.
  explicit DensityMatrix(const StateVector& psi);
  /// I / 2^n.
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  complex operator()(std::size_t i, std::size_t j) const {
    return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  complex& operator()(std::size_t i, std::size_t j) {
    return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXcd& elements() const { return rho_; }
  Eigen::MatrixXcd& elements() { return rho_; }

  complex trace() const { return rho_.trace(); }
  /// Largest |rho - rho^dagger| element.
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// Hermitian and unit trace within `tol`, eigenvalues >= -pos_tol.
  bool is_physical(double tol = 1e-12, double pos_tol = 1e-10) const;

 private:
  int n_qubits_;
  Eigen::MatrixXcd rho_;
};

template <class State>
struct Outcome {
  int bit;
  State post_state;
};

StateVector new_basis_state(int n, std::uint64_t index, const Limits& limits = {});

// Gates. States are taken by value and returned transformed.
StateVector apply_hadamard(StateVector state, int qubit);
StateVector apply_phase(StateVector state, int qubit, double angle);
StateVector apply_cnot(StateVector state, int control, int target);
StateVector apply_not(StateVector state, int qubit);

DensityMatrix apply_hadamard(DensityMatrix rho, int qubit);
DensityMatrix apply_phase(DensityMatrix rho, int qubit, double angle);
DensityMatrix apply_cnot(DensityMatrix rho, int control, int target);
DensityMatrix apply_not(DensityMatrix rho, int qubit);

/// Born probability of reading 1 on `qubit`.
double probability_of_one(const StateVector& state, int qubit);
double probability_of_one(const DensityMatrix& rho, int qubit);

/// Post-selects `qubit` on `bit`. Returns the branch probability and the
/// renormalized post-measurement state. Throws std::domain_error on a
/// zero-probability branch.
std::pair<double, StateVector> project(const StateVector& state, int qubit, int bit);
std::pair<double, DensityMatrix> project(const DensityMatrix& rho, int qubit, int bit);

Outcome<StateVector> measure_qubit(const StateVector& state, int qubit, Rng& rng);
Outcome<DensityMatrix> measure_qubit(const DensityMatrix& rho, int qubit, Rng& rng);

/// x |Phi+><Phi+| + (1 - x) I/4 with x = (4F - 1)/3, F in [1/4, 1].
DensityMatrix werner_pair(double fidelity);

/// x |psi><psi| + (1 - x) I / 2^n.
DensityMatrix global_mixture(const StateVector& ideal, double weight, const Limits& limits = {});

/// Scales coherences between |0> and |1> of `qubit` by `decay` in [0, 1].
DensityMatrix dephase(DensityMatrix rho, int qubit, double decay);

/// <psi| rho |psi>.
double fidelity(const DensityMatrix& rho, const StateVector& psi);

/// Tensor product; `a` occupies the leading (more significant) qubits.
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);
StateVector kron(const StateVector& a, const StateVector& b);

/// Partial trace over one qubit.
DensityMatrix trace_out(const DensityMatrix& rho, int qubit);

/// Removes a qubit that is in a definite computational basis state.
/// Throws std::domain_error if the qubit is entangled or in superposition.
StateVector drop_qubit(const StateVector& state, int qubit);

/// Probability that the XOR of all computational-basis bits is 1.
double odd_parity_probability(const StateVector& state);
double odd_parity_probability(const DensityMatrix& rho);

}  // namespace qnet
