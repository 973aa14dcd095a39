// ghz_protocol.hpp
// Star-network GHZ distribution: the central node A shares one EPR pair
// with each of the n-1 outer nodes B_k, fans out with CNOTs from its first
// half-pair onto the others, measures those targets and tells each B_k with
// a 1 outcome to apply a NOT. Every node then applies the reference phase.
//
// Output qubit order is [A, B_1, ..., B_{n-1}].

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qnet/quantum_core.hpp"

namespace qnet {

/// Source of the A-B_k pairs: ideal EPR pairs or Werner pairs of fidelity F.
struct PairSource {
  std::optional<double> werner_fidelity;

  static PairSource ideal() { return {}; }
  static PairSource werner(double f) { return {f}; }
  bool is_ideal() const { return !werner_fidelity.has_value(); }
};

struct ProtocolResult {
  std::variant<StateVector, DensityMatrix> final_state{StateVector(1)};
  /// NOT corrections signalled to outer nodes in the reported branch.
  int corrections_sent = 0;
  int pairs_consumed = 0;
  double fidelity_vs_ideal = 0.0;
  /// Outcomes of the n-2 target measurements at A for the reported branch.
  std::vector<int> target_outcomes;
};

struct ResourceTally {
  long long qubit_sends = 0;
  long long classical_sends = 0;
  double cost_value = 0.0;
};

/// (|0...0> + e^{-i n phi2} |1...1>) / sqrt(2).
StateVector prepare_ghz_ideal(int n, double phi2, const Limits& limits = {});

/// Runs the distribution protocol with sampled target measurements.
///
/// Ideal pairs are simulated as a 2(n-1)-qubit state vector. Werner pairs
/// are simulated as density matrices; the reported fidelity is the
/// branch-averaged value computed by exact enumeration of the measurement
/// branches, so it does not depend on `rng`. The returned state and
/// correction count belong to the sampled branch. For noisy sources n is
/// capped at limits.max_density_qubits.
ProtocolResult run_distribution(int n, const PairSource& source, double phi2, Rng& rng,
                                const Limits& limits = {});

/// Same protocol with the target outcomes forced to `outcomes` (length n-2).
/// Throws std::domain_error if that branch has zero probability.
ProtocolResult run_distribution_branch(int n, const PairSource& source, double phi2,
                                       const std::vector<int>& outcomes,
                                       const Limits& limits = {});

/// Branch-averaged GHZ state produced from Werner pairs of fidelity F.
DensityMatrix distribute_werner(int n, double pair_fidelity, double phi2,
                                const Limits& limits = {});

/// (n-1) qubit sends and (n-2) classical correction messages.
ResourceTally precomputation_cost(int n, double qubit_cost, double bit_cost);

}  // namespace qnet
