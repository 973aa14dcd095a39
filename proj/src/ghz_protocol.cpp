#include "qnet/ghz_protocol.hpp"

#include <cmath>
#include <string>

namespace qnet {

namespace {

void check_nodes(int n) {
  if (n < 2) {
    throw std::invalid_argument("distribution needs at least 2 nodes");
  }
}

void check_vector_cap(int n, const Limits& limits) {
  const int qubits = 2 * (n - 1);
  if (qubits > limits.max_vector_qubits) {
    throw CapExceeded("ideal distribution over " + std::to_string(n) + " nodes needs " +
                          std::to_string(qubits) + " qubits, cap is " +
                          std::to_string(limits.max_vector_qubits),
                      limits.max_vector_qubits);
  }
}

void check_density_cap(int n, const Limits& limits) {
  if (n > limits.max_density_qubits) {
    throw CapExceeded("noisy distribution over " + std::to_string(n) +
                          " nodes exceeds density-matrix cap " +
                          std::to_string(limits.max_density_qubits),
                      limits.max_density_qubits);
  }
}

template <class State>
State apply_reference_phase(State s, int n, double phi2) {
  for (int q = 0; q < n; ++q) s = apply_phase(std::move(s), q, -phi2);
  return s;
}

// Layout [a_0 .. a_{n-2}, b_0 .. b_{n-2}]; a_k is A's half of the pair
// shared with B_{k+1} = b_k. Returns the state after the fan-out CNOTs.
StateVector ideal_pairs_after_fanout(int n) {
  const int pairs = n - 1;
  StateVector s(2 * pairs);
  for (int k = 0; k < pairs; ++k) {
    s = apply_hadamard(std::move(s), k);
    s = apply_cnot(std::move(s), k, pairs + k);
  }
  for (int k = 1; k < pairs; ++k) s = apply_cnot(std::move(s), 0, k);
  return s;
}

// Drops the measured targets a_1..a_{n-2}, leaving [A, B_1 .. B_{n-1}].
StateVector drop_targets(StateVector s, int n) {
  for (int k = n - 2; k >= 1; --k) s = drop_qubit(s, k);
  return s;
}

template <class Chooser>
ProtocolResult run_ideal(int n, double phi2, const Limits& limits, Chooser&& choose) {
  check_vector_cap(n, limits);
  const int pairs = n - 1;
  StateVector s = ideal_pairs_after_fanout(n);
  ProtocolResult result;
  result.pairs_consumed = pairs;
  for (int k = 1; k < pairs; ++k) {
    const int bit = choose(s, k);
    s = project(s, k, bit).second;
    result.target_outcomes.push_back(bit);
    if (bit == 1) {
      s = apply_not(std::move(s), pairs + k);
      ++result.corrections_sent;
    }
  }
  s = apply_reference_phase(drop_targets(std::move(s), n), n, phi2);
  const StateVector ghz = prepare_ghz_ideal(n, phi2, limits);
  result.fidelity_vs_ideal = std::norm(ghz.amplitudes().dot(s.amplitudes()));
  result.final_state = std::move(s);
  return result;
}

// Adds pairs one at a time: rho holds [A, B_1 .. B_k], the new pair is
// appended as [a, b], A's CNOT targets a, a is measured and traced out.
// This is the joint 2(n-1)-qubit protocol with the commuting operations
// on later pairs deferred, so the largest matrix has n+1 qubits.
template <class Step>
DensityMatrix run_werner(int n, double f, Step&& step) {
  const DensityMatrix pair = werner_pair(f);
  DensityMatrix rho = pair;
  for (int k = 1; k <= n - 2; ++k) {
    rho = kron(rho, pair);
    const int a = rho.n_qubits() - 2;
    rho = apply_cnot(std::move(rho), 0, a);
    rho = step(std::move(rho), k, a, a + 1);
    rho = trace_out(rho, a);
  }
  return rho;
}

}  // namespace

StateVector prepare_ghz_ideal(int n, double phi2, const Limits& limits) {
  check_nodes(n);
  if (n > limits.max_vector_qubits) {
    throw CapExceeded("GHZ state exceeds state-vector cap", limits.max_vector_qubits);
  }
  StateVector s(n);
  const double amp = 1.0 / std::sqrt(2.0);
  s[0] = amp;
  s[s.dim() - 1] = std::polar(amp, -static_cast<double>(n) * phi2);
  return s;
}

DensityMatrix distribute_werner(int n, double pair_fidelity, double phi2, const Limits& limits) {
  check_nodes(n);
  check_density_cap(n, limits);
  DensityMatrix rho = run_werner(n, pair_fidelity, [](DensityMatrix r, int, int a, int b) {
    // Sum over both outcomes of the corrected, unnormalized branches.
    const double p1 = probability_of_one(r, a);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(r.dim()),
                                                  static_cast<Eigen::Index>(r.dim()));
    if (p1 < 1.0) acc += (1.0 - p1) * project(r, a, 0).second.elements();
    if (p1 > 0.0) acc += p1 * apply_not(project(r, a, 1).second, b).elements();
    return DensityMatrix(std::move(acc));
  });
  return apply_reference_phase(std::move(rho), n, phi2);
}

ProtocolResult run_distribution(int n, const PairSource& source, double phi2, Rng& rng,
                                const Limits& limits) {
  check_nodes(n);
  if (source.is_ideal()) {
    return run_ideal(n, phi2, limits, [&](const StateVector& s, int k) {
      return uniform01(rng) < probability_of_one(s, k) ? 1 : 0;
    });
  }
  check_density_cap(n, limits);
  ProtocolResult result;
  result.pairs_consumed = n - 1;
  DensityMatrix rho =
      run_werner(n, *source.werner_fidelity, [&](DensityMatrix r, int, int a, int b) {
        const int bit = uniform01(rng) < probability_of_one(r, a) ? 1 : 0;
        result.target_outcomes.push_back(bit);
        r = project(r, a, bit).second;
        if (bit == 1) {
          ++result.corrections_sent;
          r = apply_not(std::move(r), b);
        }
        return r;
      });
  result.final_state = apply_reference_phase(std::move(rho), n, phi2);
  result.fidelity_vs_ideal =
      fidelity(distribute_werner(n, *source.werner_fidelity, phi2, limits),
               prepare_ghz_ideal(n, phi2, limits));
  return result;
}

ProtocolResult run_distribution_branch(int n, const PairSource& source, double phi2,
                                       const std::vector<int>& outcomes, const Limits& limits) {
  check_nodes(n);
  if (outcomes.size() != static_cast<std::size_t>(n - 2)) {
    throw std::invalid_argument("expected n-2 target outcomes");
  }
  if (source.is_ideal()) {
    return run_ideal(n, phi2, limits,
                     [&](const StateVector&, int k) { return outcomes[static_cast<std::size_t>(k - 1)]; });
  }
  check_density_cap(n, limits);
  ProtocolResult result;
  result.pairs_consumed = n - 1;
  result.target_outcomes = outcomes;
  DensityMatrix rho =
      run_werner(n, *source.werner_fidelity, [&](DensityMatrix r, int k, int a, int b) {
        const int bit = outcomes[static_cast<std::size_t>(k - 1)];
        r = project(r, a, bit).second;
        if (bit == 1) {
          ++result.corrections_sent;
          r = apply_not(std::move(r), b);
        }
        return r;
      });
  rho = apply_reference_phase(std::move(rho), n, phi2);
  result.fidelity_vs_ideal = fidelity(rho, prepare_ghz_ideal(n, phi2, limits));
  result.final_state = std::move(rho);
  return result;
}

ResourceTally precomputation_cost(int n, double qubit_cost, double bit_cost) {
  if (n < 2) {
    throw std::invalid_argument("precomputation needs at least 2 nodes");
  }
  if (qubit_cost < 0.0 || bit_cost < 0.0) {
    throw std::invalid_argument("costs must be non-negative");
  }
  ResourceTally tally;
  tally.qubit_sends = n - 1;
  tally.classical_sends = n - 2;
  tally.cost_value = static_cast<double>(tally.qubit_sends) * qubit_cost +
                     static_cast<double>(tally.classical_sends) * bit_cost;
  return tally;
}

}  // namespace qnet
