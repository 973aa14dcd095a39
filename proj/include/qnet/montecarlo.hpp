// montecarlo.hpp
// Sampled phase-estimation runs used to check the closed-form precision.

#pragma once

#include <cstdint>
#include <vector>

#include "qnet/estimation.hpp"
#include "qnet/quantum_core.hpp"

namespace qnet {

struct TrialRecord {
  int repetition_index = 0;
  std::vector<std::uint8_t> node_bits;
  /// Entangled: parity of node_bits. Disentangled: node A's bit.
  int success = 0;
};

struct PrecisionReport {
  int replications = 0;
  double empirical_sigma = 0.0;
  double analytic_epsilon = 0.0;
  double relative_gap = 0.0;
  double mean_estimate = 0.0;
};

enum class SamplingMode {
  /// Draw outcomes from the exact success probability.
  probability,
  /// Disentangled only: prepare, rotate and measure a state vector per node.
  collapse,
};

/// Success probability obtained by simulating the measurement sequence on an
/// explicit state: per-qubit preparation, phase, dephasing, Hadamard and a
/// computational-basis readout (parity for entangled inputs).
double simulate_success_probability(const Scenario& scenario, const NoiseSpec& noise,
                                    const Limits& limits = {});

std::vector<TrialRecord> run_repetitions(const Scenario& scenario, const NoiseSpec& noise,
                                         int repetitions, Rng& rng,
                                         SamplingMode mode = SamplingMode::probability);

/// Independent Bernoulli trials contained in the records: one per node for
/// disentangled inputs, one per repetition for entangled ones.
long long count_trials(const std::vector<TrialRecord>& records, InputKind kind);
long long count_successes(const std::vector<TrialRecord>& records, InputKind kind);

/// Inverts p_success(phi) = successes / trials on the branch
/// phi - phi_ref in [0, pi / multiplier]. Frequencies outside the attainable
/// range are clamped to it.
double estimate_phase(long long successes, long long trials, const Scenario& scenario,
                      const NoiseSpec& noise);

/// Runs `replications` independent estimates of scenario.phi, each from
/// `repetitions` runs at the optimal operating point (phi_ref is reset to
/// phi - optimal_phase_offset), and compares their spread with the
/// error-propagation precision.
PrecisionReport empirical_precision(Scenario scenario, const NoiseSpec& noise, int repetitions,
                                    int replications, std::uint64_t master_seed);

/// Seed of replication `index` derived from `master_seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace qnet
