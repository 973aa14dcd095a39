#include "qnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnet/ghz_protocol.hpp"

namespace qnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// (|0> + e^{-i phi_ref} |1>)/sqrt(2), phase phi, then H; returns the state.
StateVector single_qubit_readout_state(double phi, double phi_ref) {
  StateVector s = apply_hadamard(StateVector(1), 0);
  s = apply_phase(std::move(s), 0, -phi_ref);
  s = apply_phase(std::move(s), 0, phi);
  return apply_hadamard(std::move(s), 0);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ index);
}

double simulate_success_probability(const Scenario& scenario, const NoiseSpec& noise,
                                    const Limits& limits) {
  scenario.validate();
  noise.validate(scenario.kind);
  const double decay = std::exp(-noise.gt());

  if (scenario.kind == InputKind::disentangled) {
    DensityMatrix rho(apply_hadamard(StateVector(1), 0));
    rho = apply_phase(std::move(rho), 0, -scenario.phi_ref);
    rho = apply_phase(std::move(rho), 0, scenario.phi);
    rho = dephase(std::move(rho), 0, decay);
    rho = apply_hadamard(std::move(rho), 0);
    return probability_of_one(rho, 0);
  }

  const int n = scenario.n;
  StateVector ghz = n == 1 ? apply_phase(apply_hadamard(StateVector(1), 0), 0, -scenario.phi_ref)
                           : prepare_ghz_ideal(n, scenario.phi_ref, limits);
  const double weight = noise.x_n * noise.F;
  if (weight == 1.0 && decay == 1.0) {
    for (int q = 0; q < n; ++q) {
      ghz = apply_phase(std::move(ghz), q, scenario.phi);
      ghz = apply_hadamard(std::move(ghz), q);
    }
    return odd_parity_probability(ghz);
  }
  DensityMatrix rho = global_mixture(ghz, weight, limits);
  for (int q = 0; q < n; ++q) {
    rho = apply_phase(std::move(rho), q, scenario.phi);
    rho = dephase(std::move(rho), q, decay);
    rho = apply_hadamard(std::move(rho), q);
  }
  return odd_parity_probability(rho);
}

std::vector<TrialRecord> run_repetitions(const Scenario& scenario, const NoiseSpec& noise,
                                         int repetitions, Rng& rng, SamplingMode mode) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  const bool collapse = mode == SamplingMode::collapse;
  if (collapse && (scenario.kind != InputKind::disentangled || noise.computation_noise())) {
    throw std::invalid_argument("collapse sampling supports ideal disentangled runs only");
  }
  const int n = scenario.n;
  const double p = simulate_success_probability(scenario, noise);
  const StateVector readout =
      collapse ? single_qubit_readout_state(scenario.phi, scenario.phi_ref) : StateVector(1);

  std::vector<TrialRecord> records;
  records.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    TrialRecord rec;
    rec.repetition_index = r;
    rec.node_bits.resize(static_cast<std::size_t>(n));
    if (scenario.kind == InputKind::disentangled) {
      for (auto& bit : rec.node_bits) {
        bit = collapse ? static_cast<std::uint8_t>(measure_qubit(readout, 0, rng).bit)
                       : static_cast<std::uint8_t>(uniform01(rng) < p);
      }
      rec.success = rec.node_bits[0];
    } else {
      // Any n-1 readout bits of the GHZ measurement are uniform; the last
      // one fixes the parity drawn from p.
      const int parity = uniform01(rng) < p ? 1 : 0;
      int acc = 0;
      for (int q = 0; q + 1 < n; ++q) {
        rec.node_bits[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(rng() >> 63);
        acc ^= rec.node_bits[static_cast<std::size_t>(q)];
      }
      rec.node_bits.back() = static_cast<std::uint8_t>(acc ^ parity);
      rec.success = parity;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

long long count_trials(const std::vector<TrialRecord>& records, InputKind kind) {
  if (kind == InputKind::entangled) return static_cast<long long>(records.size());
  long long total = 0;
  for (const auto& r : records) total += static_cast<long long>(r.node_bits.size());
  return total;
}

long long count_successes(const std::vector<TrialRecord>& records, InputKind kind) {
  long long total = 0;
  for (const auto& r : records) {
    if (kind == InputKind::entangled) {
      total += r.success;
    } else {
      for (auto bit : r.node_bits) total += bit;
    }
  }
  return total;
}

double estimate_phase(long long successes, long long trials, const Scenario& scenario,
                      const NoiseSpec& noise) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("need 0 <= successes <= trials and trials >= 1");
  }
  const SignalModel m = signal_model(scenario, noise);
  if (m.contrast() == 0.0) {
    throw NoInformation("zero contrast: outcome frequencies carry no phase information");
  }
  const double p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  const double c = std::clamp((1.0 - 2.0 * p_hat) / m.contrast(), -1.0, 1.0);
  return scenario.phi_ref + std::acos(c) / m.multiplier;
}

PrecisionReport empirical_precision(Scenario scenario, const NoiseSpec& noise, int repetitions,
                                    int replications, std::uint64_t master_seed) {
  if (replications < 30) throw std::invalid_argument("need at least 30 replications");
  scenario.phi_ref = scenario.phi - optimal_phase_offset(scenario);

  double sum = 0.0, sum_sq = 0.0;
  long long trials = 0;
  for (int i = 0; i < replications; ++i) {
    Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(i)));
    const auto records = run_repetitions(scenario, noise, repetitions, rng);
    trials = count_trials(records, scenario.kind);
    const double est =
        estimate_phase(count_successes(records, scenario.kind), trials, scenario, noise);
    const double dev = est - scenario.phi;
    sum += dev;
    sum_sq += dev * dev;
  }

  PrecisionReport report;
  report.replications = replications;
  const double k = replications;
  const double mean_dev = sum / k;
  report.mean_estimate = scenario.phi + mean_dev;
  report.empirical_sigma = std::sqrt(std::max(0.0, (sum_sq - k * mean_dev * mean_dev) / (k - 1.0)));
  report.analytic_epsilon =
      precision(p_success(scenario, noise), p_success_derivative(scenario, noise),
                static_cast<double>(trials));
  report.relative_gap =
      std::abs(report.empirical_sigma - report.analytic_epsilon) / report.analytic_epsilon;
  return report;
}

}  // namespace qnet
