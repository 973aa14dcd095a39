// estimation.hpp
// Outcome probabilities, error-propagation precision and required
// repetition counts for phase estimation with independent qubits
// (disentangled) or a shared GHZ state (entangled).
//
// The "success" outcome is the one with probability 1/2 (1 - cos(.)):
// outcome 1 of a single qubit, or odd parity of the GHZ readout.

#pragma once

#include <stdexcept>

namespace qnet {

enum class InputKind { disentangled, entangled };

const char* to_string(InputKind kind);

/// Raised when the measurement carries no information about the phase.
class NoInformation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Scenario {
  InputKind kind = InputKind::disentangled;
  int n = 1;
  double phi = 0.0;
  /// phi_1 for disentangled inputs, phi_2 for entangled ones.
  double phi_ref = 0.0;

  void validate() const;
};

/// Channel noise (mixture weight x_n) and computation noise (F, g, t_c).
/// For entangled inputs at most one of the two modes may be active.
struct NoiseSpec {
  double x_n = 1.0;
  double F = 1.0;
  double g = 0.0;
  double t_c = 0.0;

  double gt() const { return g * t_c; }
  bool channel_noise() const { return x_n != 1.0; }
  bool computation_noise() const { return F != 1.0 || gt() != 0.0; }
  void validate(InputKind kind) const;
};

/// p = 1/2 - (weight * visibility / 2) cos(multiplier * (phi - phi_ref)).
struct SignalModel {
  int multiplier = 1;
  double weight = 1.0;
  double visibility = 1.0;

  double contrast() const { return weight * visibility; }
};

SignalModel signal_model(const Scenario& scenario, const NoiseSpec& noise);

double p_success(const Scenario& scenario, const NoiseSpec& noise);
/// dp/dphi of p_success at scenario.phi.
double p_success_derivative(const Scenario& scenario, const NoiseSpec& noise);

/// sqrt(p(1-p)) / (|dp/dphi| sqrt(R)).
double precision(double p, double dp_dphi, double repetitions);

double r1_required(int n, double epsilon, double g, double t_c);
double r2_required(int n, double epsilon, double x_n, double F, double g, double t_c);
double r_required(InputKind kind, int n, double epsilon, const NoiseSpec& noise);

/// phi - phi_ref that puts the measured argument at pi/2.
double optimal_phase_offset(const Scenario& scenario);

/// r2_required / r1_required.
double repetition_ratio(int n, double epsilon, const NoiseSpec& noise);

}  // namespace qnet
