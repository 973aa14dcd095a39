// purification.hpp
// Closed-form fidelity and cost envelopes for two pair-purification schemes.
//
// Scheme 1 (recurrence-style, discards pairs):  F_s = 1 - (2/3)^s (1 - F0),
//   cost per delivered pair 2^(s-1) U (the lower bound, used as the model).
// Scheme 2 (finite-yield):                     F_s = 1 - a^s (1 - F0),
//   cost per delivered pair b s.

#pragma once

namespace qnet {

struct SchemeParams {
  int scheme_id = 2;
  double F0 = 0.95;
  double a = 0.5;
  double U = 0.0;
  double b = 0.0;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

double scheme1_fidelity(double F0, int steps);
double scheme1_cost(int steps, double U);
double scheme2_fidelity(double F0, double a, int steps);
double scheme2_cost(int steps, double b);

/// Fidelity of one delivered pair after `steps` rounds of the configured scheme.
double scheme_fidelity(const SchemeParams& params, int steps);
/// Cost of one delivered pair after `steps` rounds of the configured scheme.
double pair_cost(const SchemeParams& params, int steps);

/// Smallest s with scheme_fidelity(params, s) >= target. Returns 0 when
/// target <= F0; throws std::domain_error when target >= 1.
int steps_for_target(const SchemeParams& params, double target);

/// F_s^(n-1): mixture weight of an n-node GHZ state built from n-1 pairs.
double compose_fidelity(double pair_fidelity, int n);

}  // namespace qnet
