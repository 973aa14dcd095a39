#include "qnet/purification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qnet {

namespace {

constexpr double kScheme1Factor = 2.0 / 3.0;
constexpr int kMaxSteps = 1 << 20;

void check_steps(int steps) {
  if (steps < 0) throw std::invalid_argument("purification steps must be >= 0");
}

}  // namespace

void SchemeParams::validate() const {
  if (scheme_id != 1 && scheme_id != 2) {
    throw std::invalid_argument("scheme must be 1 or 2");
  }
  if (!(F0 > 0.5 && F0 <= 1.0)) throw std::invalid_argument("F0 must lie in (0.5, 1]");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("a must lie in (0, 1)");
  if (!(U >= 0.0)) throw std::invalid_argument("U must be >= 0");
  if (!(b >= 0.0)) throw std::invalid_argument("b must be >= 0");
}

double scheme1_fidelity(double F0, int steps) {
  check_steps(steps);
  return 1.0 - std::pow(kScheme1Factor, steps) * (1.0 - F0);
}

double scheme1_cost(int steps, double U) {
  if (steps < 1) throw std::invalid_argument("scheme 1 cost needs at least one step");
  return std::ldexp(U, steps - 1);
}

double scheme2_fidelity(double F0, double a, int steps) {
  check_steps(steps);
  return 1.0 - std::pow(a, steps) * (1.0 - F0);
}

double scheme2_cost(int steps, double b) {
  check_steps(steps);
  return b * steps;
}

double scheme_fidelity(const SchemeParams& params, int steps) {
  return params.scheme_id == 1 ? scheme1_fidelity(params.F0, steps)
                               : scheme2_fidelity(params.F0, params.a, steps);
}

double pair_cost(const SchemeParams& params, int steps) {
  return params.scheme_id == 1 ? scheme1_cost(steps, params.U) : scheme2_cost(steps, params.b);
}

int steps_for_target(const SchemeParams& params, double target) {
  if (target <= params.F0) return 0;
  if (target >= 1.0) {
    throw std::domain_error("target fidelity >= 1 is unreachable in finitely many steps");
  }
  const double factor = params.scheme_id == 1 ? kScheme1Factor : params.a;
  // Closed-form estimate, then walk to the exact smallest s.
  const double estimate = std::log((1.0 - target) / (1.0 - params.F0)) / std::log(factor);
  int s = std::max(0, static_cast<int>(std::ceil(estimate)) - 1);
  while (s > 0 && scheme_fidelity(params, s - 1) >= target) --s;
  while (scheme_fidelity(params, s) < target) {
    if (++s > kMaxSteps) throw std::domain_error("target fidelity not reached");
  }
  return s;
}

double compose_fidelity(double pair_fidelity, int n) {
  if (n < 2) throw std::invalid_argument("composition needs n >= 2");
  return std::pow(pair_fidelity, n - 1);
}

}  // namespace qnet
