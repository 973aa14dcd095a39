#include "qnet/estimation.hpp"

#include <cmath>
#include <numbers>

namespace qnet {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
}

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

}  // namespace

const char* to_string(InputKind kind) {
  return kind == InputKind::disentangled ? "disentangled" : "entangled";
}

void Scenario::validate() const {
  check_n(n);
}

void NoiseSpec::validate(InputKind kind) const {
  if (!(x_n >= 0.0 && x_n <= 1.0)) throw std::invalid_argument("x_n must lie in [0, 1]");
  if (!(F >= 0.0 && F <= 1.0)) throw std::invalid_argument("F must lie in [0, 1]");
  if (!(g >= 0.0) || !(t_c >= 0.0)) throw std::invalid_argument("g and t_c must be >= 0");
  if (kind == InputKind::entangled && channel_noise() && computation_noise()) {
    throw std::invalid_argument(
        "channel noise (x_n) and computation noise (F, g, t_c) cannot be combined");
  }
}

SignalModel signal_model(const Scenario& scenario, const NoiseSpec& noise) {
  scenario.validate();
  noise.validate(scenario.kind);
  SignalModel model;
  if (scenario.kind == InputKind::disentangled) {
    model.visibility = std::exp(-noise.gt());
    return model;
  }
  model.multiplier = scenario.n;
  model.weight = noise.x_n * noise.F;
  model.visibility = std::exp(-scenario.n * noise.gt());
  return model;
}

double p_success(const Scenario& scenario, const NoiseSpec& noise) {
  const SignalModel m = signal_model(scenario, noise);
  const double arg = m.multiplier * (scenario.phi - scenario.phi_ref);
  return 0.5 * (1.0 - m.contrast() * std::cos(arg));
}

double p_success_derivative(const Scenario& scenario, const NoiseSpec& noise) {
  const SignalModel m = signal_model(scenario, noise);
  const double arg = m.multiplier * (scenario.phi - scenario.phi_ref);
  return 0.5 * m.contrast() * m.multiplier * std::sin(arg);
}

double precision(double p, double dp_dphi, double repetitions) {
  if (!(p > 0.0 && p < 1.0) || dp_dphi == 0.0) {
    throw NoInformation("precision undefined for p in {0, 1} or zero slope");
  }
  if (!(repetitions >= 1.0)) throw std::invalid_argument("repetitions must be >= 1");
  return std::sqrt(p * (1.0 - p)) / (std::abs(dp_dphi) * std::sqrt(repetitions));
}

double r1_required(int n, double epsilon, double g, double t_c) {
  check_n(n);
  check_epsilon(epsilon);
  if (!(g * t_c >= 0.0)) throw std::invalid_argument("g t_c must be >= 0");
  return std::exp(2.0 * g * t_c) / (n * epsilon * epsilon);
}

double r2_required(int n, double epsilon, double x_n, double F, double g, double t_c) {
  check_n(n);
  check_epsilon(epsilon);
  NoiseSpec{x_n, F, g, t_c}.validate(InputKind::entangled);
  if (x_n == 0.0 || F == 0.0) {
    throw NoInformation("zero mixture weight: outcomes carry no phase information");
  }
  const double nd = n;
  const double w = x_n * F;
  return std::exp(2.0 * nd * g * t_c) / (nd * nd * epsilon * epsilon * w * w);
}

double r_required(InputKind kind, int n, double epsilon, const NoiseSpec& noise) {
  if (kind == InputKind::disentangled) return r1_required(n, epsilon, noise.g, noise.t_c);
  return r2_required(n, epsilon, noise.x_n, noise.F, noise.g, noise.t_c);
}

double optimal_phase_offset(const Scenario& scenario) {
  scenario.validate();
  if (scenario.kind == InputKind::disentangled) return std::numbers::pi / 2.0;
  return std::numbers::pi / (2.0 * scenario.n);
}

double repetition_ratio(int n, double epsilon, const NoiseSpec& noise) {
  return r_required(InputKind::entangled, n, epsilon, noise) /
         r_required(InputKind::disentangled, n, epsilon, noise);
}

}  // namespace qnet
