#include "qnet/cost_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qnet {

namespace {

constexpr int kMaxScanN = 1'000'000;

double run_cost(int n, const CostParams& p) {
  return n * p.Z + (n - 1) * kReportBits * p.Y;
}

}  // namespace

void CostParams::validate() const {
  if (!(X >= 0.0 && Y >= 0.0 && Z >= 0.0 && U >= 0.0 && b >= 0.0)) {
    throw std::invalid_argument("costs must be non-negative");
  }
  if (!(Y + Z > 0.0)) throw std::invalid_argument("Y + Z must be positive");
}

double cost_disentangled(int n, double R1, const CostParams& params) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return R1 * run_cost(n, params);
}

double cost_entangled(int n, double R2, double P2, const CostParams& params) {
  if (n < 2) throw std::invalid_argument("entangled inputs need n >= 2");
  return R2 * (P2 + run_cost(n, params));
}

double ratio_ideal(int n, const CostParams& p) {
  if (n < 2) throw std::invalid_argument("ratio needs n >= 2");
  p.validate();
  const double num = (2.0 * n - 3.0) * p.Y + (n - 1.0) * p.X + n * p.Z;
  const double den = (n - 1.0) * p.Y + n * p.Z;
  return num / (n * den);
}

double n_min_approx(const CostParams& p) {
  p.validate();
  return (2.0 * p.Y + p.X + p.Z) / (p.Y + p.Z);
}

double ratio_noisy(int n, const CostParams& p, const SchemeParams& scheme, int steps) {
  if (n < 2) throw std::invalid_argument("ratio needs n >= 2");
  p.validate();
  scheme.validate();
  const double x = compose_fidelity(scheme_fidelity(scheme, steps), n);
  const double num = (n - 1.0) * pair_cost(scheme, steps) + (2.0 * n - 3.0) * p.Y + n * p.Z;
  const double den = (n - 1.0) * p.Y + n * p.Z;
  return num / (n * x * x * den);
}

double ratio_dephased(int n, const CostParams& params, double g, double t_c) {
  if (!(g * t_c >= 0.0)) throw std::invalid_argument("g t_c must be >= 0");
  return std::exp(2.0 * g * t_c * (n - 1)) * ratio_ideal(n, params);
}

int resolve_steps(const ScanConfig& config) {
  if (!config.scheme) throw std::invalid_argument("scan has no purification scheme");
  if (config.steps) {
    if (*config.steps < 0) throw std::invalid_argument("steps must be >= 0");
    return *config.steps;
  }
  if (!config.target_fidelity) {
    throw std::invalid_argument("purified scan needs either steps or target_fidelity");
  }
  return steps_for_target(*config.scheme, *config.target_fidelity);
}

ScanRow scan_row(int n, const CostParams& params, const ScanConfig& config, int steps) {
  ScanRow row;
  row.n = n;
  double pair_unit = params.X;
  double x_n = 1.0;
  if (config.scheme) {
    pair_unit = pair_cost(*config.scheme, steps);
    x_n = compose_fidelity(scheme_fidelity(*config.scheme, steps), n);
  }
  row.R1 = r1_required(n, config.epsilon, config.g, config.t_c);
  row.R2 = r2_required(n, config.epsilon, x_n, 1.0, config.g, config.t_c);
  row.P2 = (n - 1) * pair_unit + (n - 2) * params.Y;
  row.C1 = cost_disentangled(n, row.R1, params);
  row.C2 = cost_entangled(n, row.R2, row.P2, params);
  row.ratio = row.C2 / row.C1;
  return row;
}

Window detect_window(const std::vector<ScanRow>& rows, int n_to) {
  Window w;
  for (const ScanRow& row : rows) {
    if (!(row.ratio < 1.0)) continue;
    if (!w.n_min) w.n_min = row.n;
    w.n_max = row.n;
  }
  if (w.n_max && *w.n_max == n_to) {
    w.open_at_bound = true;
    w.n_max.reset();
  }
  return w;
}

ScanResult scan_window(const CostParams& params, const ScanConfig& config) {
  params.validate();
  if (config.n_from < 2 || config.n_to > kMaxScanN) {
    throw std::invalid_argument("scan range must lie within [2, " + std::to_string(kMaxScanN) + "]");
  }
  if (config.n_from > config.n_to) throw std::invalid_argument("empty scan range");
  if (!(config.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (config.scheme && config.g * config.t_c > 0.0) {
    throw std::invalid_argument("purified channels and dephasing cannot be combined in one scan");
  }

  ScanResult result;
  int steps = 0;
  if (config.scheme) {
    config.scheme->validate();
    steps = resolve_steps(config);
    result.steps = steps;
    result.steps_auto = !config.steps.has_value();
  }
  result.rows.reserve(static_cast<std::size_t>(config.n_to - config.n_from + 1));
  for (int n = config.n_from; n <= config.n_to; ++n) {
    result.rows.push_back(scan_row(n, params, config, steps));
  }
  result.window = detect_window(result.rows, config.n_to);
  return result;
}

}  // namespace qnet
