// cost_model.hpp
// Total cost of a distributed phase-estimation run, C = R (P + nZ + (n-1)Y),
// for disentangled (P = 0) and GHZ inputs, and the scan over network size
// that locates the window where the GHZ strategy is strictly cheaper.

#pragma once

#include <optional>
#include <vector>

#include "qnet/estimation.hpp"
#include "qnet/purification.hpp"

namespace qnet {

/// Classical bits each outer node reports per repetition.
inline constexpr int kReportBits = 1;

struct CostParams {
  double X = 100.0;  // send one qubit from the central node
  double Y = 10.0;   // send one classical bit to the central node
  double Z = 1.0;    // run one node's processor once
  double U = 0.0;    // scheme 1 cost per consumed pair
  double b = 0.0;    // scheme 2 cost per purification step

  void validate() const;
};

struct ScanRow {
  int n = 0;
  double R1 = 0.0;
  double R2 = 0.0;
  double P2 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double ratio = 0.0;
};

struct Window {
  std::optional<int> n_min;
  std::optional<int> n_max;
  /// ratio < 1 still holds at the last scanned n; n_max is then unset.
  bool open_at_bound = false;

  bool empty() const { return !n_min.has_value(); }
};

double cost_disentangled(int n, double R1, const CostParams& params);
double cost_entangled(int n, double R2, double P2, const CostParams& params);

/// GHZ/independent cost ratio with ideal channels and computation.
double ratio_ideal(int n, const CostParams& params);
/// (2Y + X + Z) / (Y + Z), the large-threshold estimate of n_min.
double n_min_approx(const CostParams& params);
/// Cost ratio with pairs purified for `steps` rounds and x_n = F_s^(n-1).
double ratio_noisy(int n, const CostParams& params, const SchemeParams& scheme, int steps);
/// Ideal ratio times the dephasing penalty exp(2 g t_c (n-1)).
double ratio_dephased(int n, const CostParams& params, double g, double t_c);

struct ScanConfig {
  double epsilon = 0.01;
  double g = 0.0;
  double t_c = 0.0;
  /// When set, pairs are purified; cannot be combined with g t_c > 0.
  std::optional<SchemeParams> scheme;
  /// Fixed number of purification steps; otherwise chosen from target_fidelity.
  std::optional<int> steps;
  std::optional<double> target_fidelity;
  int n_from = 2;
  int n_to = 200;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  Window window;
  /// Purification steps used (purified scans only).
  std::optional<int> steps;
  bool steps_auto = false;
};

/// Resolves the purification step count of a purified scan.
int resolve_steps(const ScanConfig& config);

ScanRow scan_row(int n, const CostParams& params, const ScanConfig& config, int steps);

/// Evaluates every n in [n_from, n_to] and reports the first and last n
/// with ratio strictly below 1.
ScanResult scan_window(const CostParams& params, const ScanConfig& config);

/// Window of an arbitrary, n-ordered list of rows ending at `n_to`.
Window detect_window(const std::vector<ScanRow>& rows, int n_to);

}  // namespace qnet
