// cli.hpp
// `key = value` run configuration and the scan / simulate / validate
// commands. Commands write CSV to `out` and diagnostics to `err`, and
// return the process exit code.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qnet/cost_model.hpp"
#include "qnet/estimation.hpp"
#include "qnet/purification.hpp"
#include "qnet/quantum_core.hpp"

namespace qnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  /// 1-based line of the offending entry, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  int line_;
};

enum class ValidateSelection { both, disentangled, entangled };

struct RunConfig {
  CostParams costs;
  std::optional<SchemeParams> scheme;
  std::optional<int> steps;
  std::optional<double> target_fidelity;
  NoiseSpec noise;
  int n_from = 2;
  int n_to = 2;
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  std::string output_path;

  /// simulate: Werner pair fidelity; unset means ideal pairs.
  std::optional<double> pair_fidelity;

  /// validate
  ValidateSelection scenarios = ValidateSelection::both;
  double phi = 0.0;
  std::optional<int> repetitions;
  int replications = 200;

  Limits limits;
};

/// Parses and validates a configuration. Throws ConfigError.
RunConfig parse_config(std::string_view text);

/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

/// `# window: n_min=<v> n_max=<v|open|none>`
std::string window_footer(const Window& window);

ScanConfig make_scan_config(const RunConfig& config);

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches by subcommand name ("scan", "simulate", "validate").
int run_command(std::string_view name, const RunConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace qnet
