#include "qnet/cli.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "qnet/ghz_protocol.hpp"
#include "qnet/montecarlo.hpp"

namespace qnet {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view v, int line, std::string_view key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(line, std::string(key) + ": expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view v, int line, std::string_view key) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(line, std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

void require(bool ok, int line, const std::string& message) {
  if (!ok) throw ConfigError(line, message);
}

using Setter = std::function<void(RunConfig&, std::string_view, int)>;

Setter cost_key(double CostParams::*field, const char* name) {
  return [field, name](RunConfig& c, std::string_view v, int line) {
    const double x = parse_double(v, line, name);
    require(x >= 0.0, line, std::string(name) + " must be >= 0");
    c.costs.*field = x;
  };
}

Setter unit_key(double NoiseSpec::*field, const char* name) {
  return [field, name](RunConfig& c, std::string_view v, int line) {
    const double x = parse_double(v, line, name);
    require(x >= 0.0 && x <= 1.0, line, std::string(name) + " must lie in [0, 1]");
    c.noise.*field = x;
  };
}

Setter nonneg_key(double NoiseSpec::*field, const char* name) {
  return [field, name](RunConfig& c, std::string_view v, int line) {
    const double x = parse_double(v, line, name);
    require(x >= 0.0, line, std::string(name) + " must be >= 0");
    c.noise.*field = x;
  };
}

SchemeParams& scheme_slot(RunConfig& c) {
  if (!c.scheme) c.scheme = SchemeParams{};
  return *c.scheme;
}

// Scheme fields are collected here and only kept when `scheme` selects one.
struct PendingScheme {
  std::optional<int> id;
  double F0 = 0.95;
  double a = 0.5;
};

std::map<std::string, Setter, std::less<>> make_setters(PendingScheme& pending) {
  std::map<std::string, Setter, std::less<>> table;

  table["X"] = cost_key(&CostParams::X, "X");
  table["Y"] = cost_key(&CostParams::Y, "Y");
  table["Z"] = cost_key(&CostParams::Z, "Z");
  table["U"] = cost_key(&CostParams::U, "U");
  table["b"] = cost_key(&CostParams::b, "b");
  table["x_n"] = unit_key(&NoiseSpec::x_n, "x_n");
  table["F"] = unit_key(&NoiseSpec::F, "F");
  table["g"] = nonneg_key(&NoiseSpec::g, "g");
  table["t_c"] = nonneg_key(&NoiseSpec::t_c, "t_c");
  table["scheme"] = [&pending](RunConfig&, std::string_view v, int line) {
    if (v == "none") {
      pending.id.reset();
      return;
    }
    const int id = parse_int<int>(v, line, "scheme");
    require(id == 1 || id == 2, line, "scheme must be 1, 2 or none");
    pending.id = id;
  };
  table["F0"] = [&pending](RunConfig&, std::string_view v, int line) {
    const double x = parse_double(v, line, "F0");
    require(x > 0.5 && x <= 1.0, line, "F0 must lie in (0.5, 1]");
    pending.F0 = x;
  };
  table["a"] = [&pending](RunConfig&, std::string_view v, int line) {
    const double x = parse_double(v, line, "a");
    require(x > 0.0 && x < 1.0, line, "a must lie in (0, 1)");
    pending.a = x;
  };
  table["steps"] = [](RunConfig& c, std::string_view v, int line) {
    const int s = parse_int<int>(v, line, "steps");
    require(s >= 0, line, "steps must be >= 0");
    c.steps = s;
  };
  table["target_fidelity"] = [](RunConfig& c, std::string_view v, int line) {
    const double x = parse_double(v, line, "target_fidelity");
    require(x > 0.0 && x < 1.0, line, "target_fidelity must lie in (0, 1)");
    c.target_fidelity = x;
  };
  table["n_from"] = [](RunConfig& c, std::string_view v, int line) {
    c.n_from = parse_int<int>(v, line, "n_from");
    require(c.n_from >= 2, line, "n_from must be >= 2");
  };
  table["n_to"] = [](RunConfig& c, std::string_view v, int line) {
    c.n_to = parse_int<int>(v, line, "n_to");
    require(c.n_to >= 2, line, "n_to must be >= 2");
  };
  table["epsilon"] = [](RunConfig& c, std::string_view v, int line) {
    c.epsilon = parse_double(v, line, "epsilon");
    require(c.epsilon > 0.0, line, "epsilon must be > 0");
  };
  table["seed"] = [](RunConfig& c, std::string_view v, int line) {
    c.seed = parse_int<std::uint64_t>(v, line, "seed");
  };
  table["output"] = [](RunConfig& c, std::string_view v, int) { c.output_path = std::string(v); };
  table["pair_fidelity"] = [](RunConfig& c, std::string_view v, int line) {
    const double x = parse_double(v, line, "pair_fidelity");
    require(x >= 0.25 && x <= 1.0, line, "pair_fidelity must lie in [0.25, 1]");
    c.pair_fidelity = x;
  };
  table["scenario"] = [](RunConfig& c, std::string_view v, int line) {
    if (v == "both") {
      c.scenarios = ValidateSelection::both;
    } else if (v == "disentangled") {
      c.scenarios = ValidateSelection::disentangled;
    } else if (v == "entangled") {
      c.scenarios = ValidateSelection::entangled;
    } else {
      throw ConfigError(line, "scenario must be both, disentangled or entangled");
    }
  };
  table["phi"] = [](RunConfig& c, std::string_view v, int line) {
    c.phi = parse_double(v, line, "phi");
  };
  table["repetitions"] = [](RunConfig& c, std::string_view v, int line) {
    const int r = parse_int<int>(v, line, "repetitions");
    require(r >= 1, line, "repetitions must be >= 1");
    c.repetitions = r;
  };
  table["replications"] = [](RunConfig& c, std::string_view v, int line) {
    c.replications = parse_int<int>(v, line, "replications");
    require(c.replications >= 30, line, "replications must be >= 30");
  };
  table["vector_cap"] = [](RunConfig& c, std::string_view v, int line) {
    c.limits.max_vector_qubits = parse_int<int>(v, line, "vector_cap");
    require(c.limits.max_vector_qubits >= 1 && c.limits.max_vector_qubits <= 30, line,
            "vector_cap must lie in [1, 30]");
  };
  table["density_cap"] = [](RunConfig& c, std::string_view v, int line) {
    c.limits.max_density_qubits = parse_int<int>(v, line, "density_cap");
    require(c.limits.max_density_qubits >= 1 &&
                c.limits.max_density_qubits < kHardMaxDensityQubits,
            line, "density_cap must lie in [1, " + std::to_string(kHardMaxDensityQubits - 1) + "]");
  };
  return table;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  PendingScheme pending;
  const auto table = make_setters(pending);
  std::map<std::string, int, std::less<>> seen;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    require(eq != std::string_view::npos, line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    require(!key.empty(), line_no, "missing key");
    require(!value.empty(), line_no, std::string(key) + ": missing value");

    const auto it = table.find(key);
    require(it != table.end(), line_no, "unknown key '" + std::string(key) + "'");
    require(!seen.contains(key), line_no, "duplicate key '" + std::string(key) + "'");
    seen.emplace(std::string(key), line_no);
    it->second(config, value, line_no);
  }

  const auto line_of = [&](std::string_view key) {
    const auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };
  for (const char* key : {"X", "Y", "Z", "epsilon", "n_from", "n_to"}) {
    require(seen.contains(std::string_view(key)), 0, std::string("missing required key '") + key + "'");
  }
  require(config.costs.Y + config.costs.Z > 0.0, std::max(line_of("Y"), line_of("Z")),
          "Y + Z must be positive");
  require(config.n_from <= config.n_to, line_of("n_to"), "n_to must be >= n_from");

  // Pair costs default to one qubit transmission.
  if (!seen.contains(std::string_view("U"))) config.costs.U = config.costs.X;
  if (!seen.contains(std::string_view("b"))) config.costs.b = config.costs.X;

  if (pending.id) {
    SchemeParams& s = scheme_slot(config);
    s.scheme_id = *pending.id;
    s.F0 = pending.F0;
    s.a = pending.a;
    s.U = config.costs.U;
    s.b = config.costs.b;
    require(config.steps || config.target_fidelity, line_of("scheme"),
            "a purification scheme needs steps or target_fidelity");
    require(!(s.scheme_id == 1 && config.steps && *config.steps < 1), line_of("steps"),
            "scheme 1 needs steps >= 1");
  }
  if (config.noise.channel_noise() && config.noise.computation_noise()) {
    throw ConfigError(line_of("x_n"), "x_n cannot be combined with F, g or t_c");
  }
  if (config.scheme && config.noise.gt() > 0.0) {
    throw ConfigError(std::max(line_of("g"), line_of("t_c")),
                      "purification scheme cannot be combined with dephasing");
  }
  return config;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string window_footer(const Window& w) {
  std::string line = "# window: n_min=";
  line += w.n_min ? std::to_string(*w.n_min) : "none";
  line += " n_max=";
  if (w.open_at_bound) {
    line += "open";
  } else {
    line += w.n_max ? std::to_string(*w.n_max) : "none";
  }
  return line;
}

ScanConfig make_scan_config(const RunConfig& config) {
  ScanConfig scan;
  scan.epsilon = config.epsilon;
  scan.g = config.noise.g;
  scan.t_c = config.noise.t_c;
  scan.scheme = config.scheme;
  scan.steps = config.steps;
  scan.target_fidelity = config.target_fidelity;
  scan.n_from = config.n_from;
  scan.n_to = config.n_to;
  return scan;
}

namespace {

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (cap " << e.cap() << ")\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScanResult result = scan_window(config.costs, make_scan_config(config));
    if (result.steps) {
      err << "scan: scheme=" << config.scheme->scheme_id << " steps=" << *result.steps
          << (result.steps_auto ? " (auto, target_fidelity=" + format_number(*config.target_fidelity) + ")"
                                : std::string(" (fixed)"))
          << '\n';
    }
    std::ostringstream csv;
    csv << "n,R1,R2,P2,C1,C2,ratio\n";
    for (const ScanRow& r : result.rows) {
      csv << r.n << ',' << format_number(r.R1) << ',' << format_number(r.R2) << ','
          << format_number(r.P2) << ',' << format_number(r.C1) << ',' << format_number(r.C2)
          << ',' << format_number(r.ratio) << '\n';
    }
    csv << window_footer(result.window) << '\n';
    out << csv.str();
    return kExitOk;
  });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const bool noisy = config.pair_fidelity.has_value();
    if (noisy && config.n_to > config.limits.max_density_qubits) {
      throw CapExceeded("noisy simulation of n=" + std::to_string(config.n_to) +
                            " nodes exceeds the density-matrix cap of " +
                            std::to_string(config.limits.max_density_qubits) + " nodes",
                        config.limits.max_density_qubits);
    }
    const double f = config.pair_fidelity.value_or(1.0);
    std::ostringstream csv;
    csv << "n,pair_fidelity,ghz_fidelity,predicted_F_pow\n";
    for (int n = config.n_from; n <= config.n_to; ++n) {
      double ghz_fidelity;
      if (noisy) {
        ghz_fidelity = fidelity(distribute_werner(n, f, 0.0, config.limits),
                                prepare_ghz_ideal(n, 0.0, config.limits));
      } else {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(n)));
        ghz_fidelity =
            run_distribution(n, PairSource::ideal(), 0.0, rng, config.limits).fidelity_vs_ideal;
      }
      csv << n << ',' << format_number(f) << ',' << format_number(ghz_fidelity) << ','
          << format_number(compose_fidelity(f, n)) << '\n';
    }
    out << csv.str();
    return kExitOk;
  });
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<InputKind> kinds;
    if (config.scenarios != ValidateSelection::entangled) kinds.push_back(InputKind::disentangled);
    if (config.scenarios != ValidateSelection::disentangled) kinds.push_back(InputKind::entangled);

    std::ostringstream csv;
    csv << "scenario,n,R,analytic_epsilon,empirical_sigma,relative_gap\n";
    std::uint64_t case_index = 0;
    for (InputKind kind : kinds) {
      for (int n = config.n_from; n <= config.n_to; ++n, ++case_index) {
        const int reps =
            config.repetitions.value_or(static_cast<int>(
                std::ceil(r_required(kind, n, config.epsilon, config.noise) - 1e-9)));
        const Scenario scenario{kind, n, config.phi, 0.0};
        const PrecisionReport report = empirical_precision(
            scenario, config.noise, std::max(reps, 1), config.replications,
            derive_seed(config.seed, case_index));
        csv << to_string(kind) << ',' << n << ',' << reps << ','
            << format_number(report.analytic_epsilon) << ','
            << format_number(report.empirical_sigma) << ',' << format_number(report.relative_gap)
            << '\n';
      }
    }
    out << csv.str();
    return kExitOk;
  });
}

int run_command(std::string_view name, const RunConfig& config, std::ostream& out,
                std::ostream& err) {
  if (name == "scan") return cmd_scan(config, out, err);
  if (name == "simulate") return cmd_simulate(config, out, err);
  if (name == "validate") return cmd_validate(config, out, err);
  err << "unknown command '" << name << "'\n";
  return kExitUsage;
}

}  // namespace qnet
