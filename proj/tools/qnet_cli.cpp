// qnetcost command-line entry point: scan, simulate, validate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qnet/cli.hpp"

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config_path, "key = value configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "override the configured seed");
  cmd->add_option("--out", opts.out_path, "write CSV here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost analysis and simulation of distributed phase estimation over a star network"};
  app.require_subcommand(1);

  Options opts;
  add_common(app.add_subcommand("scan", "cost ratio scan over network size"), opts);
  add_common(app.add_subcommand("simulate", "GHZ distribution fidelity from EPR/Werner pairs"), opts);
  add_common(app.add_subcommand("validate", "Monte Carlo check of the analytic precision"), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qnet::kExitOk : qnet::kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  qnet::RunConfig config;
  try {
    std::ifstream in(opts.config_path);
    std::stringstream text;
    text << in.rdbuf();
    config = qnet::parse_config(text.str());
  } catch (const qnet::ConfigError& e) {
    std::cerr << opts.config_path << ": " << e.what() << '\n';
    return qnet::kExitUsage;
  }
  if (opts.seed) config.seed = *opts.seed;
  if (!opts.out_path.empty()) config.output_path = opts.out_path;

  if (config.output_path.empty() || config.output_path == "-") {
    return qnet::run_command(command, config, std::cout, std::cerr);
  }
  std::ostringstream buffer;
  const int code = qnet::run_command(command, config, buffer, std::cerr);
  if (code == qnet::kExitOk) {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot write " << config.output_path << '\n';
      return qnet::kExitInternal;
    }
    file << buffer.str();
  }
  return code;
}
