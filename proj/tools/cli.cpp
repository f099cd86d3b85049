// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "leosim/experiments.hpp"
#include "leosim/scenario.hpp"

namespace leosim {

namespace {

struct RunArgs {
  std::string experiment;
  std::string config;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  std::optional<double> duration;
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--config", a.config, "JSON configuration file")->required();
  cmd->add_option("--out", a.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", a.seed, "override experiment.seed");
  cmd->add_option("--step", a.step, "override experiment.step_s");
  cmd->add_option("--duration", a.duration, "override experiment.duration_s");
  cmd->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
}

int execute(const RunArgs& a, std::ostream& out) {
  Config cfg = load_config(a.config);
  if (a.seed) cfg.experiment.seed = *a.seed;
  if (a.step) cfg.experiment.step_s = *a.step;
  if (a.duration) cfg.experiment.duration_s = *a.duration;
  if (a.threads) cfg.experiment.threads = *a.threads;
  cfg.experiment.validate();
  for (const auto& p : run_and_write(a.experiment, cfg, a.out)) out << p.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"LEO Walker-star constellation link simulator", "leosim"};
  app.require_subcommand(1);

  RunArgs run_args, pass_args, topo_args;
  std::string names;
  for (const auto& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;

  auto* run = app.add_subcommand("run", "run a named experiment");
  run->add_option("experiment", run_args.experiment, "one of " + names + " (or fig3..fig7)")
      ->required();
  add_common(run, run_args);

  auto* passes = app.add_subcommand("passes", "pass summary for the configured betas");
  add_common(passes, pass_args);
  pass_args.experiment = "passes";

  auto* topology = app.add_subcommand("topology", "dump ISL matchings and contact times");
  add_common(topology, topo_args);
  topo_args.experiment = "topology_dump";

  auto* version = app.add_subcommand("version", "print the build version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    if (version->parsed()) {
      out << "leosim " << build_version() << '\n';
      return kExitOk;
    }
    if (run->parsed()) {
      canonical_experiment_name(run_args.experiment);
      return execute(run_args, out);
    }
    if (passes->parsed()) return execute(pass_args, out);
    if (topology->parsed()) return execute(topo_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    // Raised before any work starts for bad names or arguments.
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << app.help();
  return kExitConfig;
}

}  // namespace leosim
