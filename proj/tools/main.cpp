#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

// STLF_LOG selects the stderr log level: trace, debug, info, warn (default),
// error, critical or off.
void setup_logging() {
  auto logger = spdlog::stderr_color_mt("stlf");
  logger->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("STLF_LOG")) {
    const auto parsed = spdlog::level::from_str(level);
    // from_str maps unknown names to off; only honour it when asked for.
    if (parsed != spdlog::level::off || std::string_view(level) == "off") spdlog::set_level(parsed);
  }
}

void add_config_flags(CLI::App* cmd, stlf::cli::Overrides& o) {
  cmd->add_option("--config", o.config, "TOML configuration file, or a JSON report to replay")
      ->check(CLI::ExistingFile);
  cmd->add_option("--output", o.output, "Report path");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  using namespace stlf::cli;

  CLI::App app{"Falsification of controllers against signal temporal logic specifications"};
  app.require_subcommand(1);

  MonitorArgs margs;
  auto* monitor = app.add_subcommand("monitor", "Robustness of one trace against one formula");
  monitor->add_option("--spec", margs.spec, "STL specification file")->required();
  monitor->add_option("--trace", margs.trace, "Trace CSV file")->required();
  monitor->add_option("--t0", margs.t0, "Evaluation time step");
  monitor->add_flag("--truncate", margs.truncate, "Clamp windows to the end of the trace");

  Overrides fo;
  auto* falsify = app.add_subcommand("falsify", "Run one falsification trial");
  add_config_flags(falsify, fo);
  falsify->add_option("--task", fo.task, "Task id (PR, CS, PH, BB, BC, BP, DO, CP)");
  falsify->add_option("--optimizer", fo.optimizer, "random, nelder-mead or dual-annealing");
  falsify->add_option("--budget", fo.budget, "Simulation budget");
  falsify->add_option("--seed", fo.seed, "Trial seed");
  falsify->add_option("--spec-file", fo.spec_file, "STL file instead of the built-in formula");
  falsify->add_option("--endpoint", fo.endpoint, "Falsify an external environment through a bridge");

  Overrides co;
  auto* campaign = app.add_subcommand("campaign", "Run trials x optimizers x tasks and write reports");
  add_config_flags(campaign, co);
  campaign->add_option("--jobs", co.jobs, "Worker threads (default: hardware threads)");
  campaign->add_option("--trials", co.trials, "Trials per cell");
  campaign->add_option("--budget", co.budget, "Simulation budget per trial");
  campaign->add_option("--seed", co.seed, "Master seed");
  campaign->add_option("--csv", co.csv_output, "Summary CSV path (default: report path with .csv)");

  Overrides eo;
  auto* evaluate = app.add_subcommand("evaluate", "SR, DBR and TCT without and with action noise");
  add_config_flags(evaluate, eo);
  evaluate->add_option("--task", eo.task, "Task id");
  evaluate->add_option("--seed", eo.seed, "Evaluation seed");

  Overrides bo;
  auto* bridge = app.add_subcommand("bridge", "Attach an external environment; falsify it when --spec-file is given");
  add_config_flags(bridge, bo);
  bridge->add_option("--endpoint", bo.endpoint, "stdio:CMD ARGS... or tcp:HOST:PORT")->required();
  bridge->add_option("--spec-file", bo.spec_file, "STL file to falsify against");
  bridge->add_option("--stride", bo.stl_stride, "STL stride of the bridged traces");
  bridge->add_option("--optimizer", bo.optimizer, "random, nelder-mead or dual-annealing");
  bridge->add_option("--budget", bo.budget, "Simulation budget");
  bridge->add_option("--seed", bo.seed, "Trial seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    return monitor->parsed() ? kExitMonitorError : kExitFailure;
  }

  if (monitor->parsed()) return cmd_monitor(margs);
  if (falsify->parsed()) return cmd_falsify(fo);
  if (campaign->parsed()) return cmd_campaign(co);
  if (evaluate->parsed()) return cmd_evaluate(eo);
  return cmd_bridge(bo);
}
