#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace stlf::cli {

// Exit codes shared by the subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;      // UNSAT / not falsified
inline constexpr int kExitInconclusive = 2;  // monitor only
inline constexpr int kExitFailure = 2;       // falsify, campaign, evaluate, bridge
inline constexpr int kExitMonitorError = 3;

struct MonitorArgs {
  std::string spec;
  std::string trace;
  std::size_t t0 = 0;
  bool truncate = false;
};

// Flags that override the configuration file.
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> task;
  std::optional<std::string> optimizer;
  std::optional<std::size_t> budget;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::string> output;
  std::optional<std::string> csv_output;
  std::optional<std::string> endpoint;
  std::optional<std::string> spec_file;
  std::optional<std::size_t> stl_stride;
};

int cmd_monitor(const MonitorArgs& args);
int cmd_falsify(const Overrides& o);
int cmd_campaign(const Overrides& o);
int cmd_evaluate(const Overrides& o);
int cmd_bridge(const Overrides& o);

}  // namespace stlf::cli
