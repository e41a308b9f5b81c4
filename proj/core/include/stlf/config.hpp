#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stlf/envs/builtin_specs.hpp"
#include "stlf/envs/environment.hpp"
#include "stlf/envs/params.hpp"
#include "stlf/optim/optimizer.hpp"
#include "stlf/stl/formula.hpp"
#include "stlf/task.hpp"

namespace stlf {

/// Resolved engine configuration.
///
/// The file format is a flat TOML table (or a JSON object with the same keys):
///
///   task / tasks            "PR" or ["PR", "CS"]
///   spec                    "success" | "danger"
///   spec_file               STL file used instead of the built-in formula
///   optimizer / optimizers  "random" | "nelder-mead" | "dual-annealing"
///   trials, budget          campaign trials per cell, simulations per trial
///   eval_trials             inputs per evaluate run
///   seed                    master seed
///   stl_stride              override of the task's stride
///   jobs                    campaign threads, 0 = hardware concurrency
///   k_pos, k_vel, v_max, grasp_distance, balance_omega
///                           controller overrides (task defaults otherwise)
///   defect                  "none" | "default" | "dead_zone" | "gain_flip" | "delayed_grasp"
///   defect_fraction         region volume fraction
///   defect_seed             region placement seed
///   noise_variance          action noise; absent = no noise
///   eval_noise_variance     noise of the paired evaluate run
///   anneal_initial_temp, anneal_visit, anneal_accept, anneal_restart_ratio,
///   anneal_max_iterations, anneal_local_search
///   output, csv_output      report paths
///   endpoint                bridge endpoint, `stdio:CMD ARGS...` or `tcp:HOST:PORT`
struct EngineConfig {
  std::vector<TaskId> tasks{TaskId::PR};
  envs::SpecKind spec = envs::SpecKind::Success;
  std::optional<std::string> spec_file;
  std::vector<optim::OptimizerSpec> optimizers{optim::OptimizerSpec{}};
  optim::AnnealParams anneal;
  std::size_t trials = 30;
  std::size_t budget = 300;
  std::size_t eval_trials = 100;
  std::uint64_t seed = 0;
  std::optional<std::size_t> stl_stride;
  std::size_t jobs = 0;

  std::optional<double> k_pos, k_vel, v_max, grasp_distance, balance_omega;

  /// nullopt: no defect. A mode applies to every selected task.
  std::optional<envs::DefectMode> defect;
  bool defect_task_default = false;  // "default": each task's own mode
  double defect_fraction = 0.02;
  std::uint64_t defect_seed = 0;

  std::optional<double> noise_variance;
  double eval_noise_variance = 0.25;

  std::string output = "stlf_result.json";
  std::optional<std::string> csv_output;
  std::optional<std::string> endpoint;

  /// Throws ConfigError listing every out-of-range value.
  void validate() const;

  /// Flat JSON object with every key, suitable for load_config.
  std::string to_json() const;
};

/// Parses TOML text. Throws ConfigError listing every unknown key, wrong type
/// and invalid name found, not just the first.
EngineConfig parse_config_toml(std::string_view text);

/// Parses a JSON object with the same keys. A report that embeds its
/// configuration under "config" is accepted as well.
EngineConfig parse_config_json(std::string_view text);

/// Loads a `.json` file with parse_config_json and anything else as TOML.
EngineConfig load_config(const std::string& path);

/// Task defaults with the configured overrides applied.
envs::ControllerParams controller_for(const EngineConfig& cfg, TaskId id);

/// Defect region for a task, placed with derive_seed(defect_seed, hash_label(task)).
std::optional<envs::DefectSpec> defect_for(const EngineConfig& cfg, TaskId id);

/// Surrogate environment for a task with the configured controller, defect,
/// noise and stride.
envs::EnvironmentHandle build_env(const EngineConfig& cfg, TaskId id);

/// spec_file when set, otherwise the built-in formula of the configured kind.
stl::Formula spec_for(const EngineConfig& cfg, TaskId id);

}  // namespace stlf
