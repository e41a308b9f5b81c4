#pragma once

#include <optional>

#include "stlf/envs/environment.hpp"
#include "stlf/envs/params.hpp"

namespace stlf::envs {

/// Control period of every surrogate, seconds.
inline constexpr double kControlPeriod = 1.0 / 60.0;
inline constexpr std::size_t kEpisodeSteps = 300;
inline constexpr std::size_t kStlStride = 10;

/// Built-in TaskSpec: input box, schema, episode length, and both formulas.
const TaskSpec& task_spec(TaskId id);

/// Native surrogate environment for a task.
///
/// Throws ArgumentError on out-of-range controller or noise parameters and
/// when the defect region is not inside the task's input box.
EnvironmentHandle make_env(TaskId id, const ControllerParams& controller, const std::optional<DefectSpec>& defect = {},
                           const std::optional<NoiseSpec>& noise = {});

/// make_env with the task's default controller.
EnvironmentHandle make_env(TaskId id);

}  // namespace stlf::envs
