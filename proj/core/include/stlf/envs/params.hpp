#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "stlf/task.hpp"
#include "stlf/trace.hpp"

namespace stlf::envs {

/// Scripted task-space controller.
///
/// Ranges (inclusive) are enforced by validate():
///   k_pos           [0.5, 50]   1/s     position-to-velocity gain
///   k_vel           [1, 100]    1/s     velocity-to-acceleration gain
///   v_max           [0.05, 3]   m/s     approach speed limit
///   grasp_distance  [0.001, 0.1] m      closing trigger
///   balance_omega   [1, 20]     rad/s   tray balance bandwidth (BB)
struct ControllerParams {
  double k_pos = 6.0;
  double k_vel = 25.0;
  double v_max = 0.8;
  double grasp_distance = 0.02;
  double balance_omega = 6.0;

  void validate() const;
  bool operator==(const ControllerParams&) const = default;
};

/// Defaults for one task.
ControllerParams default_controller(TaskId id);

enum class DefectMode { DeadZone, GainFlip, DelayedGrasp };

std::string_view to_string(DefectMode m) noexcept;
std::optional<DefectMode> parse_defect_mode(std::string_view text) noexcept;

/// Mode whose failure mechanism is guaranteed on each task.
DefectMode default_defect_mode(TaskId id) noexcept;

/// Controller corruption over a sub-box of the input box.
///
///   dead_zone      every controller action is zeroed
///   gain_flip      the proportional term is negated
///   delayed_grasp  grasping is suppressed for the first half of the episode
struct DefectSpec {
  Box region;
  DefectMode mode = DefectMode::DeadZone;
  double volume_fraction = 0.0;

  /// Region inside `box`, fraction in (0, 1] and equal (1e-9 relative) to the
  /// actual volume ratio. Throws ArgumentError.
  void validate(const Box& box) const;
  bool operator==(const DefectSpec&) const = default;
};

/// Axis-aligned region of the given volume fraction, placed uniformly at
/// random inside `box` by `construction_seed`. Each side is scaled by
/// fraction^(1/dim).
DefectSpec make_defect(const Box& box, DefectMode mode, double volume_fraction, std::uint64_t construction_seed);

/// White Gaussian noise added to each normalized action component.
struct NoiseSpec {
  double variance = 0.25;

  void validate() const;
  bool operator==(const NoiseSpec&) const = default;
};

}  // namespace stlf::envs
