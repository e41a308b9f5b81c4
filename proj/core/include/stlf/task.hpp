#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "stlf/stl/formula.hpp"
#include "stlf/trace.hpp"

namespace stlf {

/// The eight manipulation tasks.
enum class TaskId { PR, CS, PH, BB, BC, BP, DO, CP };

inline constexpr std::array<TaskId, 8> kAllTasks = {TaskId::PR, TaskId::CS, TaskId::PH, TaskId::BB,
                                                   TaskId::BC, TaskId::BP, TaskId::DO, TaskId::CP};

std::string_view to_string(TaskId id) noexcept;
/// Case-sensitive two-letter id; nullopt when unknown.
std::optional<TaskId> parse_task_id(std::string_view text) noexcept;
/// "PR, CS, ..." for diagnostics.
std::string task_id_list();

/// Identity of a falsification task.
///
/// Bridged environments may omit the formulas; every native task carries both.
struct TaskSpec {
  std::string name;
  std::optional<TaskId> id;
  Box input_box;
  SignalSchema signal_schema;
  std::size_t episode_steps = 300;
  std::size_t stl_stride = 10;
  std::optional<stl::Formula> success_spec;
  std::optional<stl::Formula> danger_spec;

  /// Samples in a decimated episode trace.
  std::size_t stl_length() const noexcept { return episode_steps / stl_stride + 1; }

  /// Throws ArgumentError / SchemaError when the formulas reference unknown
  /// signals, are ill-typed, or need more STL steps than an episode provides.
  void validate() const;

  /// Throws SchemaError on a wrong length or naming the first signal whose
  /// presence or dimension disagrees with the schema.
  void check_trace(const Trace& trace) const;
};

}  // namespace stlf
